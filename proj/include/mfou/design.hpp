// Input design and Fisher-information machinery: the optimal input pair
// (v = sqrt(psi), u through the inverse kernel), the mean path P, the
// fundamental matrix phi, the information decomposition I1 + I2, and the
// covariance operator of the normalized information process.
#ifndef MFOU_DESIGN_HPP
#define MFOU_DESIGN_HPP

#include <Eigen/Dense>
#include <vector>

#include "mfou/kernel.hpp"
#include "mfou/numerics.hpp"
#include "mfou/process.hpp"

namespace mfou {

// State-space coefficients as functions of psi(t,t).
inline Eigen::Matrix2d coeff_a(double psi) {
  Eigen::Matrix2d a;
  a << psi, 1.0, psi * psi, psi;
  return a;
}
inline Eigen::Vector2d coeff_b(double psi) { return {1.0, psi}; }
inline Eigen::Vector2d coeff_l(double psi) { return {psi, 1.0}; }
inline Eigen::Matrix2d coeff_r(double psi) {
  const Eigen::Vector2d l = coeff_l(psi);
  return 0.25 * (l * l.transpose());
}

// v_opt(t) = sqrt(psi(t,t)); the returned signal also carries the matching
// u obtained from optimal_u, so it is simulation-ready.
InputSignal optimal_v(const KernelBundle& kernel);

// u(t) = d/dt int_0^t ghat(s,t) v(s) dm(s), outer derivative by centered
// differences.
std::vector<double> optimal_u(const KernelBundle& kernel,
                              const std::vector<double>& v);

// Mean path: dP/dm = -(theta/2) A(t) P + b(t) v(t), P(0) = 0.
OdeTrajectory<Eigen::Vector2d> solve_p(const std::vector<double>& v,
                                       double theta,
                                       const KernelBundle& kernel);

// One RK4 step of the homogeneous state flow dY/dm = -(theta/2) A(psi(t)) Y
// across grid cell i (from node i to node i+1); Y is a 2-vector or a 2x2
// matrix. Folding and midpoint handling match ode_step_linear. Chaining these
// steps yields the transition matrix Phi(t, s) applied to the start state
// without ever forming phi^{-1}, whose entries grow like e^{theta s} and
// poison products past theta*s ~ 36 even though phi itself stays O(1).
template <typename State>
State flow_cell_step(const State& y, double theta, const KernelBundle& kernel,
                     int i) {
  const TimeGrid& grid = kernel.grid();
  const std::vector<double>& mp = kernel.m_prime();
  const double h = grid.dt();
  const double t0 = grid.node(i);
  const double tm = t0 + 0.5 * h;
  const double mp0 = mp[i];
  const double mp1 = mp[i + 1];
  const double mpm = 0.5 * (mp0 + mp1);
  const Eigen::Matrix2d a0 = coeff_a(kernel.psi_at(t0));
  const Eigen::Matrix2d am = coeff_a(kernel.psi_at(tm));
  const Eigen::Matrix2d a1 = coeff_a(kernel.psi_at(grid.node(i + 1)));
  const State k1 = (-0.5 * theta * mp0) * (a0 * y);
  const State k2 = (-0.5 * theta * mpm) * (am * State(y + (0.5 * h) * k1));
  const State k3 = (-0.5 * theta * mpm) * (am * State(y + (0.5 * h) * k2));
  const State k4 = (-0.5 * theta * mp1) * (a1 * State(y + h * k3));
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Fundamental matrix dphi/dm = -(theta/2) A phi, phi(0) = Id, and its
// inverse propagated by its own equation (never by per-node inversion).
// phi^{-1} entries grow like e^{theta t}; products phi(t) phi_inv(s) lose
// all precision past theta*s ~ 36, so this pair is a short-horizon utility.
// Long-horizon transition products go through flow_cell_step.
struct PhiPair {
  OdeTrajectory<Eigen::Matrix2d> phi;
  OdeTrajectory<Eigen::Matrix2d> phi_inv;
};
PhiPair solve_phi(double theta, const KernelBundle& kernel);

// I1 = int tr(Gamma R) dm where Gamma solves the Lyapunov equation
// dGamma/dm = -(theta/2)(A Gamma + Gamma A^T) + b b^T, Gamma(0) = 0.
double fisher_i1(double theta, const KernelBundle& kernel);

// I2 = (1/4) int (l^T P)^2 dm for the mean path driven by v.
double fisher_i2(const std::vector<double>& v, double theta,
                 const KernelBundle& kernel);

// Covariance operator of the normalized information process, discretized
// with plain-dt trapezoid weights folded in symmetrically.
class OperatorTable {
 public:
  OperatorTable(const TimeGrid& grid, Eigen::MatrixXd weighted, double theta);

  const TimeGrid& grid() const { return grid_; }
  const Eigen::MatrixXd& matrix() const { return k_; }
  const Eigen::VectorXd& eigenvalues() const { return spectrum_; }  // ascending
  double nu1() const { return nu1_; }
  double j2() const { return grid_.horizon() * nu1_; }
  double theta() const { return theta_; }

 private:
  TimeGrid grid_;
  Eigen::MatrixXd k_;
  Eigen::VectorXd spectrum_;
  double nu1_;
  double theta_;
};

OperatorTable build_operator(double theta, const KernelBundle& kernel);

// I2 evaluated through the operator: the double integral of K against the
// isometry image of v. Dual route to fisher_i2 for validation.
double i2_through_operator(const OperatorTable& op,
                           const std::vector<double>& v,
                           const KernelBundle& kernel);

}  // namespace mfou

#endif
