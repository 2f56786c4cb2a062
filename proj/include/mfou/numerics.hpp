// Shared numerical substrate: quadrature against a bracket measure,
// fourth-order stepping of linear systems driven by that measure, finite
// differences, and a power-iteration eigenvalue solver.
#ifndef MFOU_NUMERICS_HPP
#define MFOU_NUMERICS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfou/grid.hpp"

namespace mfou {

// Trapezoidal rule for integral of f dm given node values of f and of the
// cumulative measure m.
double integrate_in_measure(const std::vector<double>& f_nodes,
                            const std::vector<double>& m_nodes);

// Same rule expressed through precomputed node weights.
double integrate(const std::vector<double>& f_nodes,
                 const MeasureWeights& weights);

// Centered differences in the interior, one-sided at the ends.
std::vector<double> central_difference(const std::vector<double>& values,
                                       double dt);

// Largest eigenvalue of a symmetric matrix by power iteration.
// Convergence: |lambda_{k+1} - lambda_k| < 1e-10 |lambda_k|; hard cap 1e5
// iterations. The input must be symmetric to 1e-10 relative tolerance.
struct EigenPair {
  double value = 0.0;
  Eigen::VectorXd vector;
  int iterations = 0;
};
EigenPair top_eigenvalue(const Eigen::MatrixXd& a);

// Full spectrum of a symmetric matrix, ascending. Backed by a dense solver;
// used where every eigenvalue is needed and as an independent cross-check of
// top_eigenvalue.
Eigen::VectorXd symmetric_spectrum(const Eigen::MatrixXd& a);

// Trajectory of a state stepped across the grid; one value per node.
template <typename State>
struct OdeTrajectory {
  TimeGrid grid{1.0, 1};
  std::vector<State> values;
  std::string label;

  const State& at(int i) const { return values.at(i); }
  const State& back() const { return values.back(); }
};

namespace detail {
inline bool all_finite(double x) { return std::isfinite(x); }
template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  return m.allFinite();
}
}  // namespace detail

// Classical RK4 for dY/dm = rhs(t, Y) where m is the bracket measure; the
// chain rule folds m'(t) into the time derivative: dY/dt = m'(t) rhs(t, Y).
// m' is supplied per node and averaged at cell midpoints. Throws on the first
// node where the state stops being finite.
template <typename State, typename Rhs>
OdeTrajectory<State> ode_step_linear(const State& y0, Rhs rhs,
                                     const TimeGrid& grid,
                                     const std::vector<double>& m_prime,
                                     const std::string& label) {
  const int n = grid.steps();
  if (static_cast<int>(m_prime.size()) != n + 1) {
    throw std::invalid_argument("m_prime must be given at every grid node");
  }
  OdeTrajectory<State> out;
  out.grid = grid;
  out.label = label;
  out.values.reserve(n + 1);
  out.values.push_back(y0);
  const double h = grid.dt();
  State y = y0;
  for (int i = 0; i < n; ++i) {
    const double t0 = grid.node(i);
    const double t1 = grid.node(i + 1);
    const double tm = 0.5 * (t0 + t1);
    const double mp0 = m_prime[i];
    const double mp1 = m_prime[i + 1];
    const double mpm = 0.5 * (mp0 + mp1);
    State k1 = rhs(t0, y);
    k1 = mp0 * k1;
    State k2 = rhs(tm, State(y + (0.5 * h) * k1));
    k2 = mpm * k2;
    State k3 = rhs(tm, State(y + (0.5 * h) * k2));
    k3 = mpm * k3;
    State k4 = rhs(t1, State(y + h * k3));
    k4 = mp1 * k4;
    y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!detail::all_finite(y)) {
      throw std::runtime_error("state blew up at node " + std::to_string(i + 1) +
                               " (t=" + std::to_string(t1) + ") while stepping " +
                               label);
    }
    out.values.push_back(y);
  }
  return out;
}

// Linear interpolation of node values at an off-grid time.
double interp_nodes(const TimeGrid& grid, const std::vector<double>& values,
                    double t);

}  // namespace mfou

#endif
