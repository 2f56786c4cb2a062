#include "mfou/design.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mfou {

namespace {

// psi at an off-grid time, linear between diagonal nodes.
double psi_interp(const KernelBundle& kernel, double t) {
  return kernel.psi_at(t);
}

}  // namespace

InputSignal optimal_v(const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  const std::vector<double>& psi = kernel.psi_diag();
  std::vector<double> v(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) v[i] = std::sqrt(psi[i]);
  InputSignal sig;
  sig.grid = grid;
  sig.kind = InputKind::Optimal;
  sig.alpha = 0.0;
  sig.v = v;
  sig.u = optimal_u(kernel, v);
  return sig;
}

std::vector<double> optimal_u(const KernelBundle& kernel,
                              const std::vector<double>& v) {
  const TimeGrid& grid = kernel.grid();
  const int n = grid.steps();
  if (static_cast<int>(v.size()) != n + 1) {
    throw std::invalid_argument("input signal does not match the grid");
  }
  const std::vector<double>& m = kernel.m();
  // F(t_j) = int_0^t ghat(s, t_j) v(s) dm(s), trapezoid in the measure.
  std::vector<double> f(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < j; ++i) {
      const double dm = m[i + 1] - m[i];
      acc += 0.5 * (kernel.ghat().at(i, j) * v[i] +
                    kernel.ghat().at(i + 1, j) * v[i + 1]) *
             dm;
    }
    f[j] = acc;
  }
  return central_difference(f, grid.dt());
}

OdeTrajectory<Eigen::Vector2d> solve_p(const std::vector<double>& v,
                                       double theta,
                                       const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  if (v.size() != static_cast<std::size_t>(grid.steps() + 1)) {
    throw std::invalid_argument("input signal does not match the grid");
  }
  auto rhs = [&](double t, const Eigen::Vector2d& p) -> Eigen::Vector2d {
    const double psi = psi_interp(kernel, t);
    const double vt = interp_nodes(grid, v, t);
    return -0.5 * theta * (coeff_a(psi) * p) + coeff_b(psi) * vt;
  };
  return ode_step_linear(Eigen::Vector2d{0.0, 0.0}, rhs, grid,
                         kernel.m_prime(), "mean path P");
}

PhiPair solve_phi(double theta, const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  auto rhs_fwd = [&](double t, const Eigen::Matrix2d& y) -> Eigen::Matrix2d {
    return -0.5 * theta * (coeff_a(psi_interp(kernel, t)) * y);
  };
  auto rhs_inv = [&](double t, const Eigen::Matrix2d& y) -> Eigen::Matrix2d {
    return 0.5 * theta * (y * coeff_a(psi_interp(kernel, t)));
  };
  PhiPair out;
  out.phi = ode_step_linear(Eigen::Matrix2d::Identity().eval(), rhs_fwd, grid,
                            kernel.m_prime(), "fundamental matrix phi");
  out.phi_inv = ode_step_linear(Eigen::Matrix2d::Identity().eval(), rhs_inv,
                                grid, kernel.m_prime(),
                                "inverse fundamental matrix");
  return out;
}

double fisher_i1(double theta, const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  auto rhs = [&](double t, const Eigen::Matrix2d& g) -> Eigen::Matrix2d {
    const double psi = psi_interp(kernel, t);
    const Eigen::Matrix2d a = coeff_a(psi);
    const Eigen::Vector2d b = coeff_b(psi);
    return -0.5 * theta * (a * g + g * a.transpose()) + b * b.transpose();
  };
  OdeTrajectory<Eigen::Matrix2d> gamma =
      ode_step_linear(Eigen::Matrix2d::Zero().eval(), rhs, grid,
                      kernel.m_prime(), "stationary covariance Gamma");
  const std::vector<double>& psi = kernel.psi_diag();
  std::vector<double> f(grid.steps() + 1);
  for (int i = 0; i <= grid.steps(); ++i) {
    f[i] = (gamma.at(i) * coeff_r(psi[i])).trace();
  }
  return integrate_in_measure(f, kernel.m());
}

double fisher_i2(const std::vector<double>& v, double theta,
                 const KernelBundle& kernel) {
  OdeTrajectory<Eigen::Vector2d> p = solve_p(v, theta, kernel);
  const TimeGrid& grid = kernel.grid();
  const std::vector<double>& psi = kernel.psi_diag();
  std::vector<double> f(grid.steps() + 1);
  for (int i = 0; i <= grid.steps(); ++i) {
    const double lp = coeff_l(psi[i]).dot(p.at(i));
    f[i] = lp * lp;
  }
  return 0.25 * integrate_in_measure(f, kernel.m());
}

OperatorTable::OperatorTable(const TimeGrid& grid, Eigen::MatrixXd weighted,
                             double theta)
    : grid_(grid), k_(std::move(weighted)), theta_(theta) {
  if (k_.rows() != k_.cols() ||
      k_.rows() != static_cast<Eigen::Index>(grid_.steps() + 1)) {
    throw std::invalid_argument("operator matrix does not match the grid");
  }
  EigenPair top = top_eigenvalue(k_);
  spectrum_ = symmetric_spectrum(k_);
  nu1_ = spectrum_(spectrum_.size() - 1);
  const double scale = std::max(1.0, std::fabs(nu1_));
  if (std::fabs(top.value - nu1_) > 1e-7 * scale) {
    throw std::runtime_error("operator eigenvalue routines disagree");
  }
  if (spectrum_(0) < -1e-8 * scale) {
    throw std::runtime_error(
        "covariance operator has a significantly negative eigenvalue");
  }
}

OperatorTable build_operator(double theta, const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  const int n = grid.steps();
  const double dt = grid.dt();
  const std::vector<double>& psi = kernel.psi_diag();

  /*
    K(s, sigma) = int_{max(s,sigma)}^T G(t, s) G(t, sigma) dt with
      G(t, sigma) = (1/2) psi(t)^{-1/2} l(t)^T Phi(t, sigma) b(sigma)
                    psi(sigma)^{-1/2},
    Phi the transition matrix of the state flow. Column sigma of the G table
    is filled by propagating y = Phi(., t_sigma) b(t_sigma) forward from
    t_sigma, so every intermediate stays O(1) and horizons with
    theta*T >> 1 (where phi^{-1} products cancel catastrophically) are safe.
    G(t, t) = 1 exactly since l^T b = 2 psi.
  */
  Eigen::MatrixXd gtab = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int col = 0; col <= n; ++col) {
    const double csq = 1.0 / std::sqrt(psi[col]);
    Eigen::Vector2d y = coeff_b(psi[col]);
    gtab(col, col) = 0.5 * csq * coeff_l(psi[col]).dot(y) * csq;
    for (int q = col; q < n; ++q) {
      y = flow_cell_step(y, theta, kernel, q);
      gtab(q + 1, col) =
          0.5 / std::sqrt(psi[q + 1]) * coeff_l(psi[q + 1]).dot(y) * csq;
    }
  }

  // Right trapezoid in t: accumulate full-weight outer products (half at
  // t = T), then remove the surplus half weight at each pair's own max node.
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int q = 0; q <= n; ++q) {
    const double eta = (q == n) ? 0.5 : 1.0;
    s.selfadjointView<Eigen::Lower>().rankUpdate(gtab.row(q).transpose(), eta);
  }
  std::vector<double> wsqrt(n + 1, std::sqrt(dt));
  wsqrt[0] = wsqrt[n] = std::sqrt(0.5 * dt);

  Eigen::MatrixXd k(n + 1, n + 1);
  for (int row = 0; row <= n; ++row) {
    for (int col = row; col <= n; ++col) {
      const double inner =
          s(col, row) - 0.5 * gtab(col, row) * gtab(col, col);
      const double val = wsqrt[row] * dt * inner * wsqrt[col];
      k(row, col) = val;
      k(col, row) = val;
    }
  }
  return OperatorTable(grid, std::move(k), theta);
}

double i2_through_operator(const OperatorTable& op,
                           const std::vector<double>& v,
                           const KernelBundle& kernel) {
  const TimeGrid& grid = op.grid();
  const int n = grid.steps();
  if (static_cast<int>(v.size()) != n + 1 ||
      !(kernel.grid() == grid)) {
    throw std::invalid_argument("input signal does not match the operator");
  }
  const double dt = grid.dt();
  const std::vector<double>& psi = kernel.psi_diag();
  // Isometry into L2(dt): vtilde = v / sqrt(psi); the weighted matrix
  // already carries one sqrt(w) per side.
  Eigen::VectorXd y(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double w = (i == 0 || i == n) ? 0.5 * dt : dt;
    y(i) = std::sqrt(w) * v[i] / std::sqrt(psi[i]);
  }
  return y.dot(op.matrix() * y);
}

}  // namespace mfou
