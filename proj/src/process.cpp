#include "mfou/process.hpp"

#include <stdexcept>

#include "mfou/numerics.hpp"

namespace mfou {

namespace {

void require_nodes(const std::vector<double>& values, const TimeGrid& grid,
                   const char* what) {
  if (static_cast<int>(values.size()) != grid.nodes()) {
    throw std::invalid_argument(std::string(what) +
                                " does not match the grid node count");
  }
}

}  // namespace

std::string input_kind_name(InputKind k) {
  switch (k) {
    case InputKind::Zero: return "zero";
    case InputKind::Constant: return "constant";
    case InputKind::Optimal: return "optimal";
    case InputKind::Tabulated: return "tabulated";
  }
  throw std::invalid_argument("unknown input kind");
}

InputSignal InputSignal::zero(const TimeGrid& grid) {
  InputSignal s;
  s.grid = grid;
  s.kind = InputKind::Zero;
  s.u.assign(grid.nodes(), 0.0);
  s.v.assign(grid.nodes(), 0.0);
  return s;
}

InputSignal InputSignal::constant(const KernelBundle& kernel, double alpha) {
  InputSignal s;
  s.grid = kernel.grid();
  s.kind = InputKind::Constant;
  s.alpha = alpha;
  s.u.assign(kernel.grid().nodes(), alpha);
  s.v = transform_u_to_v(s.u, kernel);
  return s;
}

InputSignal InputSignal::tabulated(const TimeGrid& grid, std::vector<double> u,
                                   std::vector<double> v) {
  InputSignal s;
  s.grid = grid;
  s.kind = InputKind::Tabulated;
  require_nodes(u, grid, "input u");
  require_nodes(v, grid, "input v");
  s.u = std::move(u);
  s.v = std::move(v);
  return s;
}

double InputSignal::energy(const KernelBundle& kernel) const {
  std::vector<double> v2(v.size());
  for (size_t i = 0; i < v.size(); ++i) v2[i] = v[i] * v[i];
  return integrate_in_measure(v2, kernel.m()) / grid.horizon();
}

std::vector<double> transform_u_to_v(const std::vector<double>& u,
                                     const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  require_nodes(u, grid, "input u");
  const int n = grid.steps();
  const double dt = grid.dt();
  // G(t_j) = int_0^{t_j} g(s, t_j) u(s) ds by the trapezoidal rule in s
  std::vector<double> big(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    const double* col = kernel.g().column(j);
    double acc = 0.5 * (col[0] * u[0] + col[j] * u[j]);
    for (int i = 1; i < j; ++i) acc += col[i] * u[i];
    big[j] = acc * dt;
  }
  std::vector<double> v = central_difference(big, dt);
  for (int i = 0; i <= n; ++i) v[i] /= kernel.m_prime()[i];
  return v;
}

std::vector<double> simulate_x(const NoisePath& noise, double theta,
                               const InputSignal& input) {
  if (theta < 0.0) {
    throw std::invalid_argument("mean-reversion rate must be nonnegative");
  }
  const TimeGrid& grid = input.grid;
  if (static_cast<int>(noise.increments.size()) != grid.steps()) {
    throw std::invalid_argument("noise increments do not match the grid");
  }
  const double dt = grid.dt();
  std::vector<double> x(grid.nodes(), 0.0);
  for (int i = 0; i < grid.steps(); ++i) {
    x[i + 1] = x[i] + (-theta * x[i] + input.u[i]) * dt + noise.increments[i];
  }
  return x;
}

std::vector<double> transform_z(const std::vector<double>& x,
                                const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  require_nodes(x, grid, "observation path");
  const int n = grid.steps();
  std::vector<double> z(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    const double* col = kernel.g().column(j);
    double acc = 0.0, comp = 0.0;
    for (int i = 0; i < j; ++i) {
      const double term = col[i] * (x[i + 1] - x[i]);
      const double y = term - comp;
      const double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    z[j] = acc;
  }
  return z;
}

std::vector<double> compute_q(const std::vector<double>& z,
                              const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  require_nodes(z, grid, "semimartingale path");
  const int n = grid.steps();
  const std::vector<double>& psi = kernel.psi_diag();
  std::vector<double> q(n + 1, 0.0);
  double hist = 0.0;  // sum_{i<j} psi_i dZ_i
  for (int j = 1; j <= n; ++j) {
    hist += psi[j - 1] * (z[j] - z[j - 1]);
    q[j] = 0.5 * (psi[j] * z[j] + hist);
  }
  return q;
}

std::vector<double> invert_z(const std::vector<double>& z,
                             const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  require_nodes(z, grid, "semimartingale path");
  const int n = grid.steps();
  std::vector<double> x(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) {
    const double* col = kernel.ghat().column(j);
    double acc = 0.0, comp = 0.0;
    for (int i = 0; i < j; ++i) {
      const double term = col[i] * (z[i + 1] - z[i]);
      const double y = term - comp;
      const double t = acc + y;
      comp = (t - acc) - y;
      acc = t;
    }
    x[j] = acc;
  }
  return x;
}

std::vector<double> extract_m(const std::vector<double>& z,
                              const std::vector<double>& q,
                              const InputSignal& input, double theta,
                              const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  require_nodes(z, grid, "semimartingale path");
  require_nodes(q, grid, "information path");
  const int n = grid.steps();
  const std::vector<double>& m = kernel.m();
  std::vector<double> out(n + 1, 0.0);
  double drift = 0.0;
  for (int j = 1; j <= n; ++j) {
    drift += (input.v[j - 1] - theta * q[j - 1]) * (m[j] - m[j - 1]);
    out[j] = z[j] - drift;
  }
  return out;
}

ZetaPath zeta_path(const std::vector<double>& z, const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  require_nodes(z, grid, "semimartingale path");
  const int n = grid.steps();
  ZetaPath out;
  out.grid = grid;
  out.zeta1 = z;
  out.zeta2.assign(n + 1, 0.0);
  const std::vector<double>& psi = kernel.psi_diag();
  for (int j = 1; j <= n; ++j) {
    out.zeta2[j] = out.zeta2[j - 1] + psi[j - 1] * (z[j] - z[j - 1]);
  }
  return out;
}

PathBundle make_path(const NoisePath& noise, double theta,
                     const InputSignal& input, const KernelBundle& kernel) {
  if (!(input.grid == kernel.grid())) {
    throw std::invalid_argument("input signal and kernel grids differ");
  }
  PathBundle p;
  p.grid = kernel.grid();
  p.theta_true = theta;
  p.input = input;
  p.xi = noise.cumulative();
  p.x = simulate_x(noise, theta, input);
  p.z = transform_z(p.x, kernel);
  p.q = compute_q(p.z, kernel);
  p.m = extract_m(p.z, p.q, input, theta, kernel);
  return p;
}

}  // namespace mfou
