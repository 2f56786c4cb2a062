#include "mfou/numerics.hpp"

#include <algorithm>

namespace mfou {

double integrate_in_measure(const std::vector<double>& f_nodes,
                            const std::vector<double>& m_nodes) {
  if (f_nodes.size() != m_nodes.size()) {
    throw std::invalid_argument(
        "integrand and measure arrays differ in length: " +
        std::to_string(f_nodes.size()) + " vs " + std::to_string(m_nodes.size()));
  }
  if (f_nodes.size() < 2) {
    throw std::invalid_argument("need at least two nodes to integrate");
  }
  // Kahan-compensated accumulation; trapezoid in the measure increments.
  double sum = 0.0, comp = 0.0;
  for (size_t i = 0; i + 1 < f_nodes.size(); ++i) {
    const double dm = m_nodes[i + 1] - m_nodes[i];
    const double term = 0.5 * (f_nodes[i] + f_nodes[i + 1]) * dm;
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

double integrate(const std::vector<double>& f_nodes,
                 const MeasureWeights& weights) {
  if (static_cast<int>(f_nodes.size()) != weights.size()) {
    throw std::invalid_argument(
        "integrand and weight arrays differ in length: " +
        std::to_string(f_nodes.size()) + " vs " + std::to_string(weights.size()));
  }
  double sum = 0.0, comp = 0.0;
  for (size_t i = 0; i < f_nodes.size(); ++i) {
    const double term = f_nodes[i] * weights.weights()[i];
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

std::vector<double> central_difference(const std::vector<double>& values,
                                       double dt) {
  const int n = static_cast<int>(values.size());
  if (n < 2) {
    throw std::invalid_argument("need at least two nodes to differentiate");
  }
  std::vector<double> d(n);
  d[0] = (values[1] - values[0]) / dt;
  d[n - 1] = (values[n - 1] - values[n - 2]) / dt;
  for (int i = 1; i + 1 < n; ++i) {
    d[i] = (values[i + 1] - values[i - 1]) / (2.0 * dt);
  }
  return d;
}

EigenPair top_eigenvalue(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix must be square");
  }
  const int n = static_cast<int>(a.rows());
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale > 0.0) {
    const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
      throw std::invalid_argument("matrix is not symmetric within tolerance");
    }
  }
  EigenPair out;
  out.vector = Eigen::VectorXd::Ones(n);
  // Deterministic start with a mild tilt so it is not orthogonal to the
  // leading eigenvector of structured matrices.
  for (int i = 0; i < n; ++i) out.vector[i] += 1e-3 * i / std::max(1, n - 1);
  out.vector.normalize();
  if (scale == 0.0) return out;

  double lambda = out.vector.dot(a * out.vector);
  const int max_iter = 100000;
  for (int k = 0; k < max_iter; ++k) {
    Eigen::VectorXd w = a * out.vector;
    const double norm = w.norm();
    if (norm == 0.0) {
      out.value = 0.0;
      out.iterations = k + 1;
      return out;
    }
    w /= norm;
    const double next = w.dot(a * w);
    out.vector = w;
    out.iterations = k + 1;
    if (std::abs(next - lambda) < 1e-10 * std::abs(next)) {
      out.value = next;
      return out;
    }
    lambda = next;
  }
  throw std::runtime_error("power iteration did not converge in 100000 steps");
}

Eigen::VectorXd symmetric_spectrum(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix must be square");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue decomposition failed");
  }
  return es.eigenvalues();
}

double interp_nodes(const TimeGrid& grid, const std::vector<double>& values,
                    double t) {
  if (static_cast<int>(values.size()) != grid.nodes()) {
    throw std::invalid_argument("value array does not match the grid");
  }
  const double dt = grid.dt();
  if (t <= 0.0) return values.front();
  if (t >= grid.horizon()) return values.back();
  const int i = std::min(grid.steps() - 1, static_cast<int>(t / dt));
  const double w = (t - grid.node(i)) / dt;
  return (1.0 - w) * values[i] + w * values[i + 1];
}

}  // namespace mfou
