#include "mfou/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace mfou {

EstimationResult mle(const std::vector<double>& z,
                     const std::vector<double>& q, const InputSignal& input,
                     const KernelBundle& kernel) {
  const TimeGrid& grid = kernel.grid();
  const int n = grid.steps();
  if (static_cast<int>(z.size()) != n + 1 ||
      static_cast<int>(q.size()) != n + 1) {
    throw std::invalid_argument("paths do not match the kernel grid");
  }
  const std::vector<double>& m = kernel.m();
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double dm = m[i + 1] - m[i];
    const double dz = z[i + 1] - z[i];
    num += input.v[i] * q[i] * dm - q[i] * dz;
    den += q[i] * q[i] * dm;
  }
  if (!(den > 1e-12) || !std::isfinite(num)) {
    throw std::runtime_error(
        "degenerate path: information integral vanished (horizon or drift too small)");
  }
  EstimationResult r;
  r.numerator = num;
  r.denominator = den;
  r.theta_hat = num / den;
  r.horizon = grid.horizon();
  r.input_kind = input.kind;
  return r;
}

double theoretical_variance(const HurstParam& h, double theta, double alpha,
                            DriftRegime regime) {
  if (!(theta > 0.0)) {
    throw std::invalid_argument("mean-reversion rate must be positive");
  }
  if (regime == DriftRegime::Optimal) {
    return 1.0 / asymptotic_fisher(theta);
  }
  if (h.rough()) {
    return 2.0 * theta * theta / (2.0 * alpha * alpha + theta);
  }
  return 2.0 * theta;
}

double asymptotic_fisher(double theta) {
  if (!(theta > 0.0)) {
    throw std::invalid_argument("mean-reversion rate must be positive");
  }
  return 1.0 / (2.0 * theta) + 1.0 / (theta * theta);
}

}  // namespace mfou
