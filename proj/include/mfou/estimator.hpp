// Maximum-likelihood estimation of the mean-reversion rate from (Z, Q)
// paths, plus the limiting variance targets for each regime.
#ifndef MFOU_ESTIMATOR_HPP
#define MFOU_ESTIMATOR_HPP

#include <vector>

#include "mfou/kernel.hpp"
#include "mfou/process.hpp"

namespace mfou {

struct EstimationResult {
  double theta_hat = 0.0;
  double numerator = 0.0;    // int v Q dm - int Q dZ
  double denominator = 0.0;  // int Q^2 dm
  double horizon = 0.0;
  InputKind input_kind = InputKind::Zero;
};

// theta_hat = (int v Q dm - int Q dZ) / int Q^2 dm with left-point sums.
// Throws when the information integral is below 1e-12 (degenerate path).
EstimationResult mle(const std::vector<double>& z,
                     const std::vector<double>& q, const InputSignal& input,
                     const KernelBundle& kernel);

enum class DriftRegime { Constant, Optimal };

// Limiting variance of sqrt(T)(theta_hat - theta):
//   constant drift, H > 1/2: 2 theta
//   constant drift, H < 1/2: 2 theta^2 / (2 alpha^2 + theta)
//   optimal input, any H:    1 / (1/(2 theta) + 1/theta^2)
double theoretical_variance(const HurstParam& h, double theta, double alpha,
                            DriftRegime regime);

// I(theta) = 1/(2 theta) + 1/theta^2.
double asymptotic_fisher(double theta);

}  // namespace mfou

#endif
