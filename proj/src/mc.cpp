#include "mfou/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "mfou/design.hpp"
#include "mfou/mfbm.hpp"

namespace mfou {

namespace {

double normal_cdf(double x, double sigma) {
  return 0.5 * std::erfc(-x / (sigma * std::numbers::sqrt2));
}

// Kahan-compensated sum; keeps the summary reduction order-independent at
// the 1-ulp level across equal regroupings.
double compensated_sum(const std::vector<double>& xs) {
  double sum = 0.0, carry = 0.0;
  for (double x : xs) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return sum;
}

InputSignal make_input(const McConfig& config, const KernelBundle& kernel) {
  switch (config.kind) {
    case InputKind::Zero:
      return InputSignal::zero(kernel.grid());
    case InputKind::Constant:
      return InputSignal::constant(kernel, config.alpha);
    case InputKind::Optimal:
      return optimal_v(kernel);
    default:
      throw std::invalid_argument(
          "tabulated inputs are not a study kind; pass zero, constant or "
          "optimal");
  }
}

}  // namespace

double normality_check(const std::vector<double>& samples,
                       double target_variance) {
  if (samples.size() < 50) {
    throw std::invalid_argument(
        "normality check needs at least 50 samples");
  }
  if (!(target_variance > 0.0)) {
    throw std::invalid_argument("target variance must be positive");
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double sigma = std::sqrt(target_variance);
  const double n = static_cast<double>(sorted.size());
  double sup = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i], sigma);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    sup = std::max(sup, std::max(std::fabs(f - lo), std::fabs(f - hi)));
  }
  return sup;
}

double normality_threshold(int n_samples) {
  if (n_samples <= 0) {
    throw std::invalid_argument("sample count must be positive");
  }
  // Kolmogorov 95% constant, widened 1.5x: the limit is an asymptotic
  // statement and the estimator noise at desk-scale T inflates the distance.
  return 1.36 / std::sqrt(static_cast<double>(n_samples)) * 1.5;
}

McSummary run_study(const McConfig& config) {
  const TimeGrid grid(config.horizon, config.steps);
  return run_study(config, KernelBundle::load_or_build(grid, config.hurst));
}

McSummary run_study(const McConfig& config, const KernelBundle& kernel) {
  if (config.reps < 2) {
    throw std::invalid_argument("a study needs at least two replications");
  }
  if (!(config.theta > 0.0)) {
    throw std::invalid_argument("mean-reversion rate must be positive");
  }
  if (!(kernel.grid() == TimeGrid(config.horizon, config.steps))) {
    throw std::invalid_argument("kernel bundle does not match the study grid");
  }

  const double t_horizon = config.horizon;
  const double sqrt_t = std::sqrt(t_horizon);
  const InputSignal input = make_input(config, kernel);
  const NoiseSampler sampler(kernel.grid(), config.hurst);

  McSummary out;
  out.config = config;
  out.records.reserve(static_cast<std::size_t>(config.reps));
  for (int rep = 0; rep < config.reps; ++rep) {
    const NoisePath noise =
        sampler.sample(config.seed, static_cast<std::uint64_t>(rep));
    const PathBundle path = make_path(noise, config.theta, input, kernel);
    try {
      const EstimationResult est = mle(path.z, path.q, input, kernel);
      if (!std::isfinite(est.theta_hat)) {
        throw std::runtime_error("estimate is not finite");
      }
      McRecord rec;
      rec.rep = rep;
      rec.seed = noise.seed;
      rec.theta_hat = est.theta_hat;
      rec.sqrt_t_error = sqrt_t * (est.theta_hat - config.theta);
      rec.denom = est.denominator;
      out.records.push_back(rec);
    } catch (const std::runtime_error&) {
      ++out.n_degenerate;
    }
  }
  out.n_effective = static_cast<int>(out.records.size());
  if (out.n_degenerate * 20 > config.reps) {
    throw std::runtime_error(
        "study invalid: more than 5% of replications were degenerate (" +
        std::to_string(out.n_degenerate) + " of " +
        std::to_string(config.reps) + ")");
  }

  std::vector<double> errs(out.records.size());
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    errs[i] = out.records[i].sqrt_t_error;
  }
  const double n = static_cast<double>(out.n_effective);
  out.mean = compensated_sum(errs) / n;
  std::vector<double> sq(errs.size());
  for (std::size_t i = 0; i < errs.size(); ++i) {
    const double d = errs[i] - out.mean;
    sq[i] = d * d;
  }
  out.variance = compensated_sum(sq) / (n - 1.0);
  out.mean_se = std::sqrt(out.variance / n);
  out.variance_se = out.variance * std::sqrt(2.0 / (n - 1.0));

  const DriftRegime regime = (config.kind == InputKind::Optimal)
                                 ? DriftRegime::Optimal
                                 : DriftRegime::Constant;
  const double alpha = (config.kind == InputKind::Constant) ? config.alpha
                                                            : 0.0;
  out.target_variance =
      theoretical_variance(config.hurst, config.theta, alpha, regime);
  if (out.n_effective >= 50) {
    out.normality_stat = normality_check(errs, out.target_variance);
    out.normality_threshold = normality_threshold(out.n_effective);
    out.normality_pass = out.normality_stat <= out.normality_threshold;
  }
  return out;
}

double efficiency_ratio(const McSummary& summary, const KernelBundle& kernel) {
  const McConfig& config = summary.config;
  if (!(kernel.grid() == TimeGrid(config.horizon, config.steps))) {
    throw std::invalid_argument(
        "kernel bundle does not match the study grid");
  }
  if (summary.records.empty()) {
    throw std::invalid_argument("summary has no effective replications");
  }
  std::vector<double> sq(summary.records.size());
  for (std::size_t i = 0; i < summary.records.size(); ++i) {
    const double d = summary.records[i].theta_hat - config.theta;
    sq[i] = d * d;
  }
  const double mse =
      compensated_sum(sq) / static_cast<double>(summary.records.size());
  const InputSignal opt = optimal_v(kernel);
  const double info = fisher_i1(config.theta, kernel) +
                      fisher_i2(opt.v, config.theta, kernel);
  return info * mse;
}

}  // namespace mfou
