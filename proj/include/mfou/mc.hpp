// Monte Carlo harness: replicate simulate -> transform -> estimate with
// split seeds, summarize sqrt(T)(theta_hat - theta) against its limiting
// normal, and score efficiency against the information integral.
#ifndef MFOU_MC_HPP
#define MFOU_MC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mfou/estimator.hpp"
#include "mfou/kernel.hpp"
#include "mfou/process.hpp"

namespace mfou {

struct McConfig {
  HurstParam hurst{0.7};
  double theta = 1.0;
  double alpha = 1.0;  // constant-input level; ignored for zero/optimal
  InputKind kind = InputKind::Constant;
  double horizon = 30.0;
  int steps = 600;
  int reps = 400;
  std::uint64_t seed = 0;
  std::string out;  // echoed into manifests by the CLI; unused here
};

// One effective replication; rep keeps its original index so dropped
// replications are visible as gaps.
struct McRecord {
  int rep = 0;
  std::uint64_t seed = 0;
  double theta_hat = 0.0;
  double sqrt_t_error = 0.0;  // sqrt(T) (theta_hat - theta)
  double denom = 0.0;         // int Q^2 dm
};

struct McSummary {
  McConfig config;
  int n_effective = 0;
  int n_degenerate = 0;
  double mean = 0.0;      // of sqrt(T)(theta_hat - theta)
  double variance = 0.0;  // unbiased, same statistic
  double mean_se = 0.0;
  double variance_se = 0.0;  // normal-theory s^2 sqrt(2/(n-1))
  double target_variance = 0.0;
  double normality_stat = 0.0;
  double normality_threshold = 0.0;
  bool normality_pass = false;
  std::vector<McRecord> records;
};

// Empirical-CDF sup-distance of samples against Normal(0, target_variance).
// Requires at least 50 samples and target_variance > 0.
double normality_check(const std::vector<double>& samples,
                       double target_variance);

// Rejection threshold for the sup-distance at this sample count.
double normality_threshold(int n_samples);

// Runs config.reps independent replications. A replication is degenerate
// when the information integral underflows or the estimate is not finite;
// degenerate replications are dropped and counted, and more than 5% of them
// invalidates the study. The two-argument form builds (or loads) the kernel
// bundle itself.
McSummary run_study(const McConfig& config);
McSummary run_study(const McConfig& config, const KernelBundle& kernel);

// (I1 + I2 at the optimal input) * empirical MSE of theta_hat; approaches 1
// for efficient studies as the horizon grows. Finite for degenerate-variance
// summaries as long as at least one replication survived.
double efficiency_ratio(const McSummary& summary, const KernelBundle& kernel);

}  // namespace mfou

#endif
