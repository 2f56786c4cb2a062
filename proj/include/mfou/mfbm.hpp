// Mixed noise xi = W + B^H: covariance and exact Gaussian sampling of grid
// increments through a Cholesky factor of the increment covariance.
#ifndef MFOU_MFBM_HPP
#define MFOU_MFBM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "mfou/grid.hpp"

namespace mfou {

// Roughness index H in (0,1), H != 1/2.
class HurstParam {
 public:
  explicit HurstParam(double h);
  double value() const { return h_; }
  bool rough() const { return h_ < 0.5; }  // H < 1/2 regime

 private:
  double h_;
};

// Cov(xi_s, xi_t) = min(s,t) + (s^{2H} + t^{2H} - |t-s|^{2H}) / 2.
double mfbm_covariance(double s, double t, const HurstParam& h);

// One sampled path of the driving noise, stored as grid increments.
struct NoisePath {
  std::vector<double> increments;  // increments.size() == grid.steps()
  std::uint64_t seed = 0;          // per-path generator seed

  std::vector<double> cumulative() const;  // xi at nodes, xi_0 = 0
};

// Deterministic per-path seed: root seed XOR a 64-bit mix of the path index.
std::uint64_t mix_seed(std::uint64_t root, std::uint64_t index);

// Shared increment-covariance factor; reused across paths of one study.
class NoiseSampler {
 public:
  NoiseSampler(const TimeGrid& grid, const HurstParam& h);

  NoisePath sample(std::uint64_t root_seed, std::uint64_t path_index) const;
  const Eigen::MatrixXd& cholesky_factor() const { return chol_; }
  const TimeGrid& grid() const { return grid_; }

 private:
  TimeGrid grid_;
  HurstParam h_;
  Eigen::MatrixXd chol_;  // lower triangular
};

std::vector<NoisePath> sample_paths(const TimeGrid& grid, const HurstParam& h,
                                    int n_paths, std::uint64_t seed);

}  // namespace mfou

#endif
