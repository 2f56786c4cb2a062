#include "mfou/mfbm.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mfou {

HurstParam::HurstParam(double h) : h_(h) {
  if (!(h > 0.0) || !(h < 1.0)) {
    throw std::invalid_argument("H must lie in (0,1)");
  }
  if (h == 0.5) {
    throw std::invalid_argument("H must differ from 1/2");
  }
}

double mfbm_covariance(double s, double t, const HurstParam& h) {
  if (s < 0.0 || t < 0.0) {
    throw std::invalid_argument("covariance arguments must be nonnegative");
  }
  const double hh = 2.0 * h.value();
  return std::min(s, t) +
         0.5 * (std::pow(s, hh) + std::pow(t, hh) - std::pow(std::abs(t - s), hh));
}

std::vector<double> NoisePath::cumulative() const {
  std::vector<double> xi(increments.size() + 1, 0.0);
  for (size_t i = 0; i < increments.size(); ++i) xi[i + 1] = xi[i] + increments[i];
  return xi;
}

std::uint64_t mix_seed(std::uint64_t root, std::uint64_t index) {
  // splitmix64 finalizer over the index, XORed into the root seed.
  std::uint64_t z = index + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  return root ^ z;
}

namespace {

Eigen::MatrixXd increment_covariance(const TimeGrid& grid, const HurstParam& h) {
  const int n = grid.steps();
  const double dt = grid.dt();
  const double hh = 2.0 * h.value();
  // Stationary fractional part gamma(k) plus the independent Wiener diagonal.
  std::vector<double> gamma(n);
  const double scale = std::pow(dt, hh);
  for (int k = 0; k < n; ++k) {
    const double kp = std::pow(double(k + 1), hh);
    const double km = k == 0 ? 1.0 : std::pow(double(k - 1), hh);
    const double k0 = std::pow(double(k), hh);
    gamma[k] = 0.5 * scale * (kp + km - 2.0 * k0);
  }
  Eigen::MatrixXd c(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) c(i, j) = gamma[std::abs(i - j)];
    c(i, i) += dt;
  }
  return c;
}

}  // namespace

NoiseSampler::NoiseSampler(const TimeGrid& grid, const HurstParam& h)
    : grid_(grid), h_(h) {
  Eigen::MatrixXd c = increment_covariance(grid, h);
  Eigen::LLT<Eigen::MatrixXd> llt(c);
  if (llt.info() != Eigen::Success) {
    // One retry with a tiny diagonal jitter before giving up.
    c.diagonal().array() += 1e-12;
    llt.compute(c);
    if (llt.info() != Eigen::Success) {
      throw std::runtime_error("increment covariance is not positive definite");
    }
  }
  chol_ = llt.matrixL();
}

NoisePath NoiseSampler::sample(std::uint64_t root_seed,
                               std::uint64_t path_index) const {
  const int n = grid_.steps();
  NoisePath path;
  path.seed = mix_seed(root_seed, path_index);
  std::mt19937_64 rng(path.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z[i] = normal(rng);
  Eigen::VectorXd inc = chol_ * z;
  path.increments.assign(inc.data(), inc.data() + n);
  return path;
}

std::vector<NoisePath> sample_paths(const TimeGrid& grid, const HurstParam& h,
                                    int n_paths, std::uint64_t seed) {
  if (n_paths < 1) {
    throw std::invalid_argument("path count must be positive");
  }
  NoiseSampler sampler(grid, h);
  std::vector<NoisePath> out;
  out.reserve(n_paths);
  for (int p = 0; p < n_paths; ++p) out.push_back(sampler.sample(seed, p));
  return out;
}

}  // namespace mfou
