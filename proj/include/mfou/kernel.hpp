// Filtering kernel g(s,t) of the mixed noise, the martingale bracket it
// induces, and the inverse kernel used to map the semimartingale back to the
// observation. Tables are dense lower-triangular over a uniform grid and can
// be cached on disk.
#ifndef MFOU_KERNEL_HPP
#define MFOU_KERNEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mfou/grid.hpp"
#include "mfou/mfbm.hpp"

namespace mfou {

// Lower-triangular table indexed by (node i, horizon j), i <= j, stored by
// horizon columns.
class TriTable {
 public:
  TriTable() = default;
  explicit TriTable(int n);

  int horizons() const { return n_; }
  double at(int i, int j) const { return data_[offset(j) + i]; }
  double& at(int i, int j) { return data_[offset(j) + i]; }
  const double* column(int j) const { return data_.data() + offset(j); }
  double* column(int j) { return data_.data() + offset(j); }
  int column_size(int j) const { return j + 1; }
  const std::vector<double>& raw() const { return data_; }
  std::vector<double>& raw() { return data_; }

 private:
  static std::size_t offset(int j) {
    return static_cast<std::size_t>(j) * (j + 1) / 2;
  }
  int n_ = 0;
  std::vector<double> data_;
};

// Normalizing constant lambda_H = 2H G(3-2H) G(H+1/2) / G(3/2-H).
double lambda_h(const HurstParam& h);

// Kernel stack for one (H, grid) pair: g table, bracket m and its
// derivative, psi(t,t) = 1/m'(t), and the inverse kernel table.
class KernelBundle {
 public:
  static KernelBundle build(const TimeGrid& grid, const HurstParam& h);
  // Disk-cached build; see cache_key() and the file comment in kernel.cpp
  // for the on-disk layout. The directory is taken from MFOU_CACHE_DIR and
  // defaults to .mfou-cache under the working directory.
  static KernelBundle load_or_build(const TimeGrid& grid, const HurstParam& h);
  // Synthetic bundle with m(t) = t, g = ghat = psi = 1. Test fixture for the
  // flat-clock limit; not produced by the kernel equation.
  static KernelBundle flat(const TimeGrid& grid);

  const TimeGrid& grid() const { return grid_; }
  const HurstParam& hurst() const { return h_; }

  const TriTable& g() const { return g_; }
  const TriTable& ghat() const { return ghat_; }
  const std::vector<double>& m() const { return m_; }
  const std::vector<double>& m_prime() const { return m_prime_; }
  const std::vector<double>& psi_diag() const { return psi_; }

  double bracket_total() const { return m_.back(); }
  double psi_at(double t) const;      // linear interpolation of psi(t,t)
  double m_prime_at(double t) const;  // linear interpolation of m'(t)
  MeasureWeights measure_weights() const { return MeasureWeights(grid_, m_); }

  // Restriction to the first j steps; identical to a fresh build on the
  // shorter horizon up to the shared linear algebra.
  KernelBundle prefix(int j) const;

  std::string cache_key() const;
  std::uint64_t cache_hash() const;

 private:
  KernelBundle(const TimeGrid& grid, const HurstParam& h)
      : grid_(grid), h_(h) {}
  void derive_from_g();  // bracket, m', psi, ghat from the g table

  TimeGrid grid_;
  HurstParam h_;
  TriTable g_;
  TriTable ghat_;
  std::vector<double> m_;
  std::vector<double> m_prime_;
  std::vector<double> psi_;
};

// Solves the kernel equation for every horizon column. For H > 1/2 the
// equation is collocated in its weakly singular second-kind form; for
// H < 1/2 the integro-differential form is discretized directly with the
// inner integral evaluated on a staggered grid. Both use exact cell
// integration of the singular weight against piecewise-linear g.
TriTable solve_g(const TimeGrid& grid, const HurstParam& h);

// Reference solver for one horizon: assembles the dense collocation system
// explicitly and solves it with a pivoted factorization. Used to validate
// the shared-prefix fast path.
std::vector<double> solve_g_direct(const TimeGrid& grid, const HurstParam& h,
                                   int horizon);

// Bracket values m(t_j) = integral of g(., t_j) over [0, t_j].
std::vector<double> bracket(const TriTable& g, const TimeGrid& grid);

// Sup norm of g + H d/ds int g(r,t) |r-s|^{2H-1} sign(s-r) dr - 1 on a
// refined grid, evaluated over the interior band [band, 1-band] of [0, T].
// Independent check of a solved column against the defining equation.
double int_diff_residual(const KernelBundle& bundle, int refine, double band);

}  // namespace mfou

#endif
