#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mfou/kernel.hpp"
#include "mfou/numerics.hpp"

using namespace mfou;

namespace {

double max_column_gap(const TriTable& g, const std::vector<double>& direct,
                      int j) {
  double worst = 0.0;
  for (int i = 0; i <= j; ++i) {
    worst = std::max(worst, std::abs(g.at(i, j) - direct[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("triangular table addressing") {
  TriTable t(4);
  for (int j = 0; j <= 4; ++j) {
    for (int i = 0; i <= j; ++i) t.at(i, j) = i + 100.0 * j;
  }
  CHECK(t.column(3)[2] == 2.0 + 300.0);
  CHECK(t.column_size(4) == 5);
  CHECK(t.raw().size() == 15);
  CHECK(t.at(0, 0) == 0.0);
}

TEST_CASE("normalizing constant against independently computed values") {
  CHECK(lambda_h(HurstParam(0.7)) ==
        doctest::Approx(0.9865381349212882).epsilon(1e-12));
  CHECK(lambda_h(HurstParam(0.3)) ==
        doctest::Approx(0.9450357392286055).epsilon(1e-12));
  CHECK(lambda_h(HurstParam(0.505)) ==
        doctest::Approx(0.9999825450949952).epsilon(1e-12));
}

TEST_CASE("single-step systems match hand-solved values") {
  // H > 1/2, one step on [0,1]: symmetric 2x2 with row sum 1.7
  TimeGrid grid(1.0, 1);
  TriTable g = solve_g(grid, HurstParam(0.7));
  CHECK(g.at(0, 1) == doctest::Approx(0.5882352941176471).epsilon(1e-12));
  CHECK(g.at(1, 1) == doctest::Approx(0.5882352941176471).epsilon(1e-12));
  auto direct = solve_g_direct(grid, HurstParam(0.7), 1);
  CHECK(direct[0] == doctest::Approx(0.5882352941176471).epsilon(1e-12));

  // H < 1/2, one step: both staggered rows have total weight 2
  TriTable gr = solve_g(grid, HurstParam(0.3));
  CHECK(gr.at(0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gr.at(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
  auto direct_r = solve_g_direct(grid, HurstParam(0.3), 1);
  CHECK(direct_r[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("shared-prefix solver agrees with the explicit solver") {
  TimeGrid grid(1.5, 24);
  for (double hv : {0.7, 0.3}) {
    HurstParam h(hv);
    TriTable g = solve_g(grid, h);
    for (int j : {1, 2, 3, 11, 24}) {
      auto direct = solve_g_direct(grid, h, j);
      const double gap = max_column_gap(g, direct, j);
      INFO("H=", hv, " horizon=", j, " gap=", gap);
      CHECK(gap < 1e-10);
    }
  }
}

TEST_CASE("kernel tends to one half as H approaches one half") {
  // At H = 1/2 the noise is a scaled Wiener process and g = 1/2 exactly.
  for (double hv : {0.505, 0.495}) {
    TimeGrid grid(1.0, 128);
    KernelBundle b = KernelBundle::build(grid, HurstParam(hv));
    // away from the interval ends: the limit is non-uniform there (at s = 0
    // only one side of the singular weight carries mass)
    double worst_g = 0.0, worst_ghat = 0.0;
    for (int i = 16; i <= 112; ++i) {
      worst_g = std::max(worst_g, std::abs(b.g().at(i, 128) - 0.5));
    }
    for (int i = 16; i <= 112; ++i) {
      worst_ghat = std::max(worst_ghat, std::abs(b.ghat().at(i, 128) - 2.0));
    }
    INFO("H=", hv, " max|g-1/2|=", worst_g, " max|ghat-2|=", worst_ghat);
    CHECK(worst_g < 0.02);
    CHECK(worst_ghat < 0.08);
    CHECK(b.bracket_total() == doctest::Approx(0.5).epsilon(0.02));
    CHECK(b.psi_at(0.5) == doctest::Approx(2.0).epsilon(0.02));
  }
}

TEST_CASE("solved columns satisfy the defining equation on a refined grid") {
  for (double hv : {0.7, 0.3}) {
    TimeGrid grid(1.0, 64);
    KernelBundle b = KernelBundle::build(grid, HurstParam(hv));
    const double res = int_diff_residual(b, 4, 0.1);
    INFO("H=", hv, " residual=", res);
    CHECK(res < 0.05);
  }
}

TEST_CASE("bracket and clock identities") {
  TimeGrid grid(1.0, 64);
  KernelBundle b = KernelBundle::build(grid, HurstParam(0.7));
  const auto& m = b.m();
  CHECK(m[0] == 0.0);
  for (int j = 1; j <= 64; ++j) CHECK(m[j] > m[j - 1]);
  // psi is the reciprocal clock speed by construction
  for (int i = 0; i <= 64; ++i) {
    CHECK(b.psi_diag()[i] * b.m_prime()[i] == doctest::Approx(1.0).epsilon(1e-14));
  }
  // psi(t,t) dm = dt integrates to the horizon
  const double total = integrate_in_measure(b.psi_diag(), m);
  INFO("integral of psi dm = ", total);
  CHECK(total == doctest::Approx(1.0).epsilon(5e-3));
  // clock speed matches the squared diagonal kernel away from the ends
  double worst = 0.0;
  for (int i = 8; i <= 56; ++i) {
    const double gii = b.g().at(i, i);
    worst = std::max(worst, std::abs(b.m_prime()[i] / (gii * gii) - 1.0));
  }
  INFO("max clock vs diagonal kernel mismatch = ", worst);
  CHECK(worst < 0.1);
}

TEST_CASE("prefix restriction equals a fresh shorter build") {
  TimeGrid grid(2.0, 32);
  HurstParam h(0.7);
  KernelBundle full = KernelBundle::build(grid, h);
  KernelBundle half = full.prefix(16);
  KernelBundle fresh = KernelBundle::build(TimeGrid(1.0, 16), h);
  CHECK(half.grid().horizon() == doctest::Approx(1.0).epsilon(1e-15));
  double worst = 0.0;
  for (int j = 0; j <= 16; ++j) {
    for (int i = 0; i <= j; ++i) {
      worst = std::max(worst, std::abs(half.g().at(i, j) - fresh.g().at(i, j)));
    }
  }
  INFO("max prefix g gap = ", worst);
  CHECK(worst < 1e-9);
  for (int i = 0; i <= 16; ++i) {
    CHECK(half.m()[i] == doctest::Approx(fresh.m()[i]).epsilon(1e-9));
    CHECK(half.psi_diag()[i] == doctest::Approx(fresh.psi_diag()[i]).epsilon(1e-9));
    CHECK(half.ghat().at(i, 16) ==
          doctest::Approx(fresh.ghat().at(i, 16)).epsilon(1e-9));
  }
  CHECK(full.prefix(32).g().at(16, 32) == full.g().at(16, 32));
  CHECK_THROWS_AS(full.prefix(0), std::invalid_argument);
  CHECK_THROWS_AS(full.prefix(33), std::invalid_argument);
}

TEST_CASE("flat fixture has an identity clock") {
  TimeGrid grid(3.0, 12);
  KernelBundle flat = KernelBundle::flat(grid);
  for (int i = 0; i <= 12; ++i) {
    CHECK(flat.m()[i] == doctest::Approx(grid.node(i)).epsilon(1e-14));
    CHECK(flat.psi_diag()[i] == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(flat.ghat().at(3, 7) == 1.0);
  CHECK(flat.g().at(3, 7) == 1.0);
}

TEST_CASE("disk cache round trip and invalidation") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::current_path() / "mfou-test-cache";
  fs::remove_all(dir);
  setenv("MFOU_CACHE_DIR", dir.c_str(), 1);

  TimeGrid grid(1.0, 16);
  HurstParam h(0.7);
  KernelBundle built = KernelBundle::load_or_build(grid, h);
  REQUIRE(fs::exists(dir));
  int files = 0;
  fs::path entry;
  for (const auto& e : fs::directory_iterator(dir)) {
    ++files;
    entry = e.path();
  }
  REQUIRE(files == 1);

  KernelBundle loaded = KernelBundle::load_or_build(grid, h);
  CHECK(loaded.g().raw() == built.g().raw());
  CHECK(loaded.ghat().raw() == built.ghat().raw());
  CHECK(loaded.m() == built.m());

  // a truncated entry is rebuilt, not trusted
  { std::ofstream trunc(entry, std::ios::binary | std::ios::trunc); trunc << "xx"; }
  KernelBundle rebuilt = KernelBundle::load_or_build(grid, h);
  CHECK(rebuilt.g().raw() == built.g().raw());

  // key identifies the table, hash is stable
  CHECK(built.cache_key() == loaded.cache_key());
  CHECK(built.cache_hash() == loaded.cache_hash());
  CHECK(built.cache_key() !=
        KernelBundle::flat(TimeGrid(1.0, 8)).cache_key());
  unsetenv("MFOU_CACHE_DIR");
  fs::remove_all(dir);
}

TEST_CASE("solver input validation") {
  TimeGrid grid(1.0, 8);
  CHECK_THROWS_AS(solve_g_direct(grid, HurstParam(0.7), 0), std::invalid_argument);
  CHECK_THROWS_AS(solve_g_direct(grid, HurstParam(0.7), 9), std::invalid_argument);
  CHECK_THROWS_AS(int_diff_residual(KernelBundle::flat(grid), 0, 0.1),
                  std::invalid_argument);
}
