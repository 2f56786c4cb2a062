#include <cmath>
#include <vector>

#include "doctest.h"
#include "mfou/design.hpp"
#include "mfou/kernel.hpp"
#include "mfou/laplace.hpp"
#include "mfou/process.hpp"

using namespace mfou;

TEST_CASE("transform at coefficient zero is one") {
  const TimeGrid grid(10.0, 200);
  KernelBundle kernel = KernelBundle::build(grid, HurstParam(0.7));
  PsiLaplaceResult det_route = psi_laplace(0.0, 1.0, kernel);
  CHECK(std::fabs(det_route.value - 1.0) < 1e-3);
  LaplaceResult ric = quadratic_laplace(0.0, 1.0,
                                        std::vector<double>(201, 1.0), kernel);
  CHECK(ric.value == 1.0);
  CHECK(ric.trace_part == 0.0);
  CHECK(ric.mean_part == 0.0);
}

TEST_CASE("Hamiltonian and Riccati routes agree on the centered functional") {
  const TimeGrid grid(10.0, 200);
  KernelBundle kernel = KernelBundle::build(grid, HurstParam(0.7));
  const std::vector<double> zero(201, 0.0);
  for (double a : {0.2, 0.05, -0.2}) {
    PsiLaplaceResult det_route = psi_laplace(a, 1.0, kernel);
    LaplaceResult ric = quadratic_laplace(a, 1.0, zero, kernel);
    CAPTURE(a);
    CHECK(ric.mean_part == 0.0);
    CHECK(det_route.log_value ==
          doctest::Approx(ric.log_value).epsilon(5e-3));
  }
}

TEST_CASE("spectral product representation matches the det route") {
  const TimeGrid grid(10.0, 200);
  KernelBundle kernel = KernelBundle::build(grid, HurstParam(0.7));
  const double a = 0.2, theta = 1.0;
  PsiLaplaceResult det_route = psi_laplace(a, theta, kernel);
  OperatorTable op = build_operator(theta, kernel);
  const double spectral = log_product_laplace(op.eigenvalues(), a);
  CHECK(std::fabs(det_route.log_value - spectral) <
        0.05 * std::fabs(det_route.log_value));
}

TEST_CASE("transform is decreasing and log-convex in the coefficient") {
  const TimeGrid grid(20.0, 200);
  KernelBundle kernel = KernelBundle::build(grid, HurstParam(0.7));
  InputSignal sig = InputSignal::constant(kernel, 1.0);
  std::vector<double> logs;
  for (double mu : {1.0, 2.0, 3.0}) {
    logs.push_back(gamma_z_laplace(mu, 1.0, sig.v, kernel).log_value);
  }
  CHECK(logs[0] > logs[1]);
  CHECK(logs[1] > logs[2]);
  // log L is convex in the coefficient.
  CHECK(logs[1] <= 0.5 * (logs[0] + logs[2]) + 1e-12);
}

TEST_CASE("unnormalized and normalized transforms are consistent wrappers") {
  const TimeGrid grid(20.0, 200);
  KernelBundle kernel = KernelBundle::build(grid, HurstParam(0.7));
  InputSignal sig = InputSignal::constant(kernel, 1.0);
  LaplaceResult kat = kat_functional(0.05, 1.0, sig.v, kernel);
  LaplaceResult quad = quadratic_laplace(0.05, 1.0, sig.v, kernel);
  CHECK(kat.log_value == quad.log_value);
  LaplaceResult gz = gamma_z_laplace(1.0, 1.0, sig.v, kernel);
  LaplaceResult quad_scaled = quadratic_laplace(1.0 / 20.0, 1.0, sig.v,
                                                kernel);
  CHECK(gz.log_value == quad_scaled.log_value);
}

TEST_CASE("constant drift transform has the expected shape") {
  const TimeGrid grid(50.0, 500);
  KernelBundle kernel = KernelBundle::build(grid, HurstParam(0.7));
  LaplaceResult at_zero = constant_drift_laplace(0.0, 1.0, 1.0, kernel);
  CHECK(at_zero.value == 1.0);
  LaplaceResult res = constant_drift_laplace(1.0, 1.0, 1.0, kernel);
  CHECK(res.trace_part > 0.0);
  CHECK(res.mean_part > 0.0);
  CHECK(res.value > 0.0);
  CHECK(res.value < 1.0);
}

TEST_CASE("long-horizon rate closed form") {
  // mu/theta^2 + theta/2 - sqrt(theta^2/4 + mu/2)
  CHECK(kat_limit(1.0, 1.0) ==
        doctest::Approx(0.6339745962155614).epsilon(1e-12));
  CHECK(kat_limit(2.0, 1.0) ==
        doctest::Approx(1.3819660112501051).epsilon(1e-12));
  CHECK_THROWS_AS(kat_limit(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(kat_limit(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("det trajectory settles into a constant exponential rate") {
  const TimeGrid grid(100.0, 1000);
  KernelBundle kernel = KernelBundle::build(grid, HurstParam(0.7));
  const double a = -0.3, theta = 1.0;
  PsiLaplaceResult res = psi_laplace(a, theta, kernel);
  // Least squares of log det Psi1 against t on [50, 100].
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  int count = 0;
  for (int i = 500; i <= 1000; ++i) {
    const double x = grid.node(i);
    const double y = res.log_det[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    ++count;
  }
  const double varx = sxx - sx * sx / count;
  const double covxy = sxy - sx * sy / count;
  const double vary = syy - sy * sy / count;
  const double slope = covxy / varx;
  const double r2 = (covxy * covxy) / (varx * vary);
  // Growth rate 2 x1 with x1 = sqrt(theta^2/4 + a/2).
  const double rate = 2.0 * std::sqrt(0.25 + 0.5 * a);
  CHECK(r2 > 0.999);
  CHECK(slope == doctest::Approx(rate).epsilon(0.05));
}

TEST_CASE("non-integrable coefficient is rejected") {
  const TimeGrid grid(10.0, 200);
  KernelBundle kernel = KernelBundle::build(grid, HurstParam(0.7));
  // Below -theta^2/2 the Hamiltonian flow oscillates and det Psi1 crosses 0.
  CHECK_THROWS_AS(psi_laplace(-0.6, 1.0, kernel), std::invalid_argument);
  CHECK_THROWS_AS(psi_laplace(0.2, -1.0, kernel), std::invalid_argument);
}
