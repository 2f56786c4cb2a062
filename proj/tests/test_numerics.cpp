#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mfou/grid.hpp"
#include "mfou/numerics.hpp"

using namespace mfou;

TEST_CASE("trapezoid in measure is exact for linear integrands") {
  const int n = 10;
  std::vector<double> f(n + 1), m(n + 1);
  for (int i = 0; i <= n; ++i) {
    f[i] = i / double(n);
    m[i] = i / double(n);
  }
  CHECK(integrate_in_measure(f, m) == doctest::Approx(0.5).epsilon(1e-15));
  // constant integrand picks up the total mass regardless of the clock
  std::vector<double> ones(n + 1, 1.0), msq(n + 1);
  for (int i = 0; i <= n; ++i) msq[i] = (i / double(n)) * (i / double(n));
  CHECK(integrate_in_measure(ones, msq) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("weighted integral matches the direct trapezoid") {
  TimeGrid grid(1.0, 8);
  std::vector<double> f(9), m(9);
  for (int i = 0; i <= 8; ++i) {
    const double t = grid.node(i);
    f[i] = std::cos(t);
    m[i] = t * t;
  }
  MeasureWeights w(grid, m);
  CHECK(integrate(f, w) ==
        doctest::Approx(integrate_in_measure(f, m)).epsilon(1e-14));
  std::vector<double> bad(5, 0.0);
  CHECK_THROWS_AS(integrate(bad, w), std::invalid_argument);
}

TEST_CASE("central differences are exact for quadratics in the interior") {
  const int n = 10;
  const double dt = 0.1;
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = (i * dt) * (i * dt);
  auto d = central_difference(v, dt);
  for (int i = 1; i < n; ++i) {
    CHECK(d[i] == doctest::Approx(2.0 * i * dt).epsilon(1e-12));
  }
  // ends are first-order one-sided by construction
  CHECK(d[0] == doctest::Approx(dt).epsilon(1e-12));
  CHECK(d[n] == doctest::Approx(2.0 - dt).epsilon(1e-12));
}

TEST_CASE("measure-clock RK4 integrates exponential decay at fourth order") {
  // dY/dm = -Y with m(t) = t: Y(1) = exp(-1)
  const double target = 0.36787944117144233;
  auto rhs = [](double, double y) { return -y; };
  auto run = [&](int n) {
    TimeGrid grid(1.0, n);
    std::vector<double> mp(n + 1, 1.0);
    return ode_step_linear(1.0, rhs, grid, mp, "decay").back();
  };
  const double e10 = std::abs(run(10) - target);
  const double e20 = std::abs(run(20) - target);
  CHECK(e20 < 5e-8);
  CHECK(e10 / e20 > 8.0);  // fourth order: halving the step gains ~16x
}

TEST_CASE("measure-clock RK4 follows a nonuniform clock") {
  // dY/dm = -Y with m(t) = t^2: Y(t) = exp(-t^2)
  const int n = 40;
  TimeGrid grid(1.0, n);
  std::vector<double> mp(n + 1);
  for (int i = 0; i <= n; ++i) mp[i] = 2.0 * grid.node(i);
  auto rhs = [](double, double y) { return -y; };
  const double got = ode_step_linear(1.0, rhs, grid, mp, "clock").back();
  CHECK(got == doctest::Approx(0.36787944117144233).epsilon(1e-7));
}

TEST_CASE("measure-clock RK4 handles matrix states and reports blowups") {
  TimeGrid grid(1.0, 20);
  std::vector<double> mp(21, 1.0);
  Eigen::Matrix2d a;
  a << 0.0, 1.0, -1.0, 0.0;  // rotation generator: norm preserved
  auto rhs = [&](double, const Eigen::Vector2d& y) -> Eigen::Vector2d {
    return a * y;
  };
  Eigen::Vector2d y0(1.0, 0.0);
  auto traj = ode_step_linear(y0, rhs, grid, mp, "rotation");
  REQUIRE(static_cast<int>(traj.values.size()) == 21);
  CHECK(traj.back().norm() == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(traj.back()[0] == doctest::Approx(std::cos(1.0)).epsilon(1e-7));

  auto bad = [](double, double y) { return y * y * 1e30; };
  CHECK_THROWS_AS(
      ode_step_linear(1.0, bad, grid, std::vector<double>(21, 1.0), "blow"),
      std::runtime_error);
}

TEST_CASE("power iteration finds the top eigenpair of a symmetric matrix") {
  Eigen::MatrixXd a(2, 2);
  a << 2.0, 1.0, 1.0, 2.0;
  auto top = top_eigenvalue(a);
  CHECK(top.value == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(std::abs(top.vector[0]) ==
        doctest::Approx(0.7071067811865476).epsilon(1e-6));
  CHECK(std::abs(top.vector[1]) ==
        doctest::Approx(0.7071067811865476).epsilon(1e-6));
}

TEST_CASE("power iteration agrees with the dense spectrum on a PSD matrix") {
  // deterministic full-rank test matrix
  const int n = 12;
  Eigen::MatrixXd b(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) b(i, j) = std::sin(3.0 * i + 5.0 * j + 1.0);
  }
  Eigen::MatrixXd a = b.transpose() * b;
  auto top = top_eigenvalue(a);
  Eigen::VectorXd spec = symmetric_spectrum(a);
  CHECK(top.value == doctest::Approx(spec[n - 1]).epsilon(1e-9));
  // eigenvector residual converges slower than the value; gap-limited
  CHECK((a * top.vector - top.value * top.vector).norm() < 1e-4 * top.value);
}

TEST_CASE("eigen solvers reject malformed input") {
  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(top_eigenvalue(rect), std::invalid_argument);
  CHECK_THROWS_AS(symmetric_spectrum(rect), std::invalid_argument);
  Eigen::MatrixXd asym(2, 2);
  asym << 0.0, 1.0, -1.0, 0.0;
  CHECK_THROWS_AS(top_eigenvalue(asym), std::invalid_argument);
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(3, 3);
  CHECK(top_eigenvalue(zero).value == 0.0);
}

TEST_CASE("node interpolation clamps and interpolates") {
  TimeGrid grid(1.0, 2);
  std::vector<double> v{0.0, 1.0, 4.0};
  CHECK(interp_nodes(grid, v, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(interp_nodes(grid, v, 0.75) == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(interp_nodes(grid, v, -1.0) == 0.0);
  CHECK(interp_nodes(grid, v, 2.0) == 4.0);
}
