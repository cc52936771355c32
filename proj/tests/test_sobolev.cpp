#include <cmath>
#include <stdexcept>
#include <random>

#include <doctest.h>

#include "qgn/fock.hpp"
#include "qgn/sobolev.hpp"

using namespace qgn;

namespace {

Spectrum random_admissible(std::mt19937_64& rng, std::size_t dim, double a) {
  std::exponential_distribution<double> expo(1.0);
  Spectrum p(dim);
  double s = 0.0;
  for (double& v : p) {
    v = expo(rng) + 1e-12;
    s += v;
  }
  Spectrum x(dim);
  for (std::size_t n = 0; n < dim; ++n) x[n] = std::pow(p[n] / s, a);
  return x;
}

}  // namespace

TEST_CASE("mu values and sign") {
  CHECK(mu(1.0, 0.5) == 0.0);
  CHECK(mu(0.5, 0.5) < 0.0);
  CHECK(mu(0.25, 0.5) == doctest::Approx(1.125 / std::log(0.0625)).epsilon(1e-12));
  for (int i = 1; i < 50; ++i)
    for (int j = 1; j < 50; ++j) CHECK(mu(i / 50.0, j / 50.0) < 0.0);
}

TEST_CASE("h and nu") {
  CHECK(sobolev_h(1.0, 0.3) == doctest::Approx(0.0));
  CHECK(nu(0.3, 0.4) < 0.0);
  CHECK(nu(0.49, 0.5) == doctest::Approx(mu(0.7, 0.5)).epsilon(1e-12));
  // strictly increasing in s
  for (double a : {0.2, 0.5, 0.8}) {
    double prev = -1e300;
    for (int i = 1; i < 1000; ++i) {
      double v = nu(i / 1000.0, a);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("derivative-of-norm functional") {
  Spectrum vac = {1.0, 0.0, 0.0};
  CHECK(F_a(vac, 0.5) == doctest::Approx(0.0));
  // two-level at a = 1/2: F = x1 x0 - x1^2
  double x0 = std::sqrt(0.7), x1 = std::sqrt(0.3);
  CHECK(F_a({x0, x1}, 0.5) == doctest::Approx(x1 * x0 - x1 * x1).epsilon(1e-12));
  CHECK_THROWS_AS(F_a({0.9, 0.9}, 0.5), std::domain_error);
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> dims(2, 64);
  for (int t = 0; t < 300; ++t)
    for (double a : {0.25, 0.5, 0.75})
      CHECK(F_a(random_admissible(rng, dims(rng), a), a) <= 1.0 - a + 1e-9);
}

TEST_CASE("power entropy") {
  CHECK(S_a({1.0, 0.0}, 0.5) == doctest::Approx(0.0));
  double r = std::pow(2.0, -0.5);
  CHECK(S_a({r, r}, 0.5) == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  // thermal identity: the reference spectrum has entropy S(omega_xi)
  for (double z : {0.2, 0.5})
    for (double a : {0.3, 0.6}) {
      double xi = std::pow(z, 1.0 / a);
      CHECK(S_a(thermal_reference_spectrum(z, a), a) ==
            doctest::Approx(thermal_entropy(xi)).epsilon(1e-10));
    }
}

TEST_CASE("functional and margin") {
  Spectrum vac = {1.0, 0.0};
  CHECK(script_F(0.3, 0.5, vac) == doctest::Approx(0.0));
  for (double z : {0.1, 0.3, 0.6})
    for (double a : {0.25, 0.5, 0.75}) {
      Spectrum ref = thermal_reference_spectrum(z, a);
      CHECK(script_F(z, a, ref) == doctest::Approx(thermal_reference_value(z, a)).epsilon(1e-10));
      CHECK(std::abs(logsobolev_margin(z, a, ref)) <= 1e-10);
      CHECK(logsobolev_margin(z, a, vac) >= -1e-12);  // reference value is nonnegative
    }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dims(2, 32);
  for (int t = 0; t < 500; ++t)
    for (double a : {0.25, 0.5, 0.75}) {
      Spectrum x = random_admissible(rng, dims(rng), a);
      for (double z : {0.1, 0.3, 0.6}) CHECK(logsobolev_margin(z, a, x) >= -1e-9);
    }
}

TEST_CASE("matched-entropy thermal comparison") {
  // F_a(x) <= F_a(thermal with the same power entropy)
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    double a = 0.5;
    Spectrum x = random_admissible(rng, 16, a);
    double s = S_a(x, a);
    if (s <= 1e-6) continue;
    double xi = entropy_to_z(s);
    Spectrum thermal = thermal_reference_spectrum(std::pow(xi, a), a);
    CHECK(F_a(x, a) <= F_a(thermal, a) + 1e-9);
  }
}

TEST_CASE("flow derivative identity") {
  CHECK(F_a_fd_check({1.0}, 0.5, 1e-5) <= 1e-12);
  Spectrum thermal = thermal_reference_spectrum(0.3, 0.5);
  CHECK(F_a_fd_check(thermal, 0.5, 1e-5) <= 1e-8);
  std::mt19937_64 rng(9);
  for (int t = 0; t < 20; ++t)
    CHECK(F_a_fd_check(random_admissible(rng, 16, 0.5), 0.5, 1e-5) <= 1e-7);
  // halving dt quarters the residual (second order), within a factor of 2
  Spectrum x = random_admissible(rng, 12, 0.5);
  double r1 = F_a_fd_check(x, 0.5, 2e-4);
  double r2 = F_a_fd_check(x, 0.5, 1e-4);
  CHECK(r2 <= r1 / 4.0 * 2.0);
  CHECK(r2 >= r1 / 4.0 / 2.0);
  CHECK_THROWS_AS(F_a_fd_check(x, 0.5, 0.1), std::domain_error);
}

TEST_CASE("entropy derivative identity") {
  CHECK(dlnnorm_da_check({0.37}, 0.5, 1e-5) <= 1e-12);
  CHECK(dlnnorm_da_check({1.0, 1.0}, 0.5, 1e-5) <= 1e-10);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> uni(0.1, 2.0);
  for (int t = 0; t < 20; ++t) {
    Spectrum x(8);
    for (double& v : x) v = uni(rng);
    CHECK(dlnnorm_da_check(x, 0.5, 1e-5) <= 1e-7);
  }
}

TEST_CASE("shooting solve") {
  ShootingResult shot = ode_shoot(0.6, 1.5, 2.5, 1e-9);
  CHECK(shot.converged);
  CHECK(shot.residual <= 1e-9);
  CHECK(shot.z0 > 0.0);
  CHECK(shot.z0 < 1.0);
  REQUIRE(shot.trajectory.size() >= 3);
  CHECK(shot.trajectory.front()[1] == doctest::Approx(1.0 / 1.5));
  for (std::size_t i = 1; i < shot.trajectory.size(); ++i) {
    CHECK(shot.trajectory[i][1] < shot.trajectory[i - 1][1]);    // a strictly decreasing
    CHECK(shot.trajectory[i][2] <= shot.trajectory[i - 1][2]);   // z nonincreasing
  }
  CHECK_THROWS_AS(ode_shoot(0.6, 2.5, 1.5, 1e-9), std::domain_error);
  CHECK_THROWS_AS(ode_shoot(1.2, 1.5, 2.5, 1e-9), std::domain_error);
}
