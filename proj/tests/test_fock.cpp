#include <cmath>
#include <stdexcept>
#include <random>

#include <doctest.h>

#include "qgn/fock.hpp"

using namespace qgn;

TEST_CASE("thermal spectrum values and truncation") {
  CHECK(make_thermal(0.0) == Spectrum{1.0});
  Spectrum x = make_thermal(0.5);
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(x[3] == doctest::Approx(0.0625).epsilon(1e-14));
  CHECK(std::pow(0.5, double(x.size())) <= 1e-14);  // declared tail bound
  TruncationPolicy tight{1e-14, 8};
  CHECK(make_thermal(0.9, tight).size() == 8);  // cap respected
}

TEST_CASE("thermal energy and entropy") {
  CHECK(thermal_energy(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(thermal_entropy(0.0) == 0.0);
  CHECK(thermal_entropy(0.5) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(thermal_entropy(0.9) == doctest::Approx(3.250830).epsilon(1e-6));
}

TEST_CASE("entropy inversion") {
  CHECK(entropy_to_z(0.0) == 0.0);
  CHECK(entropy_to_z(2.0 * std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-10));
  double z = entropy_to_z(1.0);
  CHECK(z == doctest::Approx(0.3515804725592998).epsilon(1e-10));
  CHECK(std::abs(thermal_entropy(z) - 1.0) <= 1e-12);
  CHECK_THROWS_AS(entropy_to_z(-0.1), std::domain_error);
  for (double zz : {0.0, 0.1, 0.5, 0.9, 0.99})
    CHECK(entropy_to_z(thermal_entropy(zz)) == doctest::Approx(zz).epsilon(1e-10));
}

TEST_CASE("schatten norm") {
  CHECK(schatten_norm({1.0, 0.0, 0.0}, 7.0) == doctest::Approx(1.0));
  CHECK(schatten_norm({3.0, 4.0}, 2.0) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(schatten_norm(make_thermal(0.5), 2.0) == doctest::Approx(0.577350).epsilon(1e-6));
  CHECK_THROWS_AS(schatten_norm({1.0}, 0.5), std::domain_error);
  // absolute homogeneity
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  for (int t = 0; t < 20; ++t) {
    Spectrum x(10);
    for (double& v : x) v = uni(rng);
    double c = 1.0 + 10.0 * uni(rng);
    for (double p : {1.0, 1.5, 2.0, 5.0, 40.0}) {
      Spectrum cx = x;
      for (double& v : cx) v *= c;
      CHECK(schatten_norm(cx, p) ==
            doctest::Approx(c * schatten_norm(x, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("closed-form thermal norm") {
  CHECK(f_p_closed(0.0, 3.0) == doctest::Approx(1.0));
  CHECK(f_p_closed(0.5, 2.0) == doctest::Approx(0.5 / std::sqrt(0.75)).epsilon(1e-14));
  CHECK_THROWS_AS(f_p_closed(0.5, 1.0), std::domain_error);
  // agreement with the truncated spectrum
  for (double z : {0.1, 0.5, 0.9})
    for (double p : {1.1, 2.0, 5.0})
      CHECK(schatten_norm(make_thermal(z), p) ==
            doctest::Approx(f_p_closed(z, p)).epsilon(1e-13));
  // near-boundary asymptotics f_p(1-eps) ~ (eps/p)^... : f_p * p^(1/p) / eps^((p-1)/p) -> 1
  for (double p : {1.5, 2.0, 3.0}) {
    double eps = 1e-6;
    double ratio = f_p_closed(1.0 - eps, p) * std::pow(p, 1.0 / p) /
                   std::pow(eps, (p - 1.0) / p);
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("Renyi entropy") {
  CHECK(renyi_entropy({1.0}, 3.0) == doctest::Approx(0.0));
  CHECK(renyi_entropy(make_thermal(0.5), 2.0) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(renyi_entropy({0.5, 0.5}, 1.0), std::domain_error);
  // p -> 1 limit approaches the von Neumann entropy, error shrinking ~10x
  Spectrum x = {0.7, 0.3};
  double s = von_neumann_entropy(x);
  double e1 = std::abs(renyi_entropy(x, 1.01) - s);
  double e2 = std::abs(renyi_entropy(x, 1.001) - s);
  CHECK(e2 * 5.0 < e1);
  // monotone nonincreasing in p on random states
  std::mt19937_64 rng(2);
  std::exponential_distribution<double> expo(1.0);
  for (int t = 0; t < 20; ++t) {
    Spectrum s(12);
    double tot = 0.0;
    for (double& v : s) {
      v = expo(rng);
      tot += v;
    }
    for (double& v : s) v /= tot;
    double prev = 1e300;
    for (double p : {0.5, 0.9, 1.1, 2.0, 4.0}) {
      double sp = renyi_entropy(s, p);
      CHECK(sp <= prev + 1e-12);
      prev = sp;
    }
  }
}

TEST_CASE("von Neumann entropy") {
  CHECK(von_neumann_entropy({1.0, 0.0}) == doctest::Approx(0.0));
  CHECK(von_neumann_entropy({0.5, 0.5}) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(von_neumann_entropy(make_thermal(0.5)) == doctest::Approx(1.386294).epsilon(1e-6));
  CHECK_THROWS_AS(von_neumann_entropy({0.5, 0.4}), std::domain_error);
}

TEST_CASE("rearrangement and majorization") {
  CHECK(fock_rearrange({0.2, 0.5, 0.3}) == Spectrum{0.5, 0.3, 0.2});
  CHECK(fock_rearrange({0.5, 0.3, 0.2}) == Spectrum{0.5, 0.3, 0.2});
  Spectrum t = make_thermal(0.4);
  CHECK(fock_rearrange(t) == t);
  CHECK(majorizes({1.0, 0.0}, {0.5, 0.5}));
  CHECK(majorizes({0.3, 0.7}, {0.7, 0.3}));
  CHECK_FALSE(majorizes({0.5, 0.5}, {1.0, 0.0}));
  CHECK_THROWS_AS(majorizes({1.0}, {0.5}), std::domain_error);
  // norms are permutation invariant
  Spectrum x = {0.1, 0.4, 0.3, 0.2};
  for (double p : {1.0, 1.5, 2.0, 3.0})
    CHECK(schatten_norm(fock_rearrange(x), p) == doctest::Approx(schatten_norm(x, p)));
}
