#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <random>

#include <doctest.h>

#include "qgn/channels.hpp"

using namespace qgn;

namespace {

Spectrum random_state(std::mt19937_64& rng, std::size_t dim) {
  std::exponential_distribution<double> expo(1.0);
  Spectrum x(dim);
  double s = 0.0;
  for (double& v : x) {
    v = expo(rng);
    s += v;
  }
  for (double& v : x) v /= s;
  return x;
}

KernelMatrix kernel_product(const KernelMatrix& A, const KernelMatrix& B) {
  REQUIRE(A.in_dim == B.out_dim);
  KernelMatrix P;
  P.in_dim = B.in_dim;
  P.out_dim = A.out_dim;
  P.entries.assign(P.out_dim * P.in_dim, 0.0);
  for (std::size_t n = 0; n < P.out_dim; ++n)
    for (std::size_t j = 0; j < A.in_dim; ++j)
      for (std::size_t k = 0; k < P.in_dim; ++k) P.at(n, k) += A.at(n, j) * B.at(j, k);
  return P;
}

}  // namespace

TEST_CASE("attenuator kernel entries") {
  KernelMatrix id = attenuator_kernel(1.0, 5);
  for (std::size_t n = 0; n < 5; ++n)
    for (std::size_t k = 0; k < 5; ++k) CHECK(id.at(n, k) == (n == k ? 1.0 : 0.0));
  KernelMatrix half = attenuator_kernel(0.5, 4);
  CHECK(half.at(0, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(half.at(1, 1) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(attenuator_kernel(0.25, 4).at(1, 2) == doctest::Approx(0.375).epsilon(1e-14));
  KernelMatrix off = attenuator_kernel(0.0, 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(off.at(0, k) == 1.0);  // point mass at 0
  CHECK_THROWS_AS(attenuator_kernel(1.5, 4), std::domain_error);
  // column stochasticity and upper-triangularity over the lambda grid
  for (int i = 0; i <= 10; ++i) {
    KernelMatrix K = attenuator_kernel(0.1 * i, 32);
    for (std::size_t k = 0; k < 32; ++k) {
      CHECK(std::abs(K.column_mass(k) - 1.0) <= 1e-12);
      for (std::size_t n = k + 1; n < 32; ++n) CHECK(K.at(n, k) == 0.0);
    }
  }
}

TEST_CASE("amplifier kernel entries") {
  KernelMatrix id = amplifier_kernel_fixed(1.0, 4, 4);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t k = 0; k < 4; ++k) CHECK(id.at(n, k) == doctest::Approx(n == k ? 1.0 : 0.0));
  KernelMatrix two = amplifier_kernel(2.0, 4);
  for (std::size_t n = 0; n < 6; ++n)
    CHECK(two.at(n, 0) == doctest::Approx(std::pow(0.5, double(n + 1))).epsilon(1e-13));
  CHECK(two.at(2, 1) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(two.at(0, 1) == 0.0);  // lower-triangular
  CHECK(two.min_column_mass() >= 1.0 - 1e-14);
  CHECK_THROWS_AS(amplifier_kernel(0.5, 4), std::domain_error);
}

TEST_CASE("apply and thermal covariance") {
  Spectrum one_photon = {0.0, 1.0};
  Spectrum thinned = qgn::apply(attenuator_kernel(0.5, 2), one_photon);
  CHECK(thinned[0] == doctest::Approx(0.5));
  CHECK(thinned[1] == doctest::Approx(0.5));
  for (double z : {0.1, 0.5, 0.9})
    for (double lambda : {0.2, 0.7}) {
      Spectrum x = make_thermal(z);
      Spectrum out = qgn::apply(attenuator_kernel(lambda, x.size()), x);
      double zp = thermal_image(ChannelSpec::attenuator(lambda), z);
      for (std::size_t n = 0; n < out.size(); ++n)
        CHECK(out[n] == doctest::Approx((1.0 - zp) * std::pow(zp, double(n))).epsilon(1e-9));
      // trace preserved
      double tr_in = 0.0, tr_out = 0.0;
      for (double v : x) tr_in += v;
      for (double v : out) tr_out += v;
      CHECK(tr_out == doctest::Approx(tr_in).epsilon(1e-12));
    }
}

TEST_CASE("semigroup action") {
  Spectrum x = {0.0, 1.0};
  CHECK(semigroup_apply(0.0, x) == x);
  Spectrum y = semigroup_apply(std::log(2.0), x);
  CHECK(y[0] == doctest::Approx(0.5));
  CHECK(y[1] == doctest::Approx(0.5));
  CHECK_THROWS_AS(semigroup_apply(-0.1, x), std::domain_error);
  std::mt19937_64 rng(3);
  Spectrum r = random_state(rng, 16);
  Spectrum ab = semigroup_apply(0.3, semigroup_apply(0.5, r));
  Spectrum once = semigroup_apply(0.8, r);
  for (std::size_t n = 0; n < r.size(); ++n)
    CHECK(ab[n] == doctest::Approx(once[n]).epsilon(1e-12));
  // kernel-level semigroup law: K(l1) K(l2) = K(l1 l2)
  KernelMatrix prod = kernel_product(attenuator_kernel(0.6, 12), attenuator_kernel(0.5, 12));
  KernelMatrix direct = attenuator_kernel(0.3, 12);
  for (std::size_t n = 0; n < 12; ++n)
    for (std::size_t k = 0; k < 12; ++k)
      CHECK(std::abs(prod.at(n, k) - direct.at(n, k)) <= 1e-12);
}

TEST_CASE("thermal parameter images") {
  CHECK(thermal_image(ChannelSpec::attenuator(1.0), 0.37) == doctest::Approx(0.37));
  CHECK(thermal_image(ChannelSpec::attenuator(0.5), 0.5) == doctest::Approx(1.0 / 3.0));
  CHECK(thermal_image(ChannelSpec::amplifier(2.0), 0.0) == doctest::Approx(0.5));
  CHECK(thermal_image(ChannelSpec::composite(0.5, 2.0), 0.5) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("duality residual") {
  std::mt19937_64 rng(4);
  Spectrum x = random_state(rng, 16), y = random_state(rng, 16);
  CHECK(duality_residual(x, y, 1.0) <= 1e-14);
  Spectrum vac = {1.0};
  CHECK(duality_residual(vac, vac, 2.0) <= 1e-14);
  for (int t = 0; t < 10; ++t) {
    Spectrum a = random_state(rng, 64), b = random_state(rng, 64);
    CHECK(duality_residual(a, b, 3.0) <= 1e-10);
  }
}

TEST_CASE("composite channel") {
  Spectrum x = {0.3, 0.3, 0.4};
  Spectrum same = apply_channel(ChannelSpec::composite(1.0, 1.0), x);
  for (std::size_t n = 0; n < x.size(); ++n) CHECK(same[n] == doctest::Approx(x[n]));
  ChannelSpec comp = ChannelSpec::composite(0.5, 2.0);
  Spectrum out = apply_channel(comp, make_thermal(0.5));
  double zp = thermal_image(comp, 0.5);
  CHECK(zp == doctest::Approx(2.0 / 3.0));
  for (std::size_t n = 0; n < std::min<std::size_t>(out.size(), 40); ++n)
    CHECK(out[n] == doctest::Approx((1.0 - zp) * std::pow(zp, double(n))).epsilon(1e-9));
}

TEST_CASE("rearrangement does not decrease output norms") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    Spectrum x = random_state(rng, 12);
    Spectrum sorted = fock_rearrange(x);
    Spectrum shuffled = x;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (double q : {1.5, 2.0, 3.0}) {
      KernelMatrix K = attenuator_kernel(0.6, 12);
      CHECK(schatten_norm(qgn::apply(K, sorted), q) >= schatten_norm(qgn::apply(K, shuffled), q) - 1e-12);
    }
  }
}

TEST_CASE("thinning") {
  Spectrum off = thinning({0.2, 0.3, 0.5}, 0.0);
  CHECK(off[0] == doctest::Approx(1.0));
  Spectrum two = thinning({0.0, 0.0, 1.0}, 0.5);
  CHECK(two[0] == doctest::Approx(0.25));
  CHECK(two[1] == doctest::Approx(0.5));
  CHECK(two[2] == doctest::Approx(0.25));
  CHECK_THROWS_AS(thinning({0.5, 0.4}, 0.5), std::domain_error);
  Spectrum t = thinning(make_thermal(0.6), 0.5);
  double zp = thermal_image(ChannelSpec::attenuator(0.5), 0.6);
  for (std::size_t n = 0; n < 10; ++n)
    CHECK(t[n] == doctest::Approx((1.0 - zp) * std::pow(zp, double(n))).epsilon(1e-9));
}
