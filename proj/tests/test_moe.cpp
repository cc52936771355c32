#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "qgn/moe.hpp"

using namespace qgn;

TEST_CASE("entropy-matched state generator") {
  MatchedState point = match_entropy_state(0.0, 16, StateFamily::tempered_random, 7);
  CHECK(point.spectrum[0] == 1.0);
  CHECK(point.achieved_entropy == 0.0);
  MatchedState flat = match_entropy_state(std::log(16.0), 16, StateFamily::two_point_mix, 7);
  for (double v : flat.spectrum) CHECK(v == doctest::Approx(1.0 / 16.0));
  for (StateFamily family : {StateFamily::tempered_random, StateFamily::two_point_mix}) {
    MatchedState s = match_entropy_state(1.0, 32, family, 7);
    CHECK(std::abs(s.achieved_entropy - 1.0) <= 1e-9);
    double total = 0.0;
    for (double v : s.spectrum) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(match_entropy_state(-0.1, 16, StateFamily::tempered_random, 7),
                  std::domain_error);
  CHECK_THROWS_AS(match_entropy_state(3.0, 16, StateFamily::tempered_random, 7),
                  std::domain_error);
  // deterministic given the seed
  MatchedState a = match_entropy_state(1.2, 24, StateFamily::tempered_random, 11);
  MatchedState b = match_entropy_state(1.2, 24, StateFamily::tempered_random, 11);
  CHECK(a.spectrum == b.spectrum);
}

TEST_CASE("output entropy gap") {
  const double z = 0.3;
  MatchedState thermal;
  thermal.spectrum = make_thermal(z);
  thermal.target_entropy = thermal_entropy(z);
  thermal.achieved_entropy = thermal.target_entropy;
  const ChannelSpec channels[] = {ChannelSpec::attenuator(0.5), ChannelSpec::amplifier(2.0),
                                  ChannelSpec::composite(0.7, 1.5)};
  for (const auto& spec : channels)
    CHECK(std::abs(output_entropy_gap(spec, thermal, z)) <= 1e-10);

  MatchedState wrong = match_entropy_state(0.4, 32, StateFamily::two_point_mix, 3);
  CHECK_THROWS_AS(output_entropy_gap(channels[0], wrong, z), std::domain_error);
}

TEST_CASE("gap nonnegative over the channel grid") {
  const double lambdas[] = {0.3, 0.5, 0.8};
  const double kappas[] = {1.5, 2.0, 4.0};
  std::vector<ChannelSpec> channels;
  for (double l : lambdas) channels.push_back(ChannelSpec::attenuator(l));
  for (double k : kappas) channels.push_back(ChannelSpec::amplifier(k));
  channels.push_back(ChannelSpec::composite(0.7, 1.5));
  for (const auto& spec : channels)
    for (double z : {0.1, 0.3, 0.6}) {
      double target = thermal_entropy(z);
      for (std::uint64_t t = 0; t < 5; ++t) {
        MatchedState rho =
            match_entropy_state(target, 64, StateFamily::tempered_random, derive_seed(42, t));
        CHECK(output_entropy_gap(spec, rho, z) >= -1e-8);
      }
      MatchedState mix = match_entropy_state(target, 64, StateFamily::two_point_mix, 42);
      CHECK(output_entropy_gap(spec, mix, z) >= -1e-8);
    }
}

TEST_CASE("Renyi chain for the amplifier") {
  RenyiChainResult res = renyi_chain_check(2.0, 0.3, 1.3, 50, 42);
  REQUIRE(res.found);
  CHECK(res.p_found > 1.0);
  CHECK(res.p_found < 1.3);
  CHECK(res.slack >= -1e-7);
  CHECK(res.slack <= 1e-4);  // the thermal witness pins the worst slack near zero
  CHECK_FALSE(res.z_star_curve.empty());
  CHECK_THROWS_AS(renyi_chain_check(2.0, 0.3, 1.7, 10, 42), std::domain_error);
  CHECK_THROWS_AS(renyi_chain_check(0.9, 0.3, 1.3, 10, 42), std::domain_error);
}

TEST_CASE("chain approaches the entropy statement as q drops to 1") {
  // Renyi entropies of the amplified thermal output approach the von Neumann
  // value, with shrinking error along the sweep
  const double z = 0.3;
  Spectrum out = apply_channel(ChannelSpec::amplifier(2.0), make_thermal(z),
                               TruncationPolicy{1e-14, 1024});
  double s = von_neumann_entropy(out);
  double prev = 1e300;
  for (double q : {1.4, 1.2, 1.1, 1.05}) {
    double err = std::abs(renyi_entropy(out, q) - s);
    CHECK(err < prev);
    prev = err;
    RenyiChainResult res = renyi_chain_check(2.0, z, q, 10, 42);
    CHECK(res.found);
    CHECK(res.slack >= -1e-7);
  }
}
