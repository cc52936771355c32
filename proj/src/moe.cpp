#include "qgn/moe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qgn/norms.hpp"

namespace qgn {
namespace {

// amplifier tails decay like (1-1/kappa)^n; headroom over the default cap
const TruncationPolicy kMoePolicy{1e-14, 1024};

double entropy_of(const Spectrum& p) {
  double s = 0.0;
  for (double v : p)
    if (v > 0.0) s -= v * std::log(v);
  return s;
}

Spectrum temper(const std::vector<double>& v, double beta) {
  Spectrum p(v.size());
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    p[i] = std::pow(v[i], beta);
    s += p[i];
  }
  for (double& e : p) e /= s;
  return p;
}

Spectrum two_point(double u, std::size_t dim) {
  Spectrum p(dim, dim > 1 ? (1.0 - u) / double(dim - 1) : 0.0);
  p[0] = u;
  return p;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t x = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

MatchedState match_entropy_state(double target_S, std::size_t dim, StateFamily family,
                                 std::uint64_t seed) {
  if (dim == 0) throw std::domain_error("match_entropy_state: dim must be positive");
  const double smax = std::log(double(dim));
  if (target_S < 0.0 || target_S > smax + 1e-12)
    throw std::domain_error("match_entropy_state: target entropy outside [0, ln(dim)]");
  MatchedState state;
  state.target_entropy = target_S;
  state.family = family;
  state.seed = seed;
  if (target_S <= 0.0) {
    state.spectrum.assign(dim, 0.0);
    state.spectrum[0] = 1.0;
    state.achieved_entropy = 0.0;
    return state;
  }
  if (target_S >= smax) {
    state.spectrum.assign(dim, 1.0 / double(dim));
    state.achieved_entropy = smax;
    return state;
  }
  if (family == StateFamily::tempered_random) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> v(dim);
    for (double& e : v) e = uni(rng) + 1e-6;
    // entropy of v^beta decreases in beta; bracket then bisect
    double blo = 0.0, bhi = 1.0;
    while (entropy_of(temper(v, bhi)) > target_S) {
      blo = bhi;
      bhi *= 2.0;
      if (bhi > 1e6) throw std::runtime_error("match_entropy_state: tempering bracket failed");
    }
    for (int it = 0; it < 200; ++it) {
      double bm = 0.5 * (blo + bhi);
      if (entropy_of(temper(v, bm)) > target_S)
        blo = bm;
      else
        bhi = bm;
    }
    state.spectrum = temper(v, 0.5 * (blo + bhi));
  } else {
    // entropy of (u, equal rest) decreases in u on [1/dim, 1)
    double ulo = 1.0 / double(dim), uhi = 1.0 - 1e-15;
    for (int it = 0; it < 200; ++it) {
      double um = 0.5 * (ulo + uhi);
      if (entropy_of(two_point(um, dim)) > target_S)
        ulo = um;
      else
        uhi = um;
    }
    state.spectrum = two_point(0.5 * (ulo + uhi), dim);
  }
  state.achieved_entropy = entropy_of(state.spectrum);
  return state;
}

double output_entropy_gap(const ChannelSpec& spec, const MatchedState& rho, double z) {
  if (z <= 0.0 || z >= 1.0) throw std::domain_error("output_entropy_gap: z must lie in (0,1)");
  spec.validate();
  if (std::abs(rho.target_entropy - thermal_entropy(z)) > 1e-9)
    throw std::domain_error("output_entropy_gap: state entropy does not match thermal_entropy(z)");
  Spectrum out_rho = apply_channel(spec, rho.spectrum, kMoePolicy);
  Spectrum out_thermal = apply_channel(spec, make_thermal(z, kMoePolicy), kMoePolicy);
  return von_neumann_entropy(out_rho) - von_neumann_entropy(out_thermal);
}

RenyiChainResult renyi_chain_check(double kappa, double z, double q, std::size_t trials,
                                   std::uint64_t seed) {
  if (!(1.0 < q && q < 1.5)) throw std::domain_error("renyi_chain_check: need 1 < q < 3/2");
  if (kappa <= 1.0) throw std::domain_error("renyi_chain_check: need kappa > 1");
  if (z <= 0.0 || z >= 1.0) throw std::domain_error("renyi_chain_check: z must lie in (0,1)");
  RenyiChainResult result;
  const ChannelSpec amp = ChannelSpec::amplifier(kappa);
  auto zstar = [&](double p) { return *optimize_gaussian_z(amp, p, q).z_star; };
  // z_star(p) scan over (1, q); bracket the crossing with z, then bisect on p
  const int n_scan = 25;
  double plo = 0.0, phi = 0.0;
  for (int i = 0; i < n_scan; ++i) {
    double p = 1.0 + (q - 1.0) * (double(i) + 0.5) / double(n_scan);
    double zs = zstar(p);
    result.z_star_curve.emplace_back(p, zs);
    if (!result.found && i > 0) {
      auto [pp, zp] = result.z_star_curve[i - 1];
      if ((zp - z) * (zs - z) <= 0.0) {
        plo = pp;
        phi = p;
        result.found = true;
      }
    }
  }
  if (!result.found) return result;
  double p_found = 0.5 * (plo + phi), zs = zstar(p_found);
  for (int it = 0; it < 100 && std::abs(zs - z) > 1e-4; ++it) {
    if ((zstar(plo) - z) * (zs - z) <= 0.0)
      phi = p_found;
    else
      plo = p_found;
    p_found = 0.5 * (plo + phi);
    zs = zstar(p_found);
  }
  if (std::abs(zs - z) > 1e-4) {
    result.found = false;
    return result;
  }
  result.p_found = p_found;
  const double p = p_found;
  // chain constants from the thermal closed forms
  const double zq = thermal_image(amp, z);
  const double sq_thermal = q / (1.0 - q) * std::log(f_p_closed(zq, q));
  const double sp_thermal = p / (1.0 - p) * std::log(f_p_closed(z, p));
  const double coeff = (p - 1.0) / (q - 1.0) * q / p;
  const std::size_t dim = 64;
  double worst = 1e300;
  for (std::size_t t = 0; t <= trials; ++t) {
    Spectrum rho;
    if (t == 0) {
      rho = make_thermal(z, kMoePolicy);  // equality witness
    } else {
      std::mt19937_64 rng(derive_seed(seed, t));
      std::exponential_distribution<double> expo(1.0);
      rho.resize(dim);
      double s = 0.0;
      for (double& v : rho) {
        v = expo(rng) + 1e-12;
        s += v;
      }
      for (double& v : rho) v /= s;
    }
    Spectrum out = apply_channel(amp, rho, kMoePolicy);
    double lhs = renyi_entropy(out, q);
    double rhs = sq_thermal + coeff * (renyi_entropy(rho, p) - sp_thermal);
    double slack = lhs - rhs;
    if (slack < worst) {
      worst = slack;
      result.lhs = lhs;
      result.rhs = rhs;
    }
  }
  result.slack = worst;
  return result;
}

}  // namespace qgn
