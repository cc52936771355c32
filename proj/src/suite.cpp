#include "qgn/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "qgn/channels.hpp"
#include "qgn/fock.hpp"
#include "qgn/kkt.hpp"
#include "qgn/moe.hpp"
#include "qgn/norms.hpp"
#include "qgn/sobolev.hpp"

namespace qgn {
namespace {

struct Check {
  bool ok = true;
  std::ostringstream msg;

  void fail(const std::string& what) {
    if (!ok) msg << "; ";
    msg << what;
    ok = false;
  }
  void note(const std::string& what) {
    if (ok && msg.tellp() == 0) msg << what;
  }
};

std::size_t scaled(std::size_t n, double scale) {
  return std::max<std::size_t>(1, std::size_t(double(n) * scale + 0.5));
}

Spectrum random_prob(std::mt19937_64& rng, std::size_t dim) {
  std::exponential_distribution<double> expo(1.0);
  Spectrum p(dim);
  double s = 0.0;
  for (double& v : p) {
    v = expo(rng) + 1e-12;
    s += v;
  }
  for (double& v : p) v /= s;
  return p;
}

void criterion_kernels(Check& c, double) {
  for (int i = 1; i <= 9; ++i) {
    double lambda = 0.1 * i;
    KernelMatrix K = attenuator_kernel(lambda, 64);
    for (std::size_t k = 0; k < 64; ++k)
      if (std::abs(K.column_mass(k) - 1.0) > 1e-12) {
        c.fail("column mass off at lambda=" + std::to_string(lambda));
        return;
      }
    for (int j = 1; j <= 9; ++j) {
      double z = 0.1 * j;
      Spectrum x = make_thermal(z);
      Spectrum out = qgn::apply(attenuator_kernel(lambda, x.size()), x);
      double zp = thermal_image(ChannelSpec::attenuator(lambda), z);
      double err = 0.0;
      for (std::size_t n = 0; n < out.size(); ++n)
        err = std::max(err, std::abs(out[n] - (1.0 - zp) * std::pow(zp, double(n))));
      if (err > 1e-10) {
        c.fail("thermal image linf err " + std::to_string(err));
        return;
      }
    }
  }
  c.note("81 (lambda,z) pairs, linf within 1e-10");
}

void criterion_duality(Check& c, double scale, std::uint64_t seed) {
  std::size_t pairs = scaled(100, scale);
  double worst = 0.0;
  for (double kappa : {1.5, 2.0, 4.0}) {
    std::mt19937_64 rng(derive_seed(seed, std::uint64_t(kappa * 1000)));
    for (std::size_t t = 0; t < pairs; ++t) {
      Spectrum x = random_prob(rng, 64), y = random_prob(rng, 64);
      worst = std::max(worst, duality_residual(x, y, kappa));
    }
  }
  if (worst > 1e-10) c.fail("max residual " + std::to_string(worst));
  c.note("max residual " + std::to_string(worst));
}

void criterion_logsobolev(Check& c, double scale, std::uint64_t seed, bool fa_bound) {
  const double zs[] = {0.1, 0.3, 0.6};
  const double as[] = {0.25, 0.5, 0.75};
  std::size_t n_spectra = scaled(10000, scale);
  std::mt19937_64 rng(derive_seed(seed, fa_bound ? 4 : 3));
  std::uniform_int_distribution<std::size_t> dims(2, 32);
  double worst_margin = 1e300, worst_fa = -1e300;
  for (std::size_t t = 0; t < n_spectra; ++t) {
    Spectrum p = random_prob(rng, dims(rng));
    for (double a : as) {
      Spectrum x(p.size());
      for (std::size_t n = 0; n < p.size(); ++n) x[n] = std::pow(p[n], a);
      if (fa_bound) {
        double fa = F_a(x, a);
        worst_fa = std::max(worst_fa, fa - (1.0 - a));
        if (fa > 1.0 - a + 1e-9) {
          c.fail("F_a bound violated by " + std::to_string(fa - (1.0 - a)));
          return;
        }
      } else {
        for (double z : zs) {
          double m = logsobolev_margin(z, a, x);
          worst_margin = std::min(worst_margin, m);
          if (m < -1e-9) {
            c.fail("margin " + std::to_string(m) + " at z=" + std::to_string(z) +
                   " a=" + std::to_string(a));
            return;
          }
        }
      }
    }
  }
  if (!fa_bound) {
    for (double z : zs)
      for (double a : as) {
        double eq = std::abs(logsobolev_margin(z, a, thermal_reference_spectrum(z, a)));
        if (eq > 1e-8) {
          c.fail("equality gap " + std::to_string(eq) + " at thermal reference");
          return;
        }
      }
    c.note("min margin " + std::to_string(worst_margin));
  } else {
    c.note("max F_a - (1-a) = " + std::to_string(worst_fa));
  }
}

void criterion_pp(Check& c, double) {
  for (double lambda : {0.25, 0.5, 0.75})
    for (double p : {1.5, 2.0, 3.0})
      for (int amp = 0; amp < 2; ++amp) {
        ChannelSpec spec =
            amp ? ChannelSpec::amplifier(1.0 / lambda) : ChannelSpec::attenuator(lambda);
        double closed = norm_pp(spec, p).value;
        double near = gaussian_ratio(spec, p, p, 1.0 - 1e-4);
        if (std::abs(near - closed) > 0.01 * closed) {
          c.fail(spec.name() + " ratio at z=1-1e-4 off by " +
                 std::to_string(std::abs(near - closed) / closed));
          return;
        }
        for (int i = 0; i < 1000; ++i) {
          double z = (i + 0.5) / 1000.0;
          if (gaussian_ratio(spec, p, p, z) > closed * (1.0 + 1e-6)) {
            c.fail(spec.name() + " ratio exceeds closed form at z=" + std::to_string(z));
            return;
          }
        }
      }
  c.note("18 (channel,p) grids clean");
}

void criterion_maximizer(Check& c, std::uint64_t seed) {
  struct Case {
    ChannelSpec spec;
    double p, q;
  } cases[] = {{ChannelSpec::attenuator(0.6), 1.5, 2.5}, {ChannelSpec::amplifier(2.0), 1.5, 2.5}};
  for (const auto& cs : cases) {
    NormReport gauss = optimize_gaussian_z(cs.spec, cs.p, cs.q);
    BruteForceResult brute = brute_force_ratio(cs.spec, cs.p, cs.q, 24, seed, 16);
    double rel = std::abs(brute.report.value - gauss.value) / gauss.value;
    if (rel > 1e-5) {
      c.fail(cs.spec.name() + " value mismatch rel " + std::to_string(rel));
      return;
    }
    Spectrum thermal(25);
    for (std::size_t n = 0; n < 25; ++n) thermal[n] = std::pow(*gauss.z_star, double(n));
    double nrm = schatten_norm(thermal, cs.p);
    double l1 = 0.0;
    for (std::size_t n = 0; n < 25; ++n) l1 += std::abs(thermal[n] / nrm - brute.argmax[n]);
    if (l1 > 1e-3) {
      c.fail(cs.spec.name() + " argmax l1 distance " + std::to_string(l1));
      return;
    }
    c.note("value rel err " + std::to_string(rel) + ", argmax l1 " + std::to_string(l1));
  }
}

void criterion_shoot(Check& c) {
  struct Case {
    double lambda, p, q;
  } cases[] = {{0.6, 1.5, 2.5}, {0.4, 1.2, 2.0}, {0.8, 2.0, 3.0}};
  double worst = 0.0;
  for (const auto& cs : cases) {
    ShootingResult shot = ode_shoot(cs.lambda, cs.p, cs.q, 1e-10);
    NormReport scan = optimize_gaussian_z(ChannelSpec::attenuator(cs.lambda), cs.p, cs.q);
    double diff = std::abs(shot.z0 - *scan.z_star);
    worst = std::max(worst, diff);
    if (!shot.converged || diff > 1e-4) {
      c.fail("z0 vs z_star diff " + std::to_string(diff) + " at lambda=" +
             std::to_string(cs.lambda));
      return;
    }
  }
  c.note("max |z0 - z_star| " + std::to_string(worst));
}

void criterion_kkt(Check& c, std::uint64_t seed) {
  const double z = 0.25, a = 0.5;
  SimplexPoint point = maximize_simplex(z, a, 24, seed);
  KKTReport report = kkt_residuals(point, z);
  if (report.max_residual > 1e-6)
    c.fail("interior residual " + std::to_string(report.max_residual));
  if (!report.monotone) c.fail("ratio sequence not monotone under xi");
  c.note("max residual " + std::to_string(report.max_residual) + ", monotone");
}

void criterion_divergence(Check& c) {
  auto diag = divergence_diagnostic(ChannelSpec::attenuator(0.5), 3.0, 1.5, {1e-2, 1e-3, 1e-4});
  double slope = (std::log(diag[2].second) - std::log(diag[0].second)) /
                 (std::log(diag[2].first) - std::log(diag[0].first));
  double target = -1.0 / 3.0;
  if (std::abs(slope - target) > 0.05 * std::abs(target))
    c.fail("log-log slope " + std::to_string(slope));
  c.note("log-log slope " + std::to_string(slope));
}

void criterion_moe(Check& c, double scale, std::uint64_t seed) {
  const ChannelSpec channels[] = {ChannelSpec::attenuator(0.5), ChannelSpec::amplifier(2.0),
                                  ChannelSpec::composite(0.7, 1.5)};
  const double zs[] = {0.1, 0.3, 0.6};
  std::size_t trials = scaled(1000, scale);
  double worst = 1e300;
  std::uint64_t combo = 0;
  for (const auto& spec : channels)
    for (double z : zs) {
      double target = thermal_entropy(z);
      ++combo;
      MatchedState mix = match_entropy_state(target, 64, StateFamily::two_point_mix, seed);
      worst = std::min(worst, output_entropy_gap(spec, mix, z));
      for (std::size_t t = 0; t < trials; ++t) {
        MatchedState rho = match_entropy_state(target, 64, StateFamily::tempered_random,
                                               derive_seed(seed, combo * 100000 + t));
        worst = std::min(worst, output_entropy_gap(spec, rho, z));
      }
      if (worst < -1e-8) {
        c.fail("gap " + std::to_string(worst) + " at " + spec.name() + " z=" + std::to_string(z));
        return;
      }
    }
  c.note("min gap " + std::to_string(worst));
}

void criterion_composite(Check& c, std::uint64_t seed) {
  double bound = composite_bound(0.7, 1.5, 1.5, 2.5);
  BruteForceResult brute = brute_force_ratio(ChannelSpec::composite(0.7, 1.5), 1.5, 2.5, 24, seed);
  if (bound < brute.report.value - 1e-6)
    c.fail("bound " + std::to_string(bound) + " below brute " +
           std::to_string(brute.report.value));
  c.note("bound " + std::to_string(bound) + " >= brute " + std::to_string(brute.report.value));
}

void criterion_derivatives(Check& c, double scale, std::uint64_t seed) {
  std::size_t n_spectra = scaled(100, scale);
  std::mt19937_64 rng(derive_seed(seed, 12));
  // the finite-difference curvature constant grows with dimension and with
  // the spread of the weights; keep both moderate so the fixed step dt = 1e-5
  // stays inside the second-order regime at the 1e-7 tolerance
  std::uniform_int_distribution<std::size_t> dims(2, 12);
  const double as[] = {0.25, 0.5, 0.75};
  double worst_fd = 0.0, worst_da = 0.0;
  std::exponential_distribution<double> expo(1.0);
  for (std::size_t t = 0; t < n_spectra; ++t) {
    double a = as[t % 3];
    std::size_t d = dims(rng);
    Spectrum p(d);
    double s = 0.0;
    for (double& v : p) {
      v = expo(rng) + 0.1;
      s += v;
    }
    for (double& v : p) v /= s;
    Spectrum x(p.size());
    for (std::size_t n = 0; n < p.size(); ++n) x[n] = std::pow(p[n], a);
    worst_fd = std::max(worst_fd, F_a_fd_check(x, a, 1e-5));
    worst_da = std::max(worst_da, dlnnorm_da_check(x, a, 1e-5));
  }
  if (worst_fd > 1e-7) c.fail("flow-derivative residual " + std::to_string(worst_fd));
  if (worst_da > 1e-7) c.fail("entropy-derivative residual " + std::to_string(worst_da));
  c.note("residuals " + std::to_string(worst_fd) + ", " + std::to_string(worst_da));
}

}  // namespace

bool suite_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CriterionResult& r) { return r.passed; });
}

std::vector<CriterionResult> run_suite(double trial_scale, std::uint64_t seed, std::ostream& log) {
  struct Entry {
    const char* name;
    double budget_s;
    std::function<void(Check&)> run;
  };
  const Entry entries[] = {
      {"kernel stochasticity and thermal covariance", 1.0,
       [&](Check& c) { criterion_kernels(c, trial_scale); }},
      {"amplifier-attenuator duality", 5.0,
       [&](Check& c) { criterion_duality(c, trial_scale, seed); }},
      {"log-Sobolev margin and thermal equality", 30.0,
       [&](Check& c) { criterion_logsobolev(c, trial_scale, seed, false); }},
      {"flow-derivative upper bound", 30.0,
       [&](Check& c) { criterion_logsobolev(c, trial_scale, seed, true); }},
      {"p to p closed form", 1.0, [&](Check& c) { criterion_pp(c, trial_scale); }},
      {"thermal maximizer vs brute force", 120.0,
       [&](Check& c) { criterion_maximizer(c, seed); }},
      {"shooting vs scan maximizer", 10.0, [&](Check& c) { criterion_shoot(c); }},
      {"stationarity residuals at the simplex maximizer", 30.0,
       [&](Check& c) { criterion_kkt(c, seed); }},
      {"divergence rate for q < p", 1.0, [&](Check& c) { criterion_divergence(c); }},
      {"constrained minimum output entropy", 120.0,
       [&](Check& c) { criterion_moe(c, trial_scale, seed); }},
      {"composite bound dominates brute force", 90.0,
       [&](Check& c) { criterion_composite(c, seed); }},
      {"derivative identities", 2.0,
       [&](Check& c) { criterion_derivatives(c, trial_scale, seed); }},
  };
  std::vector<CriterionResult> results;
  int index = 0;
  for (const auto& entry : entries) {
    ++index;
    Check check;
    auto t0 = std::chrono::steady_clock::now();
    try {
      entry.run(check);
    } catch (const std::exception& e) {
      check.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (trial_scale >= 1.0 && secs > entry.budget_s)
      check.fail("runtime " + std::to_string(secs) + " s over budget " +
                 std::to_string(entry.budget_s) + " s");
    CriterionResult r;
    r.index = index;
    r.name = entry.name;
    r.passed = check.ok;
    r.detail = check.msg.str();
    r.seconds = secs;
    results.push_back(r);
    char line[512];
    std::snprintf(line, sizeof line, "[%2d] %s  %s (%.2f s)%s%s", index,
                  r.passed ? "PASS" : "FAIL", r.name.c_str(), secs, r.detail.empty() ? "" : "  ",
                  r.detail.c_str());
    log << line << '\n';
  }
  return results;
}

}  // namespace qgn
