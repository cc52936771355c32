#include "qgn/norms.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

namespace qgn {
namespace {

using clock_type = std::chrono::steady_clock;

std::uint64_t ms_since(clock_type::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(clock_type::now() - t0).count();
}

constexpr double kGolden = 0.6180339887498949;

// golden-section maximization of f on [lo, hi]
double golden_max(double lo, double hi, const auto& f, double xtol = 1e-11) {
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a), x2 = a + kGolden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > xtol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

double golden_min(double lo, double hi, const auto& f, double xtol = 1e-9) {
  return golden_max(lo, hi, [&](double x) { return -f(x); }, xtol);
}

KernelMatrix channel_kernel(const ChannelSpec& spec, std::size_t in_dim,
                            const TruncationPolicy& policy) {
  switch (spec.kind) {
    case ChannelKind::attenuator: return attenuator_kernel(spec.lambda, in_dim);
    case ChannelKind::amplifier: return amplifier_kernel(spec.kappa, in_dim, policy);
    case ChannelKind::composite: {
      KernelMatrix att = attenuator_kernel(spec.lambda, in_dim);
      KernelMatrix amp = amplifier_kernel(spec.kappa, in_dim, policy);
      KernelMatrix out;
      out.in_dim = in_dim;
      out.out_dim = amp.out_dim;
      out.entries.assign(out.out_dim * in_dim, 0.0);
      for (std::size_t n = 0; n < out.out_dim; ++n)
        for (std::size_t j = 0; j < in_dim; ++j) {
          double a = amp.at(n, j);
          if (a == 0.0) continue;
          for (std::size_t k = j; k < in_dim; ++k) out.at(n, k) += a * att.at(j, k);
        }
      return out;
    }
  }
  throw std::logic_error("channel_kernel: bad kind");
}

}  // namespace

std::vector<double> chebyshev_grid(double lo, double hi, int n) {
  if (n < 2 || hi <= lo) throw std::domain_error("chebyshev_grid: bad arguments");
  std::vector<double> g(n);
  for (int j = 0; j < n; ++j)
    g[j] = 0.5 * (lo + hi) + 0.5 * (hi - lo) * std::cos(M_PI * double(n - 1 - j) / double(n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

double gaussian_ratio(const ChannelSpec& spec, double p, double q, double z) {
  if (p <= 1.0 || q <= 1.0) throw std::domain_error("gaussian_ratio: need p, q > 1");
  if (z <= 0.0 || z >= 1.0) throw std::domain_error("gaussian_ratio: z must lie in (0,1)");
  return f_p_closed(thermal_image(spec, z), q) / f_p_closed(z, p);
}

NormReport optimize_gaussian_z(const ChannelSpec& spec, double p, double q) {
  auto t0 = clock_type::now();
  if (!(1.0 < p && p < q)) throw std::domain_error("optimize_gaussian_z: need 1 < p < q");
  spec.validate();
  if (spec.kind == ChannelKind::attenuator && (spec.lambda <= 0.0 || spec.lambda >= 1.0))
    throw std::domain_error("optimize_gaussian_z: attenuator needs 0 < lambda < 1");
  if (spec.kind == ChannelKind::amplifier && spec.kappa <= 1.0)
    throw std::domain_error("optimize_gaussian_z: amplifier needs kappa > 1");
  auto f = [&](double z) { return gaussian_ratio(spec, p, q, z); };
  // coarse grid, refined twice around the best cell
  double lo = 0.0, hi = 1.0;
  std::size_t best = 0;
  const int n_grid = 64;
  std::vector<double> zs(n_grid);
  for (int pass = 0; pass < 3; ++pass) {
    double fbest = -1.0;
    for (int i = 0; i < n_grid; ++i) {
      zs[i] = lo + (hi - lo) * double(i + 1) / double(n_grid + 1);
      double v = f(zs[i]);
      if (v > fbest) {
        fbest = v;
        best = i;
      }
    }
    double nlo = best > 0 ? zs[best - 1] : lo;
    double nhi = best + 1 < std::size_t(n_grid) ? zs[best + 1] : hi;
    if (pass == 2 && nhi > 1.0 - 1e-6)
      throw std::runtime_error(
          "optimize_gaussian_z: maximum at the z->1 boundary; inconsistent with 1<p<q");
    lo = nlo;
    hi = nhi;
  }
  NormReport report;
  report.channel = spec;
  report.p = p;
  report.q = q;
  report.method = NormMethod::gaussian_scan;
  double zstar = golden_max(lo, hi, f);
  report.z_star = zstar;
  report.value = f(zstar);
  report.runtime_ms = ms_since(t0);
  return report;
}

BruteForceResult brute_force_ratio(const ChannelSpec& spec, double p, double q, std::size_t N,
                                   std::uint64_t seed, int starts) {
  auto t0 = clock_type::now();
  if (p <= 1.0 || q <= 1.0) throw std::domain_error("brute_force_ratio: need p, q > 1");
  if (N > 64) throw std::domain_error("brute_force_ratio: N must be <= 64");
  spec.validate();
  const std::size_t dim = N + 1;
  TruncationPolicy policy;
  KernelMatrix K = channel_kernel(spec, dim, policy);
  auto log_ratio = [&](const Spectrum& x) {
    return std::log(schatten_norm(qgn::apply(K, x), q)) - std::log(schatten_norm(x, p));
  };
  auto normalize_p = [&](Spectrum& x) {
    double n = schatten_norm(x, p);
    for (double& v : x) v /= n;
  };

  std::vector<Spectrum> start_points;
  int n_thermal = std::min(starts, 8);
  for (int i = 0; i < n_thermal; ++i) {
    double z = 0.1 * double(i + 1);
    Spectrum x(dim);
    for (std::size_t n = 0; n < dim; ++n) x[n] = std::pow(z, double(n));
    normalize_p(x);
    start_points.push_back(x);
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (int i = n_thermal; i < starts; ++i) {
    Spectrum x(dim);
    for (double& v : x) v = expo(rng) + 1e-9;
    normalize_p(x);
    start_points.push_back(x);
  }

  double best_val = -1.0, worst_val = 1e300;
  Spectrum best_x;
  bool all_converged = true;
  for (auto& x : start_points) {
    double L = log_ratio(x);
    double eta = 0.1;
    bool converged = false;
    for (int it = 0; it < 60000; ++it) {
      Spectrum u = qgn::apply(K, x);
      double uq = 0.0, xp = 0.0;
      for (double v : u) uq += std::pow(v, q);
      for (double v : x) xp += std::pow(v, p);
      // gradient of ln ratio
      Spectrum g(dim, 0.0);
      for (std::size_t n = 0; n < K.out_dim; ++n) {
        if (u[n] <= 0.0) continue;
        double w = std::pow(u[n], q - 1.0) / uq;
        for (std::size_t k = 0; k < dim; ++k) g[k] += w * K.at(n, k);
      }
      for (std::size_t k = 0; k < dim; ++k)
        if (x[k] > 0.0) g[k] -= std::pow(x[k], p - 1.0) / xp;
      double gnorm = 0.0;
      for (double v : g) gnorm = std::max(gnorm, std::abs(v));
      if (gnorm < 1e-14) {
        converged = true;
        break;
      }
      bool stepped = false;
      for (int bt = 0; bt < 50; ++bt) {
        Spectrum trial = x;
        for (std::size_t k = 0; k < dim; ++k) trial[k] = std::max(trial[k] + eta * g[k], 0.0);
        normalize_p(trial);
        double Lt = log_ratio(trial);
        if (std::isfinite(Lt) && Lt > L) {
          if (Lt - L < 1e-16 && gnorm < 1e-10) {
            converged = true;
          }
          x = trial;
          L = Lt;
          eta *= 1.3;
          stepped = true;
          break;
        }
        eta *= 0.5;
      }
      if (converged) break;
      if (!stepped) {
        converged = gnorm < 1e-9;
        break;
      }
    }
    all_converged = all_converged && converged;
    double val = std::exp(L);
    worst_val = std::min(worst_val, val);
    if (val > best_val) {
      best_val = val;
      best_x = x;
    }
  }

  BruteForceResult result;
  result.report.channel = spec;
  result.report.p = p;
  result.report.q = q;
  result.report.method = NormMethod::brute_force;
  result.report.value = best_val;
  result.report.truncation_loss = 1.0 - K.min_column_mass();
  result.report.optimizer_gap = best_val - worst_val;
  result.report.runtime_ms = ms_since(t0);
  result.argmax = best_x;
  if (!all_converged) result.report.optimizer_gap = std::max(result.report.optimizer_gap, 0.0);
  return result;
}

NormReport norm_pp(const ChannelSpec& spec, double p) {
  auto t0 = clock_type::now();
  if (p <= 1.0) throw std::domain_error("norm_pp: need p > 1");
  spec.validate();
  NormReport report;
  report.channel = spec;
  report.p = report.q = p;
  report.method = NormMethod::closed_form;
  switch (spec.kind) {
    case ChannelKind::attenuator:
      report.value = std::pow(spec.lambda, (1.0 - p) / p);
      break;
    case ChannelKind::amplifier:
      report.value = std::pow(spec.kappa, (1.0 - p) / p);
      break;
    case ChannelKind::composite:
      throw std::domain_error("norm_pp: closed form exists for attenuator and amplifier only");
  }
  report.runtime_ms = ms_since(t0);
  return report;
}

std::vector<std::pair<double, double>> divergence_diagnostic(const ChannelSpec& spec, double p,
                                                             double q,
                                                             const std::vector<double>& eps_grid) {
  if (!(1.0 < q && q < p)) throw std::domain_error("divergence_diagnostic: need 1 < q < p");
  std::vector<std::pair<double, double>> out;
  out.reserve(eps_grid.size());
  for (double eps : eps_grid) {
    if (eps <= 0.0 || eps >= 1.0) throw std::domain_error("divergence_diagnostic: eps in (0,1)");
    out.emplace_back(eps, gaussian_ratio(spec, p, q, 1.0 - eps));
  }
  return out;
}

double composite_bound(double lambda, double kappa, double p, double q,
                       const std::vector<double>& r_grid) {
  if (lambda < 0.0 || lambda > 1.0) throw std::domain_error("composite_bound: lambda in [0,1]");
  if (kappa < 1.0) throw std::domain_error("composite_bound: kappa >= 1");
  if (!(1.0 < p && p <= q)) throw std::domain_error("composite_bound: need 1 < p <= q");
  auto factor_att = [&](double r) {
    if (lambda == 1.0) return 1.0;
    if (r <= p + 1e-12) return norm_pp(ChannelSpec::attenuator(lambda), p).value;
    return optimize_gaussian_z(ChannelSpec::attenuator(lambda), p, r).value;
  };
  auto factor_amp = [&](double r) {
    if (kappa == 1.0) return 1.0;
    if (r >= q - 1e-12) return norm_pp(ChannelSpec::amplifier(kappa), q).value;
    return optimize_gaussian_z(ChannelSpec::amplifier(kappa), r, q).value;
  };
  auto product = [&](double r) { return factor_att(r) * factor_amp(r); };
  if (p == q) return product(p);
  std::vector<double> grid = r_grid.empty() ? chebyshev_grid(p, q, 33) : r_grid;
  std::erase_if(grid, [&](double r) { return r < p || r > q; });
  if (grid.empty()) throw std::domain_error("composite_bound: empty feasible r-grid");
  std::sort(grid.begin(), grid.end());
  std::size_t best = 0;
  double fbest = 1e300;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double v = product(grid[i]);
    if (v < fbest) {
      fbest = v;
      best = i;
    }
  }
  double lo = best > 0 ? grid[best - 1] : grid[best];
  double hi = best + 1 < grid.size() ? grid[best + 1] : grid[best];
  if (hi > lo) {
    double r = golden_min(lo, hi, product, 1e-7);
    fbest = std::min(fbest, product(r));
  }
  return fbest;
}

}  // namespace qgn
