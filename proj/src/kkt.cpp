#include "qgn/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "qgn/sobolev.hpp"

namespace qgn {
namespace {

constexpr double kFloor = 1e-280;

void check_za(double z, double a) {
  if (z <= 0.0 || z >= 1.0) throw std::domain_error("z must lie in (0,1)");
  if (a <= 0.0 || a >= 1.0) throw std::domain_error("a must lie in (0,1)");
}

std::vector<double> geometric_profile(double ratio, std::size_t dim) {
  std::vector<double> p(dim);
  double v = 1.0, s = 0.0;
  for (std::size_t n = 0; n < dim; ++n) {
    p[n] = v;
    s += v;
    v = std::max(v * ratio, kFloor);
  }
  for (double& e : p) e /= s;
  return p;
}

// Multiplicative-weights ascent; keeps every entry strictly positive.
void ascend(std::vector<double>& p, double z, double a, int max_iters) {
  double obj = simplex_objective(p, z, a);
  double eta = 0.05;
  for (int it = 0; it < max_iters; ++it) {
    std::vector<double> g = simplex_gradient(p, z, a);
    double gbar = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n) gbar += p[n] * g[n];
    double stat = 0.0;
    for (std::size_t n = 0; n < p.size(); ++n)
      stat = std::max(stat, p[n] * std::abs(g[n] - gbar));
    if (stat < 1e-13) break;
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      std::vector<double> trial(p.size());
      double s = 0.0;
      for (std::size_t n = 0; n < p.size(); ++n) {
        double step = eta * (g[n] - gbar);
        trial[n] = p[n] * std::exp(std::min(step, 50.0));
        s += trial[n];
      }
      for (double& e : trial) e = std::max(e / s, kFloor);
      double trial_obj = simplex_objective(trial, z, a);
      if (std::isfinite(trial_obj) && trial_obj >= obj) {
        p = trial;
        obj = trial_obj;
        eta *= 1.25;
        accepted = true;
        break;
      }
      eta *= 0.5;
    }
    if (!accepted) break;
  }
}

// Solve A x = b in place by Gaussian elimination with partial pivoting.
bool solve_dense(std::vector<double>& A, std::vector<double>& b, std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(A[r * n + col]) > std::abs(A[piv * n + col])) piv = r;
    if (std::abs(A[piv * n + col]) < 1e-300) return false;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(A[piv * n + c], A[col * n + c]);
      std::swap(b[piv], b[col]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      double f = A[r * n + col] / A[col * n + col];
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= A[i * n + c] * b[c];
    b[i] = s / A[i * n + i];
  }
  return true;
}

// Damped Newton on the stationarity system grad_n(p) = lambda, sum p = 1,
// in log coordinates so iterates stay positive.
bool newton_polish(std::vector<double>& p, double z, double a) {
  const std::size_t N1 = p.size();
  const std::size_t dim = N1 + 1;
  const double muza = mu(z, a);
  std::vector<double> g = simplex_gradient(p, z, a);
  double lambda = 0.0;
  for (double v : g) lambda += v;
  lambda /= double(N1);
  auto residual_norm = [&](const std::vector<double>& pp, double lam) {
    std::vector<double> gg = simplex_gradient(pp, z, a);
    double r = 0.0;
    for (double v : gg) r = std::max(r, std::abs(v - lam));
    double s = -1.0;
    for (double v : pp) s += v;
    return std::max(r, std::abs(s));
  };
  double rn = residual_norm(p, lambda);
  // collapsed entries give huge log-gradient residuals; Newton from such a
  // point wanders off the simplex, so leave those candidates unpolished
  if (rn > 100.0) return false;
  for (int it = 0; it < 120 && rn > 1e-12; ++it) {
    std::vector<double> J(dim * dim, 0.0), F(dim, 0.0);
    g = simplex_gradient(p, z, a);
    double psum = 0.0;
    for (std::size_t m = 0; m < N1; ++m) {
      double wlo = m > 0 ? p[m] / p[m - 1] : 0.0;      // w_{m-1}
      double whi = m + 1 < N1 ? p[m + 1] / p[m] : 0.0;  // w_m
      double jlo = m > 0 ? double(m) * a * (1.0 - a) * std::pow(wlo, a - 1.0) : 0.0;
      double jhi = m + 1 < N1 ? double(m + 1) * a * (1.0 - a) * std::pow(whi, a) : 0.0;
      if (m > 0) J[m * dim + (m - 1)] = jlo;
      if (m + 1 < N1) J[m * dim + (m + 1)] = jhi;
      J[m * dim + m] = -(jlo + jhi + muza);
      J[m * dim + N1] = -1.0;
      F[m] = g[m] - lambda;
      J[N1 * dim + m] = p[m];
      psum += p[m];
    }
    F[N1] = psum - 1.0;
    for (double& v : F) v = -v;
    if (!solve_dense(J, F, dim)) return false;
    bool stepped = false;
    for (double s = 1.0; s > 1e-6; s *= 0.5) {
      std::vector<double> trial(N1);
      for (std::size_t m = 0; m < N1; ++m)
        trial[m] = std::max(p[m] * std::exp(std::clamp(s * F[m], -30.0, 30.0)), kFloor);
      double lam_trial = lambda + s * F[N1];
      double rn_trial = residual_norm(trial, lam_trial);
      if (std::isfinite(rn_trial) && rn_trial < rn) {
        p = trial;
        lambda = lam_trial;
        rn = rn_trial;
        stepped = true;
        break;
      }
    }
    if (!stepped) break;
  }
  return rn < 1e-8;
}

}  // namespace

Spectrum SimplexPoint::spectrum() const {
  Spectrum x(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) x[n] = std::pow(p[n], a);
  return x;
}

double simplex_objective(const std::vector<double>& p, double z, double a) {
  check_za(z, a);
  const double muza = mu(z, a);
  double f = 0.0, ent = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (n > 0) f += double(n) * (std::pow(p[n], a) * std::pow(p[n - 1], 1.0 - a) - p[n]);
    if (p[n] > 0.0) ent -= p[n] * std::log(p[n]);
  }
  return f + muza * ent;
}

std::vector<double> simplex_gradient(const std::vector<double>& p, double z, double a) {
  check_za(z, a);
  const double muza = mu(z, a);
  const std::size_t N1 = p.size();
  std::vector<double> g(N1, 0.0);
  for (std::size_t m = 0; m < N1; ++m) {
    double v = 0.0;
    if (m > 0) v += double(m) * (a * std::pow(p[m - 1] / p[m], 1.0 - a) - 1.0);
    if (m + 1 < N1) v += double(m + 1) * (1.0 - a) * std::pow(p[m + 1] / p[m], a);
    v -= muza * (std::log(p[m]) + 1.0);
    g[m] = v;
  }
  return g;
}

SimplexPoint maximize_simplex(double z, double a, std::size_t N, std::uint64_t seed) {
  check_za(z, a);
  SimplexPoint best;
  best.a = a;
  if (N == 0) {
    best.p = {1.0};
    best.objective = 0.0;
    return best;
  }
  const std::size_t dim = N + 1;
  const double xi = std::pow(z, 1.0 / a);
  std::vector<std::vector<double>> starts;
  for (int i = 0; i < 8; ++i) {
    double delta = -0.75 + 1.5 * double(i) / 7.0;  // log grid around xi
    double ratio = std::min(0.999, xi * std::exp(delta));
    starts.push_back(geometric_profile(ratio, dim));
  }
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  for (int i = 0; i < 8; ++i) {
    std::vector<double> p(dim);
    double s = 0.0;
    for (double& v : p) {
      v = expo(rng) + 1e-12;
      s += v;
    }
    for (double& v : p) v /= s;
    starts.push_back(p);
  }
  bool have_best = false;
  for (auto& p : starts) {
    ascend(p, z, a, 3000);
    bool polished = newton_polish(p, z, a);
    // sorted maximizer always exists; re-polish after sorting if needed
    if (!std::is_sorted(p.begin(), p.end(), std::greater<double>())) {
      std::sort(p.begin(), p.end(), std::greater<double>());
      polished = newton_polish(p, z, a);
    }
    double s = 0.0;
    for (double v : p) s += v;
    if (!std::isfinite(s) || s <= 0.0) continue;
    if (std::abs(s - 1.0) > 1e-9) {
      for (double& v : p) v /= s;
      polished = false;
    }
    double obj = simplex_objective(p, z, a);
    if (!std::isfinite(obj)) continue;
    bool better = !have_best;
    if (have_best) {
      if (polished != best.converged)
        better = polished;
      else if (obj > best.objective + 1e-13)
        better = true;
      else if (std::abs(obj - best.objective) <= 1e-13)
        better = std::lexicographical_compare(p.begin(), p.end(), best.p.begin(), best.p.end());
    }
    if (better) {
      best.p = p;
      best.objective = obj;
      best.converged = polished;
      have_best = true;
    }
  }
  if (!have_best) throw std::runtime_error("maximize_simplex: no start converged");
  return best;
}

KKTReport kkt_residuals(const SimplexPoint& point, double z) {
  const double a = point.a;
  check_za(z, a);
  const std::size_t N1 = point.p.size();
  for (double v : point.p)
    if (v <= 0.0)
      throw std::domain_error("kkt_residuals: zero entry; maximizers have full support");
  std::vector<double> g = simplex_gradient(point.p, z, a);
  KKTReport report;
  // least-squares multiplier over interior indices (truncation breaks
  // stationarity at the boundary index N)
  std::size_t interior = N1 > 1 ? N1 - 1 : 1;
  double lambda = 0.0;
  for (std::size_t n = 0; n < interior; ++n) lambda += g[n];
  lambda /= double(interior);
  report.multiplier = lambda;
  report.stationarity_residuals.resize(N1);
  for (std::size_t n = 0; n < N1; ++n) report.stationarity_residuals[n] = std::abs(g[n] - lambda);
  report.max_residual = 0.0;
  for (std::size_t n = 0; n < interior; ++n)
    report.max_residual = std::max(report.max_residual, report.stationarity_residuals[n]);
  const double xi = std::pow(z, 1.0 / a);
  report.w.resize(N1 > 0 ? N1 - 1 : 0);
  for (std::size_t n = 0; n + 1 < N1; ++n) report.w[n] = point.p[n + 1] / point.p[n];
  report.monotone = true;
  if (!report.w.empty() && report.w[0] > xi + 1e-9) report.monotone = false;
  for (std::size_t n = 0; n + 1 < report.w.size(); ++n)
    if (report.w[n + 1] > report.w[n] + 1e-9) report.monotone = false;
  return report;
}

double recursion_residual(const std::vector<double>& w, double a, double xi, std::size_t n) {
  if (a <= 0.0 || a >= 1.0) throw std::domain_error("recursion_residual: a must lie in (0,1)");
  if (xi <= 0.0 || xi >= 1.0) throw std::domain_error("recursion_residual: xi must lie in (0,1)");
  if (n < 2 || n + 1 > w.size())
    throw std::domain_error("recursion_residual: need 2 <= n <= len(w)-1");
  auto s2hp = [a](double s) { return s > 0.0 ? (a - 1.0) * std::pow(s, a) : 0.0; };
  auto h_plus_shp = [a](double s) { return a * std::pow(s, a - 1.0) - 1.0; };
  double lhs = double(n + 1) * (s2hp(w[n]) - s2hp(w[n - 1]));
  double rhs = double(n - 1) * (h_plus_shp(w[n - 1]) - h_plus_shp(w[n - 2])) +
               (nu(w[n - 1], a) - nu(xi, a)) * std::log(w[n - 1]);
  return std::abs(lhs - rhs);
}

}  // namespace qgn
