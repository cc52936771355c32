#include "qgn/sobolev.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qgn/channels.hpp"

namespace qgn {
namespace {

void check_a(double a) {
  if (a <= 0.0 || a >= 1.0) throw std::domain_error("a must lie in (0,1)");
}

// Renormalize so that sum x^(1/a) is exactly 1; reject if the input is not
// already admissible within 1e-10.
Spectrum normalize_admissible(const Spectrum& x, double a) {
  check_a(a);
  double t = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::domain_error("spectrum must be nonnegative");
    if (v > 0.0) t += std::pow(v, 1.0 / a);
  }
  if (std::abs(t - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "spectrum not admissible: sum x^(1/a) = " << t;
    throw std::domain_error(msg.str());
  }
  Spectrum out = x;
  double c = std::pow(t, -a);
  for (double& v : out) v *= c;
  return out;
}

double F_a_raw(const Spectrum& x, double a) {
  const double inv_a = 1.0 / a;
  double s = 0.0;
  for (std::size_t n = 1; n < x.size(); ++n) {
    double cross = x[n - 1] > 0.0 ? x[n] * std::pow(x[n - 1], inv_a - 1.0) : 0.0;
    double self = x[n] > 0.0 ? std::pow(x[n], inv_a) : 0.0;
    s += double(n) * (cross - self);
  }
  return s;
}

double S_a_raw(const Spectrum& x, double a) {
  double s = 0.0;
  for (double v : x)
    if (v > 0.0) {
      double p = std::pow(v, 1.0 / a);
      s -= p * std::log(p);
    }
  return s;
}

}  // namespace

double mu(double z, double a) {
  check_a(a);
  if (z <= 0.0 || z > 1.0) throw std::domain_error("mu: z must lie in (0,1]");
  if (z == 1.0) return 0.0;
  // numerator = a(e^{cu}-1-cu) + (1-a)(e^u-1-u) with u = ln z, c = (a-1)/a;
  // the linear terms cancel exactly, so evaluate the remainders directly
  const double u = std::log(z);
  const double cu = (a - 1.0) / a * u;
  double num = a * (std::expm1(cu) - cu) + (1.0 - a) * (std::expm1(u) - u);
  return a * num / u;
}

double sobolev_h(double s, double a) {
  check_a(a);
  if (s <= 0.0 || s > 1.0) throw std::domain_error("sobolev_h: s must lie in (0,1]");
  return std::pow(s, a - 1.0) - 1.0;
}

double nu(double s, double a) {
  check_a(a);
  if (s <= 0.0 || s > 1.0) throw std::domain_error("nu: s must lie in (0,1]");
  return mu(std::pow(s, a), a);
}

double F_a(const Spectrum& x, double a) { return F_a_raw(normalize_admissible(x, a), a); }

double S_a(const Spectrum& x, double a) { return S_a_raw(normalize_admissible(x, a), a); }

double S_a_general(const Spectrum& x, double a) {
  check_a(a);
  double t = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::domain_error("S_a_general: spectrum must be nonnegative");
    if (v > 0.0) t += std::pow(v, 1.0 / a);
  }
  if (t <= 0.0) throw std::domain_error("S_a_general: zero spectrum");
  double s = 0.0;
  for (double v : x)
    if (v > 0.0) {
      double p = std::pow(v, 1.0 / a) / t;
      s -= p * std::log(p);
    }
  return s;
}

double script_F(double z, double a, const Spectrum& x) {
  Spectrum xn = normalize_admissible(x, a);
  return F_a_raw(xn, a) + mu(z, a) * S_a_raw(xn, a);
}

double thermal_reference_value(double z, double a) {
  check_a(a);
  if (z <= 0.0 || z >= 1.0) throw std::domain_error("z must lie in (0,1)");
  double xi = std::pow(z, 1.0 / a);
  return xi * sobolev_h(xi, a) / (1.0 - xi) + nu(xi, a) * thermal_entropy(xi);
}

Spectrum thermal_reference_spectrum(double z, double a, const TruncationPolicy& policy) {
  check_a(a);
  double xi = std::pow(z, 1.0 / a);
  Spectrum p = make_thermal(xi, policy);
  Spectrum x(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) x[n] = std::pow(p[n], a);
  return x;
}

double logsobolev_margin(double z, double a, const Spectrum& x) {
  return thermal_reference_value(z, a) - script_F(z, a, x);
}

double F_a_fd_check(const Spectrum& x, double a, double dt) {
  if (dt <= 0.0 || dt > 1e-3) throw std::domain_error("F_a_fd_check: dt must lie in (0,1e-3]");
  Spectrum xn = normalize_admissible(x, a);
  auto f = [&](double t) { return std::log(schatten_norm(semigroup_apply(t, xn), 1.0 / a)); };
  double deriv = (-3.0 * f(0.0) + 4.0 * f(dt) - f(2.0 * dt)) / (2.0 * dt);
  return std::abs(F_a_raw(xn, a) - deriv);
}

double dlnnorm_da_check(const Spectrum& x, double a, double da) {
  check_a(a);
  if (da <= 0.0 || a - da <= 0.0 || a + da >= 1.0)
    throw std::domain_error("dlnnorm_da_check: step leaves (0,1)");
  auto g = [&](double b) { return std::log(schatten_norm(x, 1.0 / b)); };
  double deriv = (g(a + da) - g(a - da)) / (2.0 * da);
  return std::abs(S_a_general(x, a) - deriv);
}

namespace {

constexpr double kShootAFloor = 1e-7;

// a(T) along the flow, by an embedded Fehlberg 4(5) pair with absolute local
// tolerance loc_tol. Returns 0 if a collapses before reaching T.
double integrate_a(double z0, double a0, double T, double loc_tol,
                   std::vector<std::array<double, 3>>* trajectory) {
  auto zt = [&](double t) {
    double e = std::exp(-t);
    return e * z0 / (1.0 - (1.0 - e) * z0);
  };
  auto rhs = [&](double t, double a) {
    // intermediate stages may overshoot the open interval; mu extends continuously
    a = std::clamp(a, 1e-12, 1.0 - 1e-12);
    double d = mu(zt(t), a);
    // mu diverges to -inf as a -> 0; cap so stage arithmetic stays finite
    if (!std::isfinite(d) || d < -1e12) d = -1e12;
    return d;
  };
  double t = 0.0, a = a0;
  double h = T / 64.0;
  if (trajectory) trajectory->push_back({t, a, zt(t)});
  int guard = 0;
  while (t < T) {
    if (++guard > 2000000) throw std::runtime_error("ode_shoot: integrator stalled");
    if (a <= kShootAFloor) return 0.0;
    // |mu| grows super-exponentially once a is small, so the solution hits
    // zero in time < 1e-6 from here; treat that as collapse
    if (rhs(t, a) <= -1e6) return 0.0;
    if (t + h > T) h = T - t;
    double k1 = rhs(t, a);
    double k2 = rhs(t + h / 4.0, a + h * k1 / 4.0);
    double k3 = rhs(t + 3.0 * h / 8.0, a + h * (3.0 * k1 + 9.0 * k2) / 32.0);
    double k4 = rhs(t + 12.0 * h / 13.0,
                    a + h * (1932.0 * k1 - 7200.0 * k2 + 7296.0 * k3) / 2197.0);
    double k5 = rhs(t + h, a + h * (439.0 / 216.0 * k1 - 8.0 * k2 + 3680.0 / 513.0 * k3 -
                                    845.0 / 4104.0 * k4));
    double k6 = rhs(t + h / 2.0, a + h * (-8.0 / 27.0 * k1 + 2.0 * k2 - 3544.0 / 2565.0 * k3 +
                                          1859.0 / 4104.0 * k4 - 11.0 / 40.0 * k5));
    double a4 = a + h * (25.0 / 216.0 * k1 + 1408.0 / 2565.0 * k3 + 2197.0 / 4104.0 * k4 -
                         k5 / 5.0);
    double a5 = a + h * (16.0 / 135.0 * k1 + 6656.0 / 12825.0 * k3 + 28561.0 / 56430.0 * k4 -
                         9.0 / 50.0 * k5 + 2.0 / 55.0 * k6);
    double err = std::abs(a5 - a4);
    if (!std::isfinite(err)) {
      h *= 0.25;
      continue;
    }
    if (err <= loc_tol) {
      t += h;
      a = a5;
      if (a <= kShootAFloor) return 0.0;
      if (trajectory) trajectory->push_back({t, a, zt(t)});
    }
    double factor = err > 0.0 ? 0.9 * std::pow(loc_tol / err, 0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, factor));
  }
  return a;
}

}  // namespace

ShootingResult ode_shoot(double lambda, double p, double q, double tol) {
  if (lambda <= 0.0 || lambda >= 1.0) throw std::domain_error("ode_shoot: lambda must lie in (0,1)");
  if (!(1.0 < p && p < q)) throw std::domain_error("ode_shoot: need 1 < p < q");
  if (tol <= 0.0) throw std::domain_error("ode_shoot: tol must be positive");
  const double T = -std::log(lambda);
  const double a0 = 1.0 / p, a_target = 1.0 / q;
  const double loc_tol = tol / 100.0;
  auto shot = [&](double z0) { return integrate_a(z0, a0, T, loc_tol, nullptr) - a_target; };

  // bracket: a(T) -> a(0) = 1/p > 1/q for z0 -> 1, and collapses for small z0
  double hi = 1.0 - 1e-12;
  double lo = 0.9;
  double g_lo = shot(lo);
  while (g_lo > 0.0 && lo > 1e-12) {
    lo *= 0.5;
    g_lo = shot(lo);
  }
  ShootingResult result;
  if (g_lo > 0.0) {
    // no sign change found; report the best endpoint instead of guessing
    result.z0 = lo;
    result.residual = std::abs(g_lo);
    result.converged = false;
    integrate_a(lo, a0, T, loc_tol, &result.trajectory);
    return result;
  }
  double z0 = lo, g = g_lo;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double gm = shot(mid);
    if (std::abs(gm) <= tol) {
      z0 = mid;
      g = gm;
      break;
    }
    if (gm < 0.0)
      lo = mid;
    else
      hi = mid;
    z0 = mid;
    g = gm;
  }
  result.z0 = z0;
  result.residual = std::abs(g);
  result.converged = result.residual <= tol;
  integrate_a(z0, a0, T, loc_tol, &result.trajectory);
  return result;
}

}  // namespace qgn
