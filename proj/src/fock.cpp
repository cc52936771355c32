#include "qgn/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qgn {

Spectrum make_thermal(double z, const TruncationPolicy& policy) {
  if (z < 0.0 || z >= 1.0) throw std::domain_error("make_thermal: z must lie in [0,1)");
  if (z == 0.0) return {1.0};
  // smallest N with z^(N+1) <= eps_tail
  std::size_t dim = 1;
  double tail = z;  // z^dim
  while (tail > policy.eps_tail && dim < policy.max_dim) {
    tail *= z;
    ++dim;
  }
  Spectrum x(dim);
  double v = 1.0 - z;
  for (std::size_t n = 0; n < dim; ++n) {
    x[n] = v;
    v *= z;
  }
  return x;
}

double thermal_energy(double z) {
  if (z < 0.0 || z >= 1.0) throw std::domain_error("thermal_energy: z must lie in [0,1)");
  return z / (1.0 - z);
}

double thermal_entropy(double z) {
  if (z < 0.0 || z >= 1.0) throw std::domain_error("thermal_entropy: z must lie in [0,1)");
  if (z == 0.0) return 0.0;
  return -std::log1p(-z) - z * std::log(z) / (1.0 - z);
}

double entropy_to_z(double target_entropy) {
  if (target_entropy < 0.0) throw std::domain_error("entropy_to_z: entropy must be nonnegative");
  if (target_entropy == 0.0) return 0.0;
  double lo = 0.0, hi = 1.0 - 1e-15;
  if (thermal_entropy(hi) < target_entropy) return hi;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    double s = thermal_entropy(mid);
    if (std::abs(s - target_entropy) <= 1e-13) return mid;
    (s < target_entropy ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double schatten_norm(const Spectrum& x, double p) {
  if (p < 1.0) throw std::domain_error("schatten_norm: p must be >= 1");
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double v : x) {
    double r = std::abs(v) / m;
    if (r > 0.0) s += std::pow(r, p);
  }
  return m * std::pow(s, 1.0 / p);
}

double f_p_closed(double z, double p) {
  if (p <= 1.0) throw std::domain_error("f_p_closed: p must be > 1");
  if (z < 0.0 || z >= 1.0) throw std::domain_error("f_p_closed: z must lie in [0,1)");
  if (z == 0.0) return 1.0;
  return (1.0 - z) / std::pow(1.0 - std::pow(z, p), 1.0 / p);
}

double renyi_entropy(const Spectrum& x, double p) {
  if (p <= 0.0) throw std::domain_error("renyi_entropy: p must be positive");
  if (p == 1.0) throw std::domain_error("renyi_entropy: p = 1; use von_neumann_entropy");
  double m = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::domain_error("renyi_entropy: spectrum must be nonnegative");
    m = std::max(m, v);
  }
  if (m == 0.0) throw std::domain_error("renyi_entropy: zero spectrum");
  double s = 0.0;
  for (double v : x)
    if (v > 0.0) s += std::pow(v / m, p);
  // ln sum x^p = p ln m + ln s, stable for large and small p
  return (p * std::log(m) + std::log(s)) / (1.0 - p);
}

double von_neumann_entropy(const Spectrum& x) {
  double trace = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::domain_error("von_neumann_entropy: spectrum must be nonnegative");
    trace += v;
  }
  if (std::abs(trace - 1.0) > 1e-10) {
    std::ostringstream msg;
    msg << "von_neumann_entropy: spectrum not normalized, trace = " << trace;
    throw std::domain_error(msg.str());
  }
  double h = 0.0;
  for (double v : x)
    if (v > 0.0) h -= v * std::log(v);
  return h;
}

Spectrum fock_rearrange(const Spectrum& x) {
  for (double v : x)
    if (v < 0.0) throw std::domain_error("fock_rearrange: spectrum must be nonnegative");
  Spectrum out = x;
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

bool majorizes(const Spectrum& x, const Spectrum& y) {
  Spectrum xs = fock_rearrange(x);
  Spectrum ys = fock_rearrange(y);
  std::size_t dim = std::max(xs.size(), ys.size());
  xs.resize(dim, 0.0);
  ys.resize(dim, 0.0);
  double tx = 0.0, ty = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    tx += xs[i];
    ty += ys[i];
  }
  if (std::abs(tx - ty) > 1e-10)
    throw std::domain_error("majorizes: totals differ beyond tolerance");
  double px = 0.0, py = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    px += xs[i];
    py += ys[i];
    if (px < py - 1e-12) return false;
  }
  return true;
}

}  // namespace qgn
