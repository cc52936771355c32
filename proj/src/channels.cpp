#include "qgn/channels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgn {
namespace {

// cumulative log-factorial table, lf[n] = ln(n!)
std::vector<double> log_factorials(std::size_t n_max) {
  std::vector<double> lf(n_max + 1, 0.0);
  for (std::size_t n = 1; n <= n_max; ++n) lf[n] = lf[n - 1] + std::log(double(n));
  return lf;
}

}  // namespace

ChannelSpec ChannelSpec::attenuator(double lambda) {
  ChannelSpec s{ChannelKind::attenuator, lambda, 1.0};
  s.validate();
  return s;
}

ChannelSpec ChannelSpec::amplifier(double kappa) {
  ChannelSpec s{ChannelKind::amplifier, 1.0, kappa};
  s.validate();
  return s;
}

ChannelSpec ChannelSpec::composite(double lambda, double kappa) {
  ChannelSpec s{ChannelKind::composite, lambda, kappa};
  s.validate();
  return s;
}

void ChannelSpec::validate() const {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::domain_error("ChannelSpec: lambda must lie in [0,1]");
  if (kappa < 1.0) throw std::domain_error("ChannelSpec: kappa must be >= 1");
}

std::string ChannelSpec::name() const {
  switch (kind) {
    case ChannelKind::attenuator: return "attenuator";
    case ChannelKind::amplifier: return "amplifier";
    case ChannelKind::composite: return "composite";
  }
  return "?";
}

double KernelMatrix::column_mass(std::size_t k) const {
  double s = 0.0;
  for (std::size_t n = 0; n < out_dim; ++n) s += at(n, k);
  return s;
}

double KernelMatrix::min_column_mass() const {
  double m = 1.0;
  for (std::size_t k = 0; k < in_dim; ++k) m = std::min(m, column_mass(k));
  return m;
}

KernelMatrix attenuator_kernel(double lambda, std::size_t in_dim) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::domain_error("attenuator_kernel: lambda must lie in [0,1]");
  if (in_dim == 0) throw std::domain_error("attenuator_kernel: in_dim must be >= 1");
  KernelMatrix kern;
  kern.in_dim = kern.out_dim = in_dim;
  kern.entries.assign(in_dim * in_dim, 0.0);
  if (lambda == 0.0) {
    // exact point-mass limit: every photon absorbed
    for (std::size_t k = 0; k < in_dim; ++k) kern.at(0, k) = 1.0;
    return kern;
  }
  if (lambda == 1.0) {
    for (std::size_t k = 0; k < in_dim; ++k) kern.at(k, k) = 1.0;
    return kern;
  }
  const auto lf = log_factorials(in_dim);
  const double ll = std::log(lambda), l1 = std::log1p(-lambda);
  for (std::size_t k = 0; k < in_dim; ++k)
    for (std::size_t n = 0; n <= k; ++n) {
      double logc = lf[k] - lf[n] - lf[k - n];
      kern.at(n, k) = std::exp(logc + double(n) * ll + double(k - n) * l1);
    }
  return kern;
}

KernelMatrix amplifier_kernel_fixed(double kappa, std::size_t in_dim, std::size_t out_dim) {
  if (kappa < 1.0) throw std::domain_error("amplifier_kernel: kappa must be >= 1");
  if (in_dim == 0 || out_dim == 0)
    throw std::domain_error("amplifier_kernel: dimensions must be >= 1");
  KernelMatrix kern;
  kern.in_dim = in_dim;
  kern.out_dim = out_dim;
  kern.entries.assign(out_dim * in_dim, 0.0);
  if (kappa == 1.0) {
    for (std::size_t k = 0; k < std::min(in_dim, out_dim); ++k) kern.at(k, k) = 1.0;
    return kern;
  }
  const auto lf = log_factorials(out_dim);
  const double lk = std::log(kappa), l1 = std::log1p(-1.0 / kappa);
  for (std::size_t k = 0; k < in_dim; ++k)
    for (std::size_t n = k; n < out_dim; ++n) {
      double logc = lf[n] - lf[k] - lf[n - k];
      kern.at(n, k) = std::exp(logc - double(k + 1) * lk + double(n - k) * l1);
    }
  return kern;
}

KernelMatrix amplifier_kernel(double kappa, std::size_t in_dim, const TruncationPolicy& policy) {
  if (kappa == 1.0) return amplifier_kernel_fixed(kappa, in_dim, in_dim);
  std::size_t out_dim = std::min(policy.max_dim, std::max<std::size_t>(in_dim, 8));
  for (;;) {
    KernelMatrix kern = amplifier_kernel_fixed(kappa, in_dim, out_dim);
    if (kern.min_column_mass() >= 1.0 - policy.eps_tail || out_dim >= policy.max_dim)
      return kern;
    out_dim = std::min(policy.max_dim, out_dim * 2);
  }
}

Spectrum apply(const KernelMatrix& kernel, const Spectrum& x) {
  if (x.size() > kernel.in_dim)
    throw std::domain_error("apply: input dimension exceeds kernel in_dim");
  Spectrum out(kernel.out_dim, 0.0);
  for (std::size_t n = 0; n < kernel.out_dim; ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += kernel.at(n, k) * x[k];
    out[n] = s;
  }
  return out;
}

Spectrum semigroup_apply(double t, const Spectrum& x) {
  if (t < 0.0) throw std::domain_error("semigroup_apply: t must be >= 0");
  return qgn::apply(attenuator_kernel(std::exp(-t), x.size()), x);
}

double thermal_image(const ChannelSpec& spec, double z) {
  spec.validate();
  if (z < 0.0 || z >= 1.0) throw std::domain_error("thermal_image: z must lie in [0,1)");
  switch (spec.kind) {
    case ChannelKind::attenuator:
      return spec.lambda * z / (1.0 - (1.0 - spec.lambda) * z);
    case ChannelKind::amplifier:
      return (z + spec.kappa - 1.0) / spec.kappa;
    case ChannelKind::composite: {
      double za = thermal_image(ChannelSpec::attenuator(spec.lambda), z);
      return thermal_image(ChannelSpec::amplifier(spec.kappa), za);
    }
  }
  return z;
}

double duality_residual(const Spectrum& x, const Spectrum& y, double kappa) {
  if (kappa < 1.0) throw std::domain_error("duality_residual: kappa must be >= 1");
  // Amplified x only needs to reach the support of y, so both pairings are
  // finite sums of the same kernel entries.
  KernelMatrix amp = amplifier_kernel_fixed(kappa, x.size(), y.size());
  Spectrum ax = qgn::apply(amp, x);
  double lhs = 0.0;
  for (std::size_t n = 0; n < y.size(); ++n) lhs += y[n] * ax[n];
  lhs *= kappa;
  Spectrum ey = qgn::apply(attenuator_kernel(1.0 / kappa, y.size()), y);
  double rhs = 0.0;
  for (std::size_t k = 0; k < std::min(x.size(), ey.size()); ++k) rhs += ey[k] * x[k];
  return std::abs(lhs - rhs);
}

Spectrum apply_channel(const ChannelSpec& spec, const Spectrum& x,
                       const TruncationPolicy& policy) {
  spec.validate();
  switch (spec.kind) {
    case ChannelKind::attenuator:
      return qgn::apply(attenuator_kernel(spec.lambda, x.size()), x);
    case ChannelKind::amplifier:
      return qgn::apply(amplifier_kernel(spec.kappa, x.size(), policy), x);
    case ChannelKind::composite: {
      Spectrum mid = qgn::apply(attenuator_kernel(spec.lambda, x.size()), x);
      return qgn::apply(amplifier_kernel(spec.kappa, mid.size(), policy), mid);
    }
  }
  return x;
}

Spectrum thinning(const Spectrum& p_dist, double lambda) {
  double total = 0.0;
  for (double v : p_dist) {
    if (v < 0.0) throw std::domain_error("thinning: distribution must be nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::domain_error("thinning: distribution not normalized");
  return qgn::apply(attenuator_kernel(lambda, p_dist.size()), p_dist);
}

}  // namespace qgn
