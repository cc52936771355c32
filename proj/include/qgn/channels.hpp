#ifndef QGN_CHANNELS_HPP
#define QGN_CHANNELS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "qgn/fock.hpp"

namespace qgn {

enum class ChannelKind { attenuator, amplifier, composite };

/// Parameter record for the quantum-limited channels acting on Fock-diagonal
/// spectra. composite means amplifier after attenuator.
struct ChannelSpec {
  ChannelKind kind = ChannelKind::attenuator;
  double lambda = 1.0;  // transmissivity, in [0,1]
  double kappa = 1.0;   // amplification, >= 1

  static ChannelSpec attenuator(double lambda);
  static ChannelSpec amplifier(double kappa);
  static ChannelSpec composite(double lambda, double kappa);
  void validate() const;
  std::string name() const;
};

/// Column-stochastic transition matrix on photon-number distributions.
/// entries[n][k] = probability of output n given input k, stored row-major.
struct KernelMatrix {
  std::vector<double> entries;
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;

  double at(std::size_t n, std::size_t k) const { return entries[n * in_dim + k]; }
  double& at(std::size_t n, std::size_t k) { return entries[n * in_dim + k]; }
  double column_mass(std::size_t k) const;
  double min_column_mass() const;
};

/// Binomial transition kernel: entry[n][k] = C(k,n) lambda^n (1-lambda)^(k-n)
/// for n <= k, zero otherwise. out_dim = in_dim.
KernelMatrix attenuator_kernel(double lambda, std::size_t in_dim);

/// Amplification kernel entry[n][k] = (1/kappa) C(n,k) kappa^(-k)
/// (1-1/kappa)^(n-k) for n >= k. out_dim grows until every column carries
/// mass >= 1 - eps_tail (capped at max_dim); columns are never renormalized.
KernelMatrix amplifier_kernel(double kappa, std::size_t in_dim,
                              const TruncationPolicy& policy = {});

/// Same kernel with an explicitly requested output dimension.
KernelMatrix amplifier_kernel_fixed(double kappa, std::size_t in_dim, std::size_t out_dim);

/// output[n] = sum_k entry[n][k] x[k]; requires x.size() <= in_dim.
Spectrum apply(const KernelMatrix& kernel, const Spectrum& x);

/// Attenuation flow at time t >= 0, i.e. the attenuator with lambda = e^{-t}.
Spectrum semigroup_apply(double t, const Spectrum& x);

/// Image of the thermal parameter under the channel: the thermal family is
/// preserved with z' = lambda z / (1-(1-lambda)z) (attenuator) and
/// z' = (z+kappa-1)/kappa (amplifier).
double thermal_image(const ChannelSpec& spec, double z);

/// |kappa <y, A_kappa(x)> - <E_{1/kappa}(y), x>|, both sides evaluated with
/// output dimensions padded so the pairing is exact up to rounding.
double duality_residual(const Spectrum& x, const Spectrum& y, double kappa);

/// Dispatches to the kernel(s) named by the spec.
Spectrum apply_channel(const ChannelSpec& spec, const Spectrum& x,
                       const TruncationPolicy& policy = {});

/// Classical thinning of a probability distribution; identical to the
/// attenuator restricted to normalized inputs.
Spectrum thinning(const Spectrum& p_dist, double lambda);

}  // namespace qgn

#endif
