#ifndef QGN_FOCK_HPP
#define QGN_FOCK_HPP

#include <cstddef>
#include <vector>

namespace qgn {

/// Eigenvalues of a Fock-diagonal operator, indexed by photon number.
using Spectrum = std::vector<double>;

/// Controls where infinite geometric families are cut off.
struct TruncationPolicy {
  double eps_tail = 1e-14;   // relative tail mass bound
  std::size_t max_dim = 512;
};

/// Geometric (thermal) spectrum (1-z) z^n, truncated so that the tail
/// z^(N+1) <= eps_tail, capped at max_dim entries. z = 0 gives the vacuum (1).
Spectrum make_thermal(double z, const TruncationPolicy& policy = {});

/// Mean photon number z/(1-z) of the thermal family.
double thermal_energy(double z);

/// Entropy -ln(1-z) - z ln(z)/(1-z) of the thermal family; 0 at z = 0.
double thermal_entropy(double z);

/// Inverts thermal_entropy by bisection; |S(z) - target| <= 1e-12.
double entropy_to_z(double target_entropy);

/// l^p norm of the spectrum, p >= 1. Rescales by the max entry so large p
/// does not overflow. Signed entries allowed.
double schatten_norm(const Spectrum& x, double p);

/// Closed form (1-z)/(1-z^p)^(1/p) for the p-norm of the thermal spectrum.
double f_p_closed(double z, double p);

/// Renyi entropy p/(1-p) ln||x||_p, p > 0, p != 1, x nonnegative.
double renyi_entropy(const Spectrum& x, double p);

/// -sum x ln x for a probability vector (trace within 1e-10 of 1).
double von_neumann_entropy(const Spectrum& x);

/// Entries sorted in nonincreasing order.
Spectrum fock_rearrange(const Spectrum& x);

/// Partial-sum dominance of the decreasing rearrangements. Inputs are padded
/// to a common length and must have equal totals within 1e-10.
bool majorizes(const Spectrum& x, const Spectrum& y);

}  // namespace qgn

#endif
