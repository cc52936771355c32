#ifndef QGN_MOE_HPP
#define QGN_MOE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qgn/channels.hpp"
#include "qgn/fock.hpp"

namespace qgn {

enum class StateFamily { tempered_random, two_point_mix };

/// Probability vector with a prescribed von Neumann entropy.
struct MatchedState {
  Spectrum spectrum;
  double target_entropy = 0.0;
  double achieved_entropy = 0.0;
  StateFamily family = StateFamily::tempered_random;
  std::uint64_t seed = 0;
};

/// Builds a dim-dimensional probability vector with entropy target_S.
/// tempered_random: random positive v, return v^beta / sum with beta solved
/// by bisection (entropy is monotone in beta, from ln(dim) at 0 to 0 at inf).
/// two_point_mix: one level u plus dim-1 equal levels, u solved by bisection.
MatchedState match_entropy_state(double target_S, std::size_t dim, StateFamily family,
                                 std::uint64_t seed);

/// S(Phi(rho)) - S(Phi(omega_z)); rho must have entropy thermal_entropy(z)
/// within 1e-9. Expected nonnegative up to truncation error.
double output_entropy_gap(const ChannelSpec& spec, const MatchedState& rho, double z);

/// Renyi chain for the amplifier: find p in (1,q) with z_star(p) = z, then
/// check S_q(A(rho)) >= S_q(A(omega_z)) + ((p-1)/(q-1))(q/p)(S_p(rho) -
/// S_p(omega_z)) over random states.
struct RenyiChainResult {
  bool found = false;
  double p_found = 0.0;
  double lhs = 0.0;    // S_q(A(rho)) at the worst trial
  double rhs = 0.0;    // chain right-hand side at the worst trial
  double slack = 0.0;  // min over trials of lhs - rhs
  std::vector<std::pair<double, double>> z_star_curve;  // (p, z_star(p)) scan
};

RenyiChainResult renyi_chain_check(double kappa, double z, double q, std::size_t trials = 100,
                                   std::uint64_t seed = 42);

/// Per-trial seed derived from the master seed and trial index (splitmix64).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace qgn

#endif
