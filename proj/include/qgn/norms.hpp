#ifndef QGN_NORMS_HPP
#define QGN_NORMS_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "qgn/channels.hpp"
#include "qgn/fock.hpp"

namespace qgn {

enum class NormMethod { gaussian_scan, brute_force, closed_form, shooting };

/// Result record for a p -> q norm computation.
struct NormReport {
  ChannelSpec channel;
  double p = 0.0;
  double q = 0.0;
  NormMethod method = NormMethod::gaussian_scan;
  std::optional<double> z_star;
  double value = 0.0;
  bool infinite = false;
  double truncation_loss = 0.0;
  double optimizer_gap = 0.0;
  std::uint64_t runtime_ms = 0;
};

/// Thermal-input ratio ||Phi(omega_z)||_q / ||omega_z||_p, in closed form.
double gaussian_ratio(const ChannelSpec& spec, double p, double q, double z);

/// Maximizes gaussian_ratio over z in (0,1): coarse grid, two refinements,
/// then golden-section. Requires 1 < p < q (interior maximum).
NormReport optimize_gaussian_z(const ChannelSpec& spec, double p, double q);

/// Independent certificate: maximize ||Phi(x)||_q / ||x||_p over nonnegative
/// x of dimension N+1 by projected gradient ascent with multi-start.
struct BruteForceResult {
  NormReport report;
  Spectrum argmax;  // normalized to ||x||_p = 1
};
BruteForceResult brute_force_ratio(const ChannelSpec& spec, double p, double q, std::size_t N,
                                   std::uint64_t seed, int starts = 16);

/// p -> p norm in closed form: lambda^((1-p)/p) resp. kappa^((1-p)/p).
NormReport norm_pp(const ChannelSpec& spec, double p);

/// Ratio at z = 1 - eps for each eps; diverges for q < p with log-log slope
/// (q-1)/q - (p-1)/p.
std::vector<std::pair<double, double>> divergence_diagnostic(const ChannelSpec& spec, double p,
                                                             double q,
                                                             const std::vector<double>& eps_grid);

/// Upper bound inf_r ||A_kappa||_{r->q} ||E_lambda||_{p->r} over a Chebyshev
/// r-grid in [p,q] (endpoints via the p->p closed forms), refined by
/// golden-section around the grid minimum.
double composite_bound(double lambda, double kappa, double p, double q,
                       const std::vector<double>& r_grid = {});

/// Chebyshev-spaced grid of n points in [lo, hi].
std::vector<double> chebyshev_grid(double lo, double hi, int n);

}  // namespace qgn

#endif
