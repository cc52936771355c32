#ifndef QGN_KKT_HPP
#define QGN_KKT_HPP

#include <cstdint>
#include <vector>

#include "qgn/fock.hpp"

namespace qgn {

/// Maximizer candidate on the simplex, stored in the probability variables
/// p_n = x_n^(1/a) (the constraint sum p = 1 is linear there).
struct SimplexPoint {
  std::vector<double> p;
  double a = 0.5;
  double objective = 0.0;
  bool converged = true;

  /// Back to spectrum coordinates, x_n = p_n^a.
  Spectrum spectrum() const;
};

/// Stationarity certificate at a candidate maximizer.
struct KKTReport {
  double multiplier = 0.0;                      // least-squares Lagrange multiplier
  std::vector<double> stationarity_residuals;   // one per (strictly positive) entry
  std::vector<double> w;                        // successive ratios p_{n+1}/p_n
  bool monotone = false;                        // xi >= w_0 >= ... >= w_{N-1}
  double max_residual = 0.0;                    // over interior indices n < N
};

/// Objective F_a + mu(z,a) S_a expressed in the p variables.
double simplex_objective(const std::vector<double>& p, double z, double a);

/// Gradient of simplex_objective; the stationarity condition is that all
/// components agree on the support.
std::vector<double> simplex_gradient(const std::vector<double>& p, double z, double a);

/// Maximizes the functional over the probability simplex of dimension N+1
/// by multiplicative-weights ascent from 8 geometric and 8 seeded random
/// starts, followed by a damped Newton polish in log coordinates. The
/// returned point is sorted nonincreasing.
SimplexPoint maximize_simplex(double z, double a, std::size_t N, std::uint64_t seed);

/// Evaluates the stationarity residuals |grad_n - multiplier| with the
/// multiplier chosen by least squares over interior indices, plus the ratio
/// sequence w and its monotonicity against xi = z^(1/a). All entries of the
/// candidate must be strictly positive.
KKTReport kkt_residuals(const SimplexPoint& point, double z);

/// |LHS - RHS| of the ratio recursion obtained by differencing consecutive
/// stationarity conditions; needs w_{n-2}, w_{n-1}, w_n, so 2 <= n <= len-1.
double recursion_residual(const std::vector<double>& w, double a, double xi, std::size_t n);

}  // namespace qgn

#endif
