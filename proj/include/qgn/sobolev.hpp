#ifndef QGN_SOBOLEV_HPP
#define QGN_SOBOLEV_HPP

#include <array>
#include <vector>

#include "qgn/fock.hpp"

namespace qgn {

/// mu(z,a) = (a z^((a-1)/a) - 1 + (1-a) z) / ln z^(1/a), extended by 0 at
/// z = 1. Strictly negative on (0,1) x (0,1). Evaluated through expm1 so the
/// double cancellation near z = 1 does not lose precision.
double mu(double z, double a);

/// h(s) = s^(a-1) - 1.
double sobolev_h(double s, double a);

/// nu(s,a) = mu(s^a, a); strictly increasing in s, range (-inf, 0).
double nu(double s, double a);

/// Derivative-of-norm functional sum_n n (x_n x_{n-1}^(1/a-1) - x_n^(1/a)).
/// Requires sum x_n^(1/a) = 1 within 1e-10; the input is renormalized to an
/// exact unit sum before evaluation.
double F_a(const Spectrum& x, double a);

/// Entropy of the probability vector x_n^(1/a) (same admissibility rule).
double S_a(const Spectrum& x, double a);

/// S_a without the admissibility precondition: entropy of the normalized
/// power x^(1/a) / sum x^(1/a).
double S_a_general(const Spectrum& x, double a);

/// F_a(x) + mu(z,a) S_a(x).
double script_F(double z, double a, const Spectrum& x);

/// Closed-form value of the functional at the thermal reference:
/// xi h(xi)/(1-xi) + nu(xi,a) S(omega_xi) with xi = z^(1/a).
double thermal_reference_value(double z, double a);

/// Admissible spectrum whose functional value equals the closed-form
/// reference: x_n = ((1-xi) xi^n)^a.
Spectrum thermal_reference_spectrum(double z, double a, const TruncationPolicy& policy = {});

/// thermal_reference_value - script_F(x); nonnegative for admissible x.
double logsobolev_margin(double z, double a, const Spectrum& x);

/// |F_a(x) - d/dt ln||e^{tL}(x)||_{1/a} at t=0|, the derivative taken by a
/// second-order one-sided difference (the flow exists for t >= 0 only).
double F_a_fd_check(const Spectrum& x, double a, double dt);

/// |S_a(x) - d/da ln||x||_{1/a}| with a central difference of step da.
double dlnnorm_da_check(const Spectrum& x, double a, double da);

/// Shooting solve of a'(t) = mu(z(t), a(t)) along the attenuation flow.
struct ShootingResult {
  double z0 = 0.0;
  std::vector<std::array<double, 3>> trajectory;  // (t, a(t), z(t))
  bool converged = false;
  double residual = 0.0;  // |a(T) - 1/q|
};

/// Finds z0 in (0,1) such that integrating a' = mu(z(t),a) with a(0) = 1/p
/// and z(t) = e^{-t} z0 / (1-(1-e^{-t}) z0) over [0, -ln lambda] lands at
/// a(T) = 1/q within tol. Outer solve is a bracketing scan plus bisection.
ShootingResult ode_shoot(double lambda, double p, double q, double tol);

}  // namespace qgn

#endif
