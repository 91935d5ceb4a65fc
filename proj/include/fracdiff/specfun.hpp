#pragma once

// Special-function kernel: complex gamma, two-parameter Mittag-Leffler,
// modified Bessel K of real order, associated Laguerre polynomials.
//
// Everything here is pure and re-entrant.

#include <complex>
#include <utility>

namespace fracdiff::specfun {

using cplx = std::complex<double>;

// ---------------------------------------------------------------- gamma

/// Gamma function for complex argument (Lanczos, reflected for Re z < 1/2).
/// Throws PoleError when z is within 1e-14 of a nonpositive integer.
cplx gamma(cplx z);

/// A logarithm of Gamma(z): exp(log_gamma(z)) == gamma(z). The imaginary
/// part is not reduced to the principal branch.
cplx log_gamma(cplx z);

/// log|Gamma(x)| and sign(Gamma(x)) for real x. Throws PoleError at poles.
std::pair<double, int> log_abs_gamma(double x);

/// log|Gamma(n + delta)| and its sign for integer-valued n and |delta| <= 1/2.
/// Near a pole the distance delta is used as given, so it keeps its full
/// relative accuracy instead of being rounded against n.
std::pair<double, int> log_abs_gamma_split(double n, double delta);

/// 1/Gamma(x) for real x; exactly zero at the poles of Gamma.
double rgamma(double x);

/// True if x lies within `tol` of a nonpositive integer.
bool is_gamma_pole(double x, double tol = 1e-14);

// ------------------------------------------------------- Mittag-Leffler

struct MittagLefflerSpec {
  double alpha = 1.0;
  double beta = 1.0;
};

struct MittagLefflerOptions {
  /// |z| at which evaluation switches from the Taylor series to the
  /// spectral integral representation (negative z only).
  double switch_radius = 1.0;
};

/// E_{alpha,beta}(z) for real z and 0 < alpha <= 2.
/// Throws DomainError if alpha <= 0 or alpha > 2.
double mittag_leffler(const MittagLefflerSpec& spec, double z,
                      const MittagLefflerOptions& opts = {});

/// Taylor branch, usable for any real z (loses accuracy for large negative z).
double mittag_leffler_series(const MittagLefflerSpec& spec, double z);

/// Spectral-integral branch for z < 0:
///   E(-x) = int_0^inf e^{-r} K(r) dr  (+ two residues when alpha > 1).
double mittag_leffler_integral(const MittagLefflerSpec& spec, double z);

// ------------------------------------------------------------ Bessel K

/// K_order(x) for real order and x > 0. Even in order.
double bessel_k(double order, double x);

/// K_order(w) on the principal branch, |arg w| < pi.
cplx bessel_k(double order, cplx w);

// ------------------------------------------------------------ Laguerre

struct LaguerreSpec {
  int n = 0;
  double alpha = 0.0;
};

/// L_n^(alpha)(x) by the three-term recurrence. Requires n >= 0, alpha > -1.
double laguerre(const LaguerreSpec& spec, double x);

/// Explicit binomial sum sum_k (-1)^k C(n+alpha, n-k) x^k / k!, in long double.
/// Kept as an oracle for the recurrence; cancels badly for large n and x.
long double laguerre_explicit(const LaguerreSpec& spec, long double x);

}  // namespace fracdiff::specfun
