#pragma once

// Fox H-function H^{m,n}_{p,q}[z | (a_j,A_j); (b_j,B_j)] for real z > 0.
//
//   H(z) = (1/2 pi i) int_L chi(s) z^{-s} ds,
//   chi(s) = prod_{j<=m} G(b_j+B_j s) prod_{j<=n} G(1-a_j-A_j s)
//          / [prod_{j>m} G(1-b_j-B_j s) prod_{j>n} G(a_j+A_j s)].
//
// Two independent routes: the residue series and direct quadrature along a
// vertical Mellin-Barnes contour.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace fracdiff::foxh {

using cplx = std::complex<double>;

/// One Gamma-argument pair: (a_j, A_j) in the upper row or (b_j, B_j) in the lower row.
struct Param {
  double shift = 0.0;
  double scale = 1.0;
};

class FoxHSpec {
 public:
  /// Validates the structure and pole separability.
  /// Throws ValidationError (structure) or PoleError (left/right pole collision).
  static FoxHSpec make(int m, int n, int p, int q, std::vector<Param> upper,
                       std::vector<Param> lower);

  int m() const { return m_; }
  int n() const { return n_; }
  int p() const { return p_; }
  int q() const { return q_; }
  const std::vector<Param>& upper() const { return upper_; }
  const std::vector<Param>& lower() const { return lower_; }

  /// Delta = sum B_j - sum A_j. Left residue series converges for all z when Delta > 0.
  double delta() const { return delta_; }
  /// a* = sum_{j<=m} B + sum_{j<=n} A - sum_{j>m} B - sum_{j>n} A; the contour integrand
  /// decays like exp(-pi a* |Im s| / 2), so the contour route needs a* > 0.
  double contour_exponent() const { return astar_; }
  /// rho = prod A^{-A} prod B^{B}; radius of convergence of the series when Delta = 0.
  double series_radius() const { return rho_; }
  /// Rightmost pole of the left family, max_{j<=m} (-b_j/B_j).
  double left_bound() const { return left_bound_; }
  /// Leftmost pole of the right family, min_{j<=n} (1-a_j)/A_j; +inf when n = 0.
  double right_bound() const { return right_bound_; }

  /// chi(s). Exactly zero where a denominator Gamma has a pole on the real axis.
  cplx kernel(cplx s) const;

  /// Copies with b_j (lower) or a_j (upper) shifted by eps; used to split coincident poles.
  FoxHSpec with_lower_shift(std::size_t j, double eps) const;
  FoxHSpec with_upper_shift(std::size_t j, double eps) const;

  bool operator==(const FoxHSpec& o) const;

 private:
  FoxHSpec() = default;
  int m_ = 0, n_ = 0, p_ = 0, q_ = 0;
  std::vector<Param> upper_, lower_;
  double delta_ = 0.0, astar_ = 0.0, rho_ = 0.0;
  double left_bound_ = 0.0, right_bound_ = 0.0;
};

enum class Route { Series, Contour, Asymptotic };

struct FoxHValue {
  double value = 0.0;
  /// Declared absolute error estimate.
  double error = 0.0;
  Route route = Route::Series;
  /// Residue terms summed, or contour nodes used.
  int work = 0;
};

/// Residue series (left poles if Delta > 0 or z < rho, right poles otherwise).
/// Throws NonConvergence when the terms do not settle; DomainError if z <= 0.
FoxHValue eval_series(const FoxHSpec& spec, double z);

/// Trapezoidal quadrature on the vertical line Re s = c through the real saddle
/// point of chi(s) z^{-s}; the step halves until the declared error stabilizes.
/// Throws DomainError when no admissible contour exists, NonConvergence otherwise.
FoxHValue eval_contour(const FoxHSpec& spec, double z);

/// Residue sum over the family whose series diverges (right poles when
/// Delta > 0, left poles when Delta < 0), truncated before its smallest term.
/// An asymptotic expansion for large z (Delta > 0) or small z (Delta < 0);
/// the declared error is the first omitted term.
FoxHValue eval_asymptotic(const FoxHSpec& spec, double z);

/// The first of series, contour and asymptotic expansion whose declared
/// relative error is <= 1e-12; failing that, the one with the smallest error.
FoxHValue eval(const FoxHSpec& spec, double z);

/// Memoizing front end. Results are keyed by the exact bits of (spec, z);
/// safe for concurrent use, and concurrent calls return the serial values.
class Evaluator {
 public:
  FoxHValue operator()(const FoxHSpec& spec, double z);
  std::size_t cache_size() const;
  void clear();

 private:
  using Key = std::vector<std::uint64_t>;
  static Key make_key(const FoxHSpec& spec, double z);
  mutable std::mutex mu_;
  std::map<Key, FoxHValue> cache_;
};

}  // namespace fracdiff::foxh
