#include <cmath>
#include <sstream>

#include "fracdiff/error.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::specfun {

namespace {

void validate(const LaguerreSpec& spec) {
  if (spec.n < 0 || !(spec.alpha > -1.0)) {
    std::ostringstream os;
    os << "laguerre: need n >= 0 and alpha > -1, got n=" << spec.n << " alpha=" << spec.alpha;
    throw ValidationError(os.str());
  }
}

}  // namespace

double laguerre(const LaguerreSpec& spec, double x) {
  validate(spec);
  const double a = spec.alpha;
  double prev = 1.0;
  if (spec.n == 0) return prev;
  double cur = 1.0 + a - x;
  // (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}
  for (int k = 1; k < spec.n; ++k) {
    const double next = ((2.0 * k + 1.0 + a - x) * cur - (k + a) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

long double laguerre_explicit(const LaguerreSpec& spec, long double x) {
  validate(spec);
  const int n = spec.n;
  const long double a = spec.alpha;
  // C(n+a, n-k) = prod_{j=k+1}^{n} (a+j) / (n-k)!
  long double sum = 0.0L;
  for (int k = 0; k <= n; ++k) {
    long double binom = 1.0L;
    for (int j = k + 1; j <= n; ++j) binom *= (a + j) / static_cast<long double>(j - k);
    long double xk = 1.0L;
    for (int j = 1; j <= k; ++j) xk *= x / j;
    sum += ((k % 2) ? -1.0L : 1.0L) * binom * xk;
  }
  return sum;
}

}  // namespace fracdiff::specfun
