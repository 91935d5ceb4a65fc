#include <algorithm>
#include <cmath>

#include "fracdiff/oracle.hpp"

namespace fracdiff::oracle {

void history_sum_serial(const double* rows, const double* w, std::size_t count, std::size_t n,
                        double* out) {
  std::fill(out, out + n, 0.0);
  for (std::size_t j = 0; j < count; ++j) {
    const double wj = w[j];
    const double* row = rows + j * n;
    for (std::size_t i = 0; i < n; ++i) out[i] += wj * row[i];
  }
}

void history_sum_parallel(const double* rows, const double* w, std::size_t count, std::size_t n,
                          double* out) {
  // Threads own disjoint column blocks, so each out[i] still sees ascending j.
  constexpr std::size_t kBlock = 256;
  const long blocks = static_cast<long>((n + kBlock - 1) / kBlock);
#pragma omp parallel for schedule(static)
  for (long b = 0; b < blocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    std::fill(out + lo, out + hi, 0.0);
    for (std::size_t j = 0; j < count; ++j) {
      const double wj = w[j];
      const double* row = rows + j * n;
      for (std::size_t i = lo; i < hi; ++i) out[i] += wj * row[i];
    }
  }
}

std::vector<double> l1_weights(double gamma, std::size_t count) {
  std::vector<double> b(count);
  const double e = 1.0 - gamma;
  for (std::size_t j = 0; j < count; ++j) {
    b[j] = std::pow(j + 1.0, e) - std::pow(static_cast<double>(j), e);
  }
  return b;
}

std::vector<double> memory_weights(double alpha, std::size_t n) {
  std::vector<double> a(n + 1);
  const double e = alpha + 1.0;
  const double nn = static_cast<double>(n);
  if (n == 0) return {0.0};
  a[0] = std::pow(nn - 1.0, e) - (nn - e) * std::pow(nn, alpha);
  for (std::size_t j = 1; j < n; ++j) {
    const double m = nn - static_cast<double>(j);
    a[j] = std::pow(m + 1.0, e) - 2.0 * std::pow(m, e) + std::pow(m - 1.0, e);
  }
  a[n] = 1.0;
  return a;
}

}  // namespace fracdiff::oracle
