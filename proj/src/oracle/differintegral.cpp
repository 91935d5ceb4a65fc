#include <algorithm>
#include <cmath>

#include "fracdiff/error.hpp"
#include "fracdiff/oracle.hpp"

namespace fracdiff::oracle {

namespace {

// h^-order sum_{k<N} w_k f(x - k h), h = x/N, w_k = (-1)^k C(order, k).
double gl_sum(const std::function<double(double)>& f, double x, double order, int N) {
  const double h = x / N;
  double w = 1.0, sum = 0.0;
  for (int k = 0; k < N; ++k) {
    if (k > 0) w *= 1.0 - (order + 1.0) / k;
    sum += w * f(x - k * h);
  }
  return std::pow(h, -order) * sum;
}

// Solves the dense system M c = v by Gaussian elimination with partial pivoting.
std::vector<double> solve_dense(std::vector<std::vector<double>> M, std::vector<double> v) {
  const std::size_t n = v.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
    }
    std::swap(M[col], M[piv]);
    std::swap(v[col], v[piv]);
    if (M[col][col] == 0.0) throw NonConvergence("gl_differintegral: singular extrapolation system");
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = M[r][col] / M[col][col];
      for (std::size_t c = col; c < n; ++c) M[r][c] -= m * M[col][c];
      v[r] -= m * v[col];
    }
  }
  std::vector<double> c(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = v[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= M[r][k] * c[k];
    c[r] = s / M[r][r];
  }
  return c;
}

}  // namespace

double gl_differintegral(const std::function<double(double)>& f, double x, double order, double lead,
                         int levels) {
  if (!(x > 0.0)) throw DomainError("gl_differintegral: x must be positive");
  if (levels < 1) throw ValidationError("gl_differintegral: need at least one level");

  // Error exponents: the regular grid terms h, h^2, ... and the endpoint terms h^(lead+1+j).
  std::vector<double> ex;
  for (int j = 0; j < 2 * levels; ++j) {
    ex.push_back(j + 1.0);
    ex.push_back(lead + 1.0 + j);
  }
  std::sort(ex.begin(), ex.end());
  ex.erase(std::unique(ex.begin(), ex.end(), [](double a, double b) { return std::abs(a - b) < 1e-9; }),
           ex.end());
  // an h^0 term is indistinguishable from the limit itself
  std::erase_if(ex, [](double e) { return std::abs(e) < 1e-9; });

  std::vector<double> hs, vals;
  for (int i = 0; i < levels; ++i) {
    const int N = 256 << i;
    hs.push_back(x / N);
    vals.push_back(gl_sum(f, x, order, N));
  }
  const std::size_t m = vals.size();
  std::vector<std::vector<double>> M(m, std::vector<double>(m, 1.0));
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 1; c < m; ++c) M[r][c] = std::pow(hs[r], ex[c - 1]);
  }
  return solve_dense(M, vals)[0];
}

}  // namespace fracdiff::oracle
