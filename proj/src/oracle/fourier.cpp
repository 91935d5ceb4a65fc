#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracdiff/error.hpp"
#include "fracdiff/oracle.hpp"

namespace fracdiff::oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr int kMinPanels = 8;
constexpr int kMaxPanels = 4000;

// Wynn epsilon table over partial sums; returns the latest even-column estimate.
class Wynn {
 public:
  double push(double s) {
    std::vector<double> next{s};
    for (std::size_t k = 0; k < row_.size(); ++k) {
      const double diff = next[k] - row_[k];
      const double prev = k == 0 ? 0.0 : row_[k - 1];
      if (diff == 0.0) break;
      next.push_back(prev + 1.0 / diff);
    }
    row_ = next;
    // even columns hold the accelerated estimates
    const std::size_t last_even = (row_.size() - 1) & ~std::size_t{1};
    return row_[last_even];
  }

 private:
  std::vector<double> row_;
};

}  // namespace

double fourier_invert(const std::function<double(double k, double t)>& charfun, double x, double t,
                      double quad_tol) {
  if (!(t > 0.0)) throw DomainError("fourier_invert: t must be positive");
  const double ax = std::abs(x);
  auto f = [&](double k) { return charfun(k, t); };
  double err = 0.0;

  if (ax == 0.0) {
    // no oscillation: split at k = 1 and map the tail k = 1/v onto (0, 1]
    boost::math::quadrature::tanh_sinh<double> ts;
    const double head = ts.integrate(f, 0.0, 1.0, quad_tol, &err);
    auto mapped = [&](double v) {
      const double k = 1.0 / v;
      const double fv = std::isfinite(k) ? f(k) : 0.0;
      return fv == 0.0 ? 0.0 : fv * k * k;
    };
    const double tail = ts.integrate(mapped, 0.0, 1.0, quad_tol, &err);
    return (head + tail) / std::numbers::pi;
  }

  auto g = [&](double k) { return std::cos(k * ax) * f(k); };
  const double period = std::numbers::pi / ax;
  // panels between consecutive zeros of cos(k x)
  double lo = 0.0, hi = 0.5 * period;
  double partial = 0.0, prev_est = std::numeric_limits<double>::quiet_NaN();
  Wynn wynn;
  int stable = 0;
  for (int panel = 0; panel < kMaxPanels; ++panel) {
    const double piece = gauss_kronrod<double, 31>::integrate(g, lo, hi, 15, 1e-12, &err);
    partial += piece;
    const double est = wynn.push(partial);
    const double scale = std::max(std::abs(est), 1e-300);
    if (panel >= kMinPanels &&
        (std::abs(est - prev_est) <= quad_tol * scale || std::abs(piece) <= 1e-3 * quad_tol * scale)) {
      if (++stable >= 2) return est / std::numbers::pi;
    } else {
      stable = 0;
    }
    prev_est = est;
    lo = hi;
    hi += period;
  }
  std::ostringstream os;
  os << "fourier_invert: tail did not converge at x=" << x;
  throw NonConvergence(os.str());
}

}  // namespace fracdiff::oracle
