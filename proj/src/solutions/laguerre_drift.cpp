#include <cmath>
#include <sstream>

#include "fracdiff/error.hpp"
#include "fracdiff/solutions.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::solutions {

namespace {

void require_laguerre(const DiffusionParams& p, const char* op) {
  if (p.case_tag != CaseTag::LaguerreDrift) {
    throw ValidationError(std::string(op) + ": needs case laguerre-drift, got " +
                          to_string(p.case_tag));
  }
  p.validate();
}

// y = k1 |x|^(2+theta) / ((2+theta) D)
double reduced(const DiffusionParams& p, double x) {
  return p.k1 * std::pow(std::abs(x), 2.0 + p.theta) / ((2.0 + p.theta) * p.D);
}

// (k2 + D) / ((2+theta) D) = alpha + 1
double mass_exponent(const DiffusionParams& p) {
  return (p.k2 + p.D) / ((2.0 + p.theta) * p.D);
}

// |x|^(k2/D) exp(-y); exactly 1 at x = 0 when k2 = 0.
double envelope(const DiffusionParams& p, double x) {
  const double y = reduced(p, x);
  if (p.k2 == 0.0) return std::exp(-y);
  const double ax = std::abs(x);
  if (ax == 0.0 || !std::isfinite(y)) return 0.0;
  return std::exp(p.k2 / p.D * std::log(ax) - y);
}

// (2+theta)/2 (k1/((2+theta)D))^e; the 1/2 spreads the mass over both half-lines.
double weight_prefactor(const DiffusionParams& p) {
  const double w = 2.0 + p.theta;
  return 0.5 * w * std::pow(p.k1 / (w * p.D), mass_exponent(p));
}

}  // namespace

double laguerre_order(const DiffusionParams& p) {
  return (p.k2 / p.D - 1.0 - p.theta) / (2.0 + p.theta);
}

double eigenvalue(const DiffusionParams& p, int n) {
  return (2.0 + p.theta) * n * p.k1;
}

double ml_relax(const DiffusionParams& p, int n, double t, double absorption) {
  if (!(p.k1 > 0.0)) throw ValidationError("ml_relax: k1 must be positive");
  if (n < 0) throw ValidationError("ml_relax: n must be nonnegative");
  if (absorption < 0.0) throw ValidationError("ml_relax: absorption must be nonnegative");
  if (t < 0.0) throw DomainError("ml_relax: t must be nonnegative");
  const double arg = -(eigenvalue(p, n) + absorption) * std::pow(t, p.gamma);
  return specfun::mittag_leffler({p.gamma, 1.0}, arg);
}

double laguerre_stationary(const DiffusionParams& p, double x) {
  require_laguerre(p, "laguerre_stationary");
  return weight_prefactor(p) / std::tgamma(mass_exponent(p)) * envelope(p, x);
}

double laguerre_eigenfunction(const DiffusionParams& p, int n, double x) {
  const double psi0 = laguerre_stationary(p, x);
  return psi0 * specfun::laguerre({n, laguerre_order(p)}, reduced(p, x));
}

LaguerreGreen laguerre_green(const DiffusionParams& p, double x, double x0, double t, int n_max) {
  require_laguerre(p, "laguerre_green");
  if (!(t > 0.0)) throw DomainError("laguerre_green: t must be positive");
  if (n_max < 0) throw ValidationError("laguerre_green: n_max must be nonnegative");
  const double a = laguerre_order(p);
  const double e = mass_exponent(p);
  const double y = reduced(p, x), y0 = reduced(p, x0);
  // y^n e^-y underflows for every retained n
  if (y > 1000.0) return {0.0, 0.0, 0};

  // Laguerre recurrences for both arguments run alongside the sum.
  double ly_prev = 0.0, ly = 1.0, ly0_prev = 0.0, ly0 = 1.0;
  double sum = 0.0, last = 0.0;
  int small_run = 0, terms = 0;
  bool settled = false;
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) {
      const double c1 = (2.0 * n - 1.0 + a), c2 = (n - 1.0 + a);
      const double ny = ((c1 - y) * ly - c2 * ly_prev) / n;
      const double ny0 = ((c1 - y0) * ly0 - c2 * ly0_prev) / n;
      ly_prev = ly;
      ly = ny;
      ly0_prev = ly0;
      ly0 = ny0;
    }
    const double norm = std::exp(std::lgamma(n + 1.0) - std::lgamma(n + e));
    const double relax = n == 0 ? 1.0 : ml_relax(p, n, t);
    last = norm * relax * ly * ly0;
    sum += last;
    ++terms;
    if (n > 0 && std::abs(last) <= 1e-12 * std::abs(sum)) {
      if (++small_run >= 2) {
        settled = true;
        break;
      }
    } else {
      small_run = 0;
    }
  }
  const double scale = weight_prefactor(p) * envelope(p, x);
  const LaguerreGreen out{scale * sum, scale * std::abs(last), terms};
  if (!settled && out.truncation > 1e-8 * std::abs(out.value) + 1e-12) {
    std::ostringstream os;
    os << "laguerre_green: expansion not converged after " << terms << " terms (last term "
       << out.truncation << ", value " << out.value << " at x=" << x << ", t=" << t
       << "); use a later time or a larger n_max";
    throw NonConvergence(os.str());
  }
  return out;
}

}  // namespace fracdiff::solutions
