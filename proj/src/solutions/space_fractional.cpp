#include <cmath>
#include <limits>
#include <numbers>

#include "fracdiff/error.hpp"
#include "fracdiff/solutions.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::solutions {

namespace {

void require_space_fractional(const DiffusionParams& p, const char* op) {
  if (p.case_tag != CaseTag::SpaceFractional) {
    throw ValidationError(std::string(op) + ": needs case space-fractional, got " +
                          to_string(p.case_tag));
  }
  p.validate();
}

// (D t^g)^(1/mu), the natural length of the kernel
double width(const DiffusionParams& p, double t) {
  return std::pow(p.D * std::pow(t, p.effective_order()), 1.0 / p.mu);
}

}  // namespace

double charfun_space_fractional(const DiffusionParams& p, double k, double t) {
  require_space_fractional(p, "charfun_space_fractional");
  if (!(t > 0.0)) throw DomainError("charfun_space_fractional: t must be positive");
  if (k == 0.0) return 1.0;
  const double g = p.effective_order();
  const double arg = -p.D * std::pow(std::abs(k), p.mu) * std::pow(t, g);
  return specfun::mittag_leffler({g, 1.0}, arg);
}

foxh::FoxHSpec space_fractional_spec(const DiffusionParams& p) {
  const double mu = p.mu, g = p.effective_order();
  return foxh::FoxHSpec::make(2, 1, 2, 3, {{1.0 - 1.0 / mu, 1.0 / mu}, {1.0 - g / mu, g / mu}},
                              {{0.0, 0.5}, {1.0 - 1.0 / mu, 1.0 / mu}, {0.5, 0.5}});
}

double density_space_fractional(const DiffusionParams& p, double x, double t) {
  require_space_fractional(p, "density_space_fractional");
  if (!(t > 0.0)) throw DomainError("density_space_fractional: t must be positive");
  const double mu = p.mu, g = p.effective_order();
  const double w = width(p, t);
  if (x == 0.0) {
    // (1/pi) int_0^inf E_g(-w^mu k^mu) dk via the Mellin transform of E_g(-v)
    if (g == 1.0) return std::tgamma(1.0 + 1.0 / mu) / (std::numbers::pi * w);
    if (mu <= 1.0) return std::numeric_limits<double>::infinity();
    const double s = 1.0 / mu;
    return std::tgamma(s) * std::tgamma(1.0 - s) / (std::numbers::pi * mu * std::tgamma(1.0 - g * s) * w);
  }
  const double z = std::abs(x) / (2.0 * w);
  // Gaussian-type decay for mu = 2; the other cases have algebraic tails
  if (mu == 2.0 && (2.0 - g) * std::pow(g, g / (2.0 - g)) * std::pow(z * z, 1.0 / (2.0 - g)) > 800.0) {
    return 0.0;
  }
  const foxh::FoxHValue r = foxh::eval(space_fractional_spec(p), z);
  double h = r.value;
  if (h < 0.0 && -h <= r.error) h = 0.0;
  return h / (2.0 * mu * std::sqrt(std::numbers::pi) * w);
}

}  // namespace fracdiff::solutions
