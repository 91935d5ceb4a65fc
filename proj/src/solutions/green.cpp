#include <cmath>
#include <limits>

#include "fracdiff/error.hpp"
#include "fracdiff/solutions.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::solutions {

namespace {

void require_case(const DiffusionParams& p, CaseTag tag, const char* op) {
  if (p.case_tag != tag) {
    throw ValidationError(std::string(op) + ": needs case " + to_string(tag) + ", got " +
                          to_string(p.case_tag));
  }
}

void require_time(double t, const char* op) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(op) + ": t must be positive");
}

double kappa(const DiffusionParams& p) {
  return p.case_tag == CaseTag::ForcedPower ? p.K / ((2.0 + p.theta) * p.D) : 0.0;
}

double scale_denominator(const DiffusionParams& p, double t) {
  const double w = 2.0 + p.theta;
  return w * w * p.D * std::pow(t, p.effective_order());
}

// (2+theta)/(2 Gamma(1/(2+theta) + kappa)) ((2+theta)^2 D t^g)^(-1/(2+theta))
double prefactor(const DiffusionParams& p, double t) {
  const double w = 2.0 + p.theta;
  return w / (2.0 * std::tgamma(1.0 / w + kappa(p))) * std::pow(scale_denominator(p, t), -1.0 / w);
}

// Exponent of the stretched-exponential decay; past ~800 the density underflows.
double decay_exponent(double g, double z) {
  return (2.0 - g) * std::pow(g, g / (2.0 - g)) * std::pow(z, 1.0 / (2.0 - g));
}

// H^{2,0}_{1,2} at z = 0: the residue of the leftmost lower pole at s = 0.
double h_at_origin(const foxh::FoxHSpec& spec) {
  const double b1 = spec.lower()[0].shift, b2 = spec.lower()[1].shift;
  const double lead = std::min(b1, b2);
  if (lead > 0.0) return 0.0;
  if (lead < 0.0 || b1 == b2) return std::numeric_limits<double>::infinity();
  const double other = b1 == 0.0 ? b2 : b1;
  return std::tgamma(other) / std::tgamma(spec.upper()[0].shift);
}

double green_h(const DiffusionParams& p, double x, double t) {
  const foxh::FoxHSpec spec = green_spec(p);
  const double g = p.effective_order();
  const double z = green_argument(p, x, t);
  double h = 0.0;
  if (z == 0.0) {
    h = h_at_origin(spec);
  } else if (decay_exponent(g, z) > 800.0) {
    h = 0.0;
  } else {
    const foxh::FoxHValue r = foxh::eval(spec, z);
    h = r.value;
    // roundoff below the declared error is not a negative density
    if (h < 0.0 && -h <= r.error) h = 0.0;
  }
  return prefactor(p, t) * h;
}

}  // namespace

foxh::FoxHSpec green_spec(const DiffusionParams& p) {
  const double w = 2.0 + p.theta;
  const double g = p.effective_order();
  return foxh::FoxHSpec::make(2, 0, 1, 2, {{1.0 - g / w, g}},
                              {{kappa(p), 1.0}, {(1.0 + p.theta) / w, 1.0}});
}

double green_argument(const DiffusionParams& p, double x, double t) {
  return std::pow(std::abs(x), 2.0 + p.theta) / scale_denominator(p, t);
}

double green_case1(const DiffusionParams& p, double x, double t) {
  require_case(p, CaseTag::Case1, "green_case1");
  require_time(t, "green_case1");
  return green_h(p, x, t);
}

double green_case2(const DiffusionParams& p, double x, double t) {
  require_case(p, CaseTag::Case2, "green_case2");
  require_time(t, "green_case2");
  return green_h(p, x, t);
}

double green_forced_power(const DiffusionParams& p, double x, double t) {
  require_case(p, CaseTag::ForcedPower, "green_forced_power");
  require_time(t, "green_forced_power");
  return green_h(p, x, t);
}

double green_case1_asymptotic(const DiffusionParams& p, double x, double t) {
  require_case(p, CaseTag::Case1, "green_case1_asymptotic");
  require_time(t, "green_case1_asymptotic");
  const double g = p.gamma;
  const double w = 2.0 + p.theta;
  const double c = 1.0 / scale_denominator(p, t);
  const double ax = std::abs(x);
  const double z = std::pow(ax, w) * c;
  return w / (2.0 * std::tgamma(1.0 / w)) * std::pow(2.0 - g, -0.5) *
         std::pow(g, g / (w * (2.0 - g)) - 0.5) * std::pow(c, 1.0 / (w * (2.0 - g))) *
         std::pow(ax, (g - 1.0) / (2.0 - g)) * std::exp(-decay_exponent(g, z));
}

double fig1_scale(const DiffusionParams& p, double t) {
  require_time(t, "fig1_scale");
  return 1.0 / prefactor(p, t);
}

}  // namespace fracdiff::solutions
