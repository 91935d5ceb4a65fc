#include <cmath>
#include <sstream>

#include "fracdiff/error.hpp"
#include "fracdiff/solutions.hpp"

namespace fracdiff::solutions {

namespace {

[[noreturn]] void fail(const DiffusionParams& p, const std::string& what) {
  throw ValidationError(to_string(p.case_tag) + ": " + what);
}

bool finite(double v) { return std::isfinite(v); }

void require_standard_operator(const DiffusionParams& p) {
  if (p.mu != 2.0 || p.nu != 1.0) fail(p, "requires (mu, nu) = (2, 1)");
  if (!(p.theta > -2.0)) fail(p, "theta must exceed -2");
}

}  // namespace

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Case1: return "case1";
    case CaseTag::Case2: return "case2";
    case CaseTag::ForcedPower: return "forced-power";
    case CaseTag::LaguerreDrift: return "laguerre-drift";
    case CaseTag::SpaceFractional: return "space-fractional";
    case CaseTag::Similarity: return "similarity";
  }
  return "unknown";
}

CaseTag case_from_string(const std::string& name) {
  for (CaseTag t : {CaseTag::Case1, CaseTag::Case2, CaseTag::ForcedPower, CaseTag::LaguerreDrift,
                    CaseTag::SpaceFractional, CaseTag::Similarity}) {
    if (to_string(t) == name) return t;
  }
  throw ValidationError("unknown case '" + name +
                        "' (expected case1, case2, forced-power, laguerre-drift, "
                        "space-fractional or similarity)");
}

void DiffusionParams::validate() const {
  for (double v : {gamma, theta, mu, nu, alpha_mem, D, K, force_exponent, k1, k2}) {
    if (!finite(v)) fail(*this, "parameters must be finite");
  }
  if (!(D > 0.0)) fail(*this, "D must be positive");
  if (case_tag != CaseTag::Similarity && !(gamma > 0.0 && gamma <= 1.0)) {
    fail(*this, "gamma must lie in (0,1]");
  }
  switch (case_tag) {
    case CaseTag::Case1:
      require_standard_operator(*this);
      break;
    case CaseTag::Case2:
      require_standard_operator(*this);
      if (alpha_mem < 0.0) fail(*this, "alpha_mem must be nonnegative");
      if (!(gamma + alpha_mem < 2.0)) fail(*this, "gamma + alpha_mem must lie in (0,2)");
      break;
    case CaseTag::ForcedPower:
      require_standard_operator(*this);
      if (std::abs(force_exponent + theta + 1.0) > 1e-12) {
        fail(*this, "force exponent must satisfy alpha + theta + 1 = 0");
      }
      if (!(K / ((2.0 + theta) * D) > -1.0 / (2.0 + theta))) {
        fail(*this, "K/((2+theta)D) must exceed -1/(2+theta) for a normalizable density");
      }
      break;
    case CaseTag::LaguerreDrift:
      require_standard_operator(*this);
      if (!(k1 > 0.0)) fail(*this, "k1 must be positive");
      if (k2 < 0.0) fail(*this, "k2 must be nonnegative");
      if (!(laguerre_order(*this) > -1.0)) {
        fail(*this, "Laguerre order (k2/D - 1 - theta)/(2 + theta) must exceed -1");
      }
      break;
    case CaseTag::SpaceFractional:
      if (nu != 1.0 || theta != 0.0) fail(*this, "requires (nu, theta) = (1, 0)");
      if (!(mu > 0.0 && mu <= 2.0)) fail(*this, "mu must lie in (0,2]");
      if (alpha_mem < 0.0) fail(*this, "alpha_mem must be nonnegative");
      if (!(gamma + alpha_mem <= 1.0)) fail(*this, "gamma + alpha_mem must lie in (0,1]");
      break;
    case CaseTag::Similarity:
      if (std::abs(theta + mu + nu - 1.0) < 1e-12) fail(*this, "theta + mu + nu - 1 must be nonzero");
      if (std::abs(1.0 - 2.0 * mu - theta) < 1e-12) fail(*this, "1 - 2 mu - theta must be nonzero");
      if (std::abs(1.0 + mu + theta) < 1e-12) fail(*this, "1 + mu + theta must be nonzero");
      if (K < 0.0) fail(*this, "drift rate K must be nonnegative");
      break;
  }
}

double DiffusionParams::effective_order() const {
  if (case_tag == CaseTag::Case2 || case_tag == CaseTag::SpaceFractional) return gamma + alpha_mem;
  return gamma;
}

DiffusionParams DiffusionParams::case1(double gamma, double theta, double D) {
  DiffusionParams p;
  p.case_tag = CaseTag::Case1;
  p.gamma = gamma;
  p.theta = theta;
  p.D = D;
  p.validate();
  return p;
}

DiffusionParams DiffusionParams::case2(double gamma, double alpha_mem, double theta, double D) {
  DiffusionParams p;
  p.case_tag = CaseTag::Case2;
  p.gamma = gamma;
  p.alpha_mem = alpha_mem;
  p.theta = theta;
  p.D = D;
  p.validate();
  return p;
}

DiffusionParams DiffusionParams::forced_power(double gamma, double theta, double K, double D) {
  DiffusionParams p;
  p.case_tag = CaseTag::ForcedPower;
  p.gamma = gamma;
  p.theta = theta;
  p.K = K;
  p.force_exponent = -1.0 - theta;
  p.D = D;
  p.validate();
  return p;
}

DiffusionParams DiffusionParams::laguerre_drift(double gamma, double theta, double k1, double k2,
                                                double D) {
  DiffusionParams p;
  p.case_tag = CaseTag::LaguerreDrift;
  p.gamma = gamma;
  p.theta = theta;
  p.k1 = k1;
  p.k2 = k2;
  p.D = D;
  p.validate();
  return p;
}

DiffusionParams DiffusionParams::space_fractional(double gamma, double alpha_mem, double mu,
                                                  double D) {
  DiffusionParams p;
  p.case_tag = CaseTag::SpaceFractional;
  p.gamma = gamma;
  p.alpha_mem = alpha_mem;
  p.mu = mu;
  p.D = D;
  p.validate();
  return p;
}

DiffusionParams DiffusionParams::similarity(double mu, double theta, double K, double D) {
  DiffusionParams p;
  p.case_tag = CaseTag::Similarity;
  p.mu = mu;
  p.theta = theta;
  p.K = K;
  p.D = D;
  if (std::abs(1.0 + mu + theta) < 1e-12) fail(p, "1 + mu + theta must be nonzero");
  p.nu = (2.0 - mu) / (1.0 + mu + theta);
  p.validate();
  return p;
}

double second_moment_exponent(const DiffusionParams& p) {
  if (p.case_tag != CaseTag::Case1 && p.case_tag != CaseTag::Case2 &&
      p.case_tag != CaseTag::ForcedPower) {
    throw ValidationError("second_moment_exponent: needs case1, case2 or forced-power");
  }
  return 2.0 * p.effective_order() / (2.0 + p.theta);
}

DiffusionClass classify(double exponent, double tol) {
  if (exponent < 1.0 - tol) return DiffusionClass::Subdiffusive;
  if (exponent > 1.0 + tol) return DiffusionClass::Superdiffusive;
  return DiffusionClass::Normal;
}

std::string to_string(DiffusionClass c) {
  switch (c) {
    case DiffusionClass::Subdiffusive: return "subdiffusive";
    case DiffusionClass::Normal: return "normal";
    case DiffusionClass::Superdiffusive: return "superdiffusive";
  }
  return "unknown";
}

double tsallis_q(double mu, double theta) {
  const double d = 1.0 + mu + theta;
  if (std::abs(d) < 1e-12) throw DomainError("tsallis_q: 1 + mu + theta must be nonzero");
  return (3.0 + mu + theta) / d;
}

}  // namespace fracdiff::solutions
