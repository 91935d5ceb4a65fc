#include <cmath>
#include <sstream>

#include "fracdiff/error.hpp"
#include "fracdiff/solutions.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::solutions {

namespace {

constexpr double kGuard = 1e-9;

double checked_gamma(double x, const char* what) {
  if (specfun::is_gamma_pole(x, 1e-12)) {
    std::ostringstream os;
    os << "scaling_norm: Gamma pole in " << what << " (argument " << x << ")";
    throw PoleError(os.str());
  }
  return std::tgamma(x);
}

double denominator(double mu, double theta) {
  const double d = 1.0 - 2.0 * mu - theta;
  if (std::abs(d) < 1e-12) throw DomainError("similarity: 1 - 2 mu - theta must be nonzero");
  return d;
}

}  // namespace

std::string to_string(Region r) { return r == Region::Compact ? "compact" : "infinite"; }

int region_b(Region r) { return r == Region::Compact ? -1 : 1; }

ScalingExponents scaling_exponents(double mu, double theta) {
  const double d = denominator(mu, theta);
  const double e = 1.0 + mu + theta;
  if (std::abs(e) < 1e-12) throw DomainError("scaling_exponents: 1 + mu + theta must be nonzero");
  ScalingExponents s;
  s.alpha = (2.0 - mu) * (mu + theta) / d;
  s.beta = -(mu - 1.0) * (mu - 2.0) / d;
  s.nu = (2.0 - mu) / e;
  s.degenerate = std::abs(s.alpha) < 1e-12 && std::abs(s.beta) < 1e-12 && std::abs(s.nu) < 1e-12;
  return s;
}

double scaling_phi(const DiffusionParams& p, double k_const, double phi0, double t) {
  if (p.case_tag != CaseTag::Similarity) throw ValidationError("scaling_phi: needs case similarity");
  if (!(phi0 > 0.0)) throw DomainError("scaling_phi: phi0 must be positive");
  if (t < 0.0) throw DomainError("scaling_phi: t must be nonnegative");
  const double lam = p.theta + p.mu + p.nu - 1.0;
  if (std::abs(lam) < 1e-12) throw ValidationError("scaling_phi: theta + mu + nu - 1 must be nonzero");
  double r = 0.0;
  if (p.K == 0.0) {
    r = std::pow(phi0, lam) + lam * p.D * k_const * t;
  } else {
    const double decay = std::exp(-lam * p.K * t);
    r = std::pow(phi0, lam) * decay - (p.D * k_const / p.K) * std::expm1(-lam * p.K * t);
  }
  if (!(r > 0.0)) {
    std::ostringstream os;
    os << "scaling_phi: nonpositive radicand " << r << " at t=" << t;
    throw DomainError(os.str());
  }
  return std::pow(r, 1.0 / lam);
}

Region similarity_region(double mu, double theta) {
  if (theta >= 0.0 && mu < -1.0 - theta - kGuard) return Region::Compact;
  if (mu > kGuard && mu < 0.5 - kGuard && theta >= 0.0 && theta < 0.5 - mu - kGuard) {
    return Region::Infinite;
  }
  std::ostringstream os;
  os << "similarity: (mu, theta) = (" << mu << ", " << theta
     << ") lies outside both analyzed regions (mu < -1 - theta with theta >= 0, or "
        "0 < mu < 1/2 with 0 <= theta < 1/2 - mu)";
  throw DomainError(os.str());
}

double scaling_norm(double mu, double theta, Region region) {
  if (similarity_region(mu, theta) != region) {
    throw DomainError("scaling_norm: (mu, theta) is not in the " + to_string(region) + " region");
  }
  const double d = denominator(mu, theta);
  const double shared = (1.0 - mu + mu * mu + theta * theta + 2.0 * mu * theta) / d;
  if (region == Region::Compact) {
    return checked_gamma(1.0 - mu - theta, "numerator") /
           (2.0 * checked_gamma((mu * mu + mu * theta - 2.0 * theta - 2.0 * mu) / d, "first factor") *
            checked_gamma(shared, "second factor"));
  }
  return checked_gamma((1.0 + theta - mu * mu - mu * theta) / d, "numerator") /
         (2.0 * checked_gamma(shared, "first factor") * checked_gamma(mu + theta, "second factor"));
}

double similarity_k(double mu, double theta) {
  const Region r = similarity_region(mu, theta);
  const ScalingExponents s = scaling_exponents(mu, theta);
  const double n = scaling_norm(mu, theta, r);
  const double d = denominator(mu, theta);
  return -std::pow(n, d / (1.0 + mu + theta)) * std::tgamma(s.alpha + 1.0) / std::tgamma(-s.beta);
}

double scaling_shape(double mu, double theta, int b, double z) {
  if (b != 1 && b != -1) throw DomainError("scaling_shape: b must be +1 or -1");
  const double az = std::abs(z);
  const double base = 1.0 + b * az;
  if (base <= 0.0) return 0.0;
  const double d = denominator(mu, theta);
  if (az == 0.0) {
    const double lead = (mu + theta) * (1.0 + mu + theta) / d;
    return lead > 0.0 ? 0.0 : (lead == 0.0 ? 1.0 : HUGE_VAL);
  }
  const double e = 1.0 + mu + theta;
  const double log_shape = ((mu + theta) * e * std::log(az) - (1.0 - mu) * e * std::log(base)) / d;
  return std::exp(log_shape);
}

double scaling_density(const DiffusionParams& p, double k_const, double phi0, int b, double x,
                       double t) {
  const Region r = similarity_region(p.mu, p.theta);
  if (region_b(r) != b) {
    throw DomainError("scaling_density: the " + to_string(r) + " region needs b = " +
                      std::to_string(region_b(r)));
  }
  const double phi = scaling_phi(p, k_const, phi0, t);
  return scaling_norm(p.mu, p.theta, r) / phi * scaling_shape(p.mu, p.theta, b, x / phi);
}

}  // namespace fracdiff::solutions
