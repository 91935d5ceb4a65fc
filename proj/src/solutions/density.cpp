#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracdiff/error.hpp"
#include "fracdiff/solutions.hpp"

namespace fracdiff::solutions {

namespace {

using boost::math::quadrature::gauss_kronrod;
using boost::math::quadrature::tanh_sinh;

constexpr double kQuadTol = 1e-10;

// Natural length of each regime; quadratures split there.
double length_scale(const DiffusionParams& p, double t) {
  const double w = 2.0 + p.theta;
  switch (p.case_tag) {
    case CaseTag::Case1:
    case CaseTag::Case2:
    case CaseTag::ForcedPower:
      return std::pow(w * w * p.D * std::pow(t, p.effective_order()), 1.0 / w);
    case CaseTag::LaguerreDrift:
      return std::pow(w * p.D / p.k1, 1.0 / w);
    case CaseTag::SpaceFractional:
      return std::pow(p.D * std::pow(t, p.effective_order()), 1.0 / p.mu);
    case CaseTag::Similarity:
      return scaling_phi(p, similarity_k(p.mu, p.theta), 1.0, t);
  }
  return 1.0;
}

// 2 int_0^inf x^power rho(x) dx, split at the natural length.
double half_line_moment(const DiffusionParams& p, double t, int power) {
  auto f = [&](double x) {
    const double rho = density(p, x, t);
    return rho == 0.0 ? 0.0 : std::pow(x, power) * rho;
  };
  const double s = length_scale(p, t);
  tanh_sinh<double> inner;
  double err = 0.0;
  double head = inner.integrate(f, 0.0, s, kQuadTol, &err);
  if (p.case_tag == CaseTag::Similarity &&
      similarity_region(p.mu, p.theta) == Region::Compact) {
    return 2.0 * head;
  }
  // x = s / v maps the tail onto (0, 1]; algebraic tails become endpoint powers
  auto mapped = [&](double v) {
    const double x = s / v;
    const double fx = std::isfinite(x) ? f(x) : 0.0;
    return fx == 0.0 ? 0.0 : fx * x / v;
  };
  const double tail = inner.integrate(mapped, 0.0, 1.0, kQuadTol, &err);
  return 2.0 * (head + tail);
}

}  // namespace

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
  double s = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) s += 0.5 * (xs[i] - xs[i - 1]) * (ys[i] + ys[i - 1]);
  return s;
}

InitialCondition InitialCondition::delta() { return {}; }

InitialCondition InitialCondition::tabulated(std::vector<double> xs, std::vector<double> values) {
  if (xs.size() < 2 || xs.size() != values.size()) {
    throw ValidationError("initial condition: need at least two (x, value) pairs of equal length");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw ValidationError("initial condition: xs must be strictly increasing");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ValidationError("initial condition: values must be finite and nonnegative");
    }
  }
  const double mass = trapezoid(xs, values);
  if (std::abs(mass - 1.0) > 1e-6) {
    std::ostringstream os;
    os << "initial condition: mass must be 1 within 1e-6, got " << mass;
    throw ValidationError(os.str());
  }
  InitialCondition ic;
  ic.kind = Kind::Tabulated;
  ic.xs = std::move(xs);
  ic.values = std::move(values);
  return ic;
}

double InitialCondition::operator()(double x) const {
  if (kind == Kind::DeltaAtOrigin) throw DomainError("initial condition: delta has no pointwise value");
  if (x < xs.front() || x > xs.back()) return 0.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return values.back();
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1.0 - w) * values[i - 1] + w * values[i];
}

GreenFunction green_function(const DiffusionParams& p) {
  p.validate();
  GreenFunction g;
  switch (p.case_tag) {
    case CaseTag::Case1:
      g.eval = [p](double x, double t) { return green_case1(p, x, t); };
      break;
    case CaseTag::Case2:
      g.eval = [p](double x, double t) { return green_case2(p, x, t); };
      break;
    case CaseTag::ForcedPower:
      g.eval = [p](double x, double t) { return green_forced_power(p, x, t); };
      break;
    default:
      throw ValidationError("green_function: needs case1, case2 or forced-power, got " +
                            to_string(p.case_tag));
  }
  g.translation_invariant = p.theta == 0.0 && (p.case_tag != CaseTag::ForcedPower || p.K == 0.0);
  return g;
}

DensityProfile density_from_green(const GreenFunction& g, const InitialCondition& ic,
                                  const std::vector<double>& xs, double t) {
  if (!(t > 0.0)) throw DomainError("density_from_green: t must be positive");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw ValidationError("density_from_green: xs must be strictly increasing");
  }
  const bool tabulated = ic.kind == InitialCondition::Kind::Tabulated;
  if (tabulated && !g.translation_invariant) {
    throw ValidationError(
        "density_from_green: tabulated initial conditions need a translation-invariant "
        "Green function (theta = 0, no force)");
  }

  DensityProfile prof;
  prof.t = t;
  prof.xs = xs;
  prof.values.assign(xs.size(), 0.0);
  std::exception_ptr failure;
  const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) {
    try {
      const double x = xs[static_cast<std::size_t>(i)];
      double v = 0.0;
      if (!tabulated) {
        v = g.eval(x, t);
      } else {
        // The table is linear between nodes and G(x - x') has a cusp at x' = x:
        // integrate node to node, splitting the segment that contains x.
        auto f = [&](double xp) { return ic(xp) * g.eval(x - xp, t); };
        double err = 0.0;
        for (std::size_t j = 1; j < ic.xs.size(); ++j) {
          const double a = ic.xs[j - 1], b = ic.xs[j];
          if (ic.values[j - 1] == 0.0 && ic.values[j] == 0.0) continue;
          if (a < x && x < b) {
            v += gauss_kronrod<double, 15>::integrate(f, a, x, 10, 1e-10, &err);
            v += gauss_kronrod<double, 15>::integrate(f, x, b, 10, 1e-10, &err);
          } else {
            v += gauss_kronrod<double, 15>::integrate(f, a, b, 10, 1e-10, &err);
          }
        }
      }
      prof.values[static_cast<std::size_t>(i)] = v;
    } catch (...) {
#pragma omp critical(fracdiff_profile_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  prof.norm_estimate = trapezoid(prof.xs, prof.values);
  return prof;
}

double density(const DiffusionParams& p, double x, double t) {
  switch (p.case_tag) {
    case CaseTag::Case1: return green_case1(p, x, t);
    case CaseTag::Case2: return green_case2(p, x, t);
    case CaseTag::ForcedPower: return green_forced_power(p, x, t);
    case CaseTag::LaguerreDrift: return laguerre_green(p, x, 0.0, t).value;
    case CaseTag::SpaceFractional: return density_space_fractional(p, x, t);
    case CaseTag::Similarity: {
      const Region r = similarity_region(p.mu, p.theta);
      return scaling_density(p, similarity_k(p.mu, p.theta), 1.0, region_b(r), x, t);
    }
  }
  return 0.0;
}

double total_mass(const DiffusionParams& p, double t) {
  p.validate();
  return half_line_moment(p, t, 0);
}

double second_moment(const DiffusionParams& p, double t) {
  p.validate();
  if (p.case_tag == CaseTag::SpaceFractional && p.mu < 2.0) {
    throw DomainError("second_moment: diverges for space-fractional order mu < 2");
  }
  if (p.case_tag == CaseTag::Similarity && similarity_region(p.mu, p.theta) == Region::Infinite &&
      2.0 / (tsallis_q(p.mu, p.theta) - 1.0) <= 3.0) {
    throw DomainError("second_moment: the power-law tail makes the second moment diverge");
  }
  return half_line_moment(p, t, 2);
}

}  // namespace fracdiff::solutions
