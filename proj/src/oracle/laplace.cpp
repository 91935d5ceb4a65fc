#include <cmath>
#include <numbers>
#include <sstream>

#include "fracdiff/error.hpp"
#include "fracdiff/oracle.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::oracle {

using solutions::CaseTag;

cplx laplace_green(const DiffusionParams& p, double x, cplx s) {
  if (p.case_tag != CaseTag::Case1 && p.case_tag != CaseTag::Case2) {
    throw ValidationError("laplace_green: needs case1 or case2, got " + solutions::to_string(p.case_tag));
  }
  if (!(std::abs(std::arg(s)) < std::numbers::pi) || s == 0.0) {
    throw DomainError("laplace_green: s must lie off the nonpositive real axis");
  }
  const double w = 2.0 + p.theta;
  const double alpha = p.case_tag == CaseTag::Case2 ? p.alpha_mem : 0.0;
  // s^gamma / D~(s) = s^(gamma + alpha) / D on the principal branch
  const cplx root = std::sqrt(std::pow(s, p.gamma + alpha) / p.D);
  const double ax = std::abs(x);
  const double order = (1.0 + p.theta) / w;
  const cplx arg = (2.0 / w) * root * std::pow(ax, w / 2.0);
  if (ax == 0.0) {
    // |x|^((1+theta)/2) K_nu(c |x|^((2+theta)/2)) -> Gamma(nu) 2^(nu-1) c^-nu
    const cplx c = (2.0 / w) * root;
    const cplx lim = std::tgamma(order) * std::pow(2.0, order - 1.0) * std::pow(c, -order);
    return w / (std::tgamma(1.0 / w) * s) * std::pow(root / w, (3.0 + p.theta) / w) * lim;
  }
  return w / (std::tgamma(1.0 / w) * s) * std::pow(root / w, (3.0 + p.theta) / w) *
         std::pow(ax, (1.0 + p.theta) / 2.0) * specfun::bessel_k(order, arg);
}

namespace {

// Fixed Talbot: s(th) = r th (cot th + i), r = 2M/(5t).
double talbot_sum(const std::function<cplx(cplx)>& F, double t, int M) {
  const double r = 2.0 * M / (5.0 * t);
  double sum = 0.5 * std::exp(r * t) * F(cplx(r, 0.0)).real();
  for (int k = 1; k < M; ++k) {
    const double th = k * std::numbers::pi / M;
    const double cot = std::cos(th) / std::sin(th);
    const cplx s(r * th * cot, r * th);
    const cplx sigma(1.0, th + (th * cot - 1.0) * cot);
    sum += (std::exp(t * s) * F(s) * sigma).real();
  }
  return r / M * sum;
}

}  // namespace

TalbotResult talbot_invert(const std::function<cplx(cplx)>& F, double t, int nodes, double tol,
                           double floor) {
  if (!(t > 0.0)) throw DomainError("talbot_invert: t must be positive");
  if (nodes < 2) throw ValidationError("talbot_invert: nodes must be at least 2");
  const double coarse = talbot_sum(F, t, nodes);
  const double fine = talbot_sum(F, t, 2 * nodes);
  TalbotResult r{fine, std::abs(fine - coarse)};
  if (!(r.change <= tol * std::max(std::abs(fine), floor))) {
    std::ostringstream os;
    os << "talbot_invert: doubling " << nodes << " nodes changed the result by " << r.change;
    throw NonConvergence(os.str());
  }
  return r;
}

}  // namespace fracdiff::oracle
