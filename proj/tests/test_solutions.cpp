#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracdiff/error.hpp"
#include "fracdiff/solutions.hpp"
#include "fracdiff/specfun.hpp"

using namespace fracdiff;
using namespace fracdiff::solutions;

namespace {

double gaussian(double x, double var) {
  return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
}

double heat(double x, double t, double D = 1.0) { return gaussian(x, 2.0 * D * t); }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / double(n - 1);
  return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("solutions") {

TEST_CASE("gaussian reduction") {
  const auto p = DiffusionParams::case1(1.0, 0.0);
  CHECK(green_case1(p, 0.7, 1.0) == doctest::Approx(0.2496).epsilon(1e-4));
  CHECK(rel(green_case1(p, 0.7, 1.0), heat(0.7, 1.0)) < 1e-12);
  for (double x : linspace(-5.0, 5.0, 41)) CHECK(green_case1(p, x, 1.0) == green_case1(p, -x, 1.0));
}

TEST_CASE("subdiffusive kernel against the M-Wright series") {
  // 30-digit M-Wright series (tests/oracles/solution_values.py)
  const auto p = DiffusionParams::case1(0.5, 0.0);
  CHECK(rel(green_case1(p, 0.0, 1.0), 0.40802446954913149054) < 1e-10);
  CHECK(rel(green_case1(p, 0.5, 1.0), 0.28398440942038478813) < 1e-10);
  CHECK(rel(green_case1(p, 2.0, 1.0), 0.080625541727292927953) < 1e-10);
  CHECK(rel(green_case1(p, 1.3, 2.5), 0.14827203244531184862) < 1e-10);
}

TEST_CASE("memory and drift kernels reduce to the free kernel") {
  for (auto [g, th] : {std::pair{0.5, 0.0}, {0.75, 0.5}, {0.9, 1.0}}) {
    const auto c1 = DiffusionParams::case1(g, th);
    const auto c2 = DiffusionParams::case2(g, 0.0, th);
    const auto fp = DiffusionParams::forced_power(g, th, 0.0);
    double worst = 0.0;
    for (double x : linspace(-4.0, 4.0, 50)) {
      const double ref = green_case1(c1, x, 1.3);
      worst = std::max({worst, rel(green_case2(c2, x, 1.3), ref), rel(green_forced_power(fp, x, 1.3), ref)});
    }
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("memory kernel with gamma + alpha = 1 is the heat kernel") {
  const auto p = DiffusionParams::case2(0.5, 0.5, 0.0);
  for (double x : {0.0, 0.4, 1.7, 3.0}) CHECK(rel(green_case2(p, x, 2.0), heat(x, 2.0)) < 1e-8);
}

TEST_CASE("forced kernel carries unit mass") {
  CHECK(std::abs(total_mass(DiffusionParams::forced_power(0.8, 0.5, 0.2), 1.0) - 1.0) <= 1e-6);
  CHECK_THROWS_AS(DiffusionParams::forced_power(0.8, 0.5, -1.5), ValidationError);
}

TEST_CASE("large-argument form") {
  const auto g1 = DiffusionParams::case1(1.0, 0.0);
  for (double x : {0.1, 1.0, 3.0}) CHECK(rel(green_case1_asymptotic(g1, x, 1.0), heat(x, 1.0)) < 1e-12);
  const auto p = DiffusionParams::case1(0.5, 0.0);
  // z = x^2 / (4 t^gamma) = 50
  const double x = std::sqrt(200.0);
  CHECK(std::abs(green_case1(p, x, 1.0) / green_case1_asymptotic(p, x, 1.0) - 1.0) <= 0.05);
  const double near = green_case1_asymptotic(p, 0.01, 1.0);
  CHECK(std::isfinite(near));
  CHECK(near > green_case1_asymptotic(p, 0.1, 1.0));
}

TEST_CASE("density from a Green function") {
  const auto p = DiffusionParams::case1(0.5, 0.0);
  const auto g = green_function(p);
  const auto xs = linspace(-3.0, 3.0, 13);
  const DensityProfile d = density_from_green(g, InitialCondition::delta(), xs, 1.0);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(d.values[i] == green_case1(p, xs[i], 1.0));

  // Gaussian table of variance s2 spreads to variance s2 + 2 D t; linear
  // interpolation between nodes h apart adds about h^2/6 of variance
  const double s2 = 0.25;
  const auto tx = linspace(-6.0, 6.0, 121);
  std::vector<double> tv;
  for (double x : tx) tv.push_back(gaussian(x, s2));
  const auto heat_g = green_function(DiffusionParams::case1(1.0, 0.0));
  const auto out = density_from_green(heat_g, InitialCondition::tabulated(tx, tv), xs, 1.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(out.values[i] == doctest::Approx(gaussian(xs[i], s2 + 2.0)).epsilon(2e-3));
  }

  const auto bent = green_function(DiffusionParams::case1(0.5, 0.5));
  CHECK_THROWS_AS(density_from_green(bent, InitialCondition::tabulated(tx, tv), xs, 1.0), ValidationError);
  CHECK_THROWS_AS(InitialCondition::tabulated({0.0, 1.0}, {0.5, 0.5 + 1e-3}), ValidationError);
}

TEST_CASE("second-moment exponent and classification") {
  CHECK(second_moment_exponent(DiffusionParams::case1(1.0, 0.0)) == 1.0);
  CHECK(second_moment_exponent(DiffusionParams::case1(0.5, 0.0)) == 0.5);
  CHECK(second_moment_exponent(DiffusionParams::case1(1.0, -0.5)) == doctest::Approx(4.0 / 3.0));
  CHECK(second_moment_exponent(DiffusionParams::case2(0.5, 0.3, 0.0)) == doctest::Approx(0.8));
  CHECK(classify(1.0) == DiffusionClass::Normal);
  CHECK(classify(0.5) == DiffusionClass::Subdiffusive);
  CHECK(classify(4.0 / 3.0) == DiffusionClass::Superdiffusive);
  CHECK_THROWS_AS(second_moment_exponent(DiffusionParams::space_fractional(1.0, 0.0, 1.5)), ValidationError);
}

TEST_CASE("Mittag-Leffler relaxation") {
  const auto p = DiffusionParams::laguerre_drift(0.5, 0.0, 1.0, 0.0);
  for (double t : {0.1, 1.0, 30.0}) CHECK(ml_relax(p, 0, t) == 1.0);
  const auto q = DiffusionParams::laguerre_drift(1.0, 0.0, 0.7, 0.0);
  CHECK(rel(ml_relax(q, 3, 1.2, 0.4), std::exp(-(eigenvalue(q, 3) + 0.4) * 1.2)) < 1e-12);
  // lambda_2 = 4: E_{1/2}(-4), 30-digit series (tests/oracles/specfun_values.py)
  CHECK(rel(ml_relax(p, 2, 1.0), 0.13699945762506138989) < 1e-10);
}

TEST_CASE("eigenfunction expansion") {
  // Ornstein-Uhlenbeck: symmetrized Gaussian transition density
  const auto ou = DiffusionParams::laguerre_drift(1.0, 0.0, 0.8, 0.0, 0.6);
  for (auto [x, x0, t] : {std::tuple{0.3, 0.5, 0.4}, {-1.0, 1.2, 1.5}, {2.0, 0.0, 3.0}}) {
    const double m = x0 * std::exp(-0.8 * t), var = 0.6 * -std::expm1(-1.6 * t) / 0.8;
    const double exact = 0.5 * (gaussian(x - m, var) + gaussian(x + m, var));
    CHECK(std::abs(laguerre_green(ou, x, x0, t).value - exact) <= 1e-6);
  }
  // long times leave the stationary density
  const auto p = DiffusionParams::laguerre_drift(1.0, 0.3, 1.0, 0.5);
  for (double x : {0.2, 0.9, 1.6}) {
    CHECK(laguerre_green(p, x, 0.8, 60.0).value == doctest::Approx(laguerre_stationary(p, x)).epsilon(1e-9));
  }
  boost::math::quadrature::tanh_sinh<double> ts;
  const double mass = 2.0 * ts.integrate([&](double x) { return laguerre_stationary(p, x); }, 0.0, 30.0, 1e-12);
  CHECK(std::abs(mass - 1.0) <= 1e-6);
  CHECK_THROWS_AS(laguerre_green(DiffusionParams::case1(1.0, 0.0), 0.1, 0.2, 1.0), ValidationError);
  // algebraic relaxation for gamma < 1: a truncated sum at moderate t is reported
  CHECK_THROWS_AS(laguerre_green(DiffusionParams::laguerre_drift(0.7, 0.3, 1.0, 0.5), 3.0, 0.0, 0.5), NonConvergence);
  CHECK_THROWS_AS(DiffusionParams::laguerre_drift(1.0, 0.5, 0.0, 0.0), ValidationError);
  CHECK_THROWS_AS(DiffusionParams::laguerre_drift(1.0, 0.5, 1.0, -0.1), ValidationError);
}

TEST_CASE("space-fractional characteristic function") {
  const auto g = DiffusionParams::space_fractional(1.0, 0.0, 2.0, 0.7);
  CHECK(charfun_space_fractional(g, 0.0, 1.0) == 1.0);
  for (double k : {0.3, 1.0, 2.5}) CHECK(rel(charfun_space_fractional(g, k, 1.4), std::exp(-0.7 * k * k * 1.4)) < 1e-13);
  // E_{0.8}(-1), 30-digit series (tests/oracles/specfun_values.py)
  const auto p = DiffusionParams::space_fractional(0.6, 0.2, 1.5);
  CHECK(rel(charfun_space_fractional(p, 1.0, 1.0), 0.38694857861897685146) < 1e-10);
}

TEST_CASE("space-fractional density") {
  const auto g = DiffusionParams::space_fractional(1.0, 0.0, 2.0);
  for (double x : {0.0, 0.5, 2.0}) CHECK(rel(density_space_fractional(g, x, 1.0), heat(x, 1.0)) < 1e-8);
  const auto c = DiffusionParams::space_fractional(1.0, 0.0, 1.0);
  for (double x : {0.0, 0.5, 3.0}) {
    CHECK(rel(density_space_fractional(c, x, 1.0), 1.0 / (std::numbers::pi * (1.0 + x * x))) < 1e-10);
  }
  // direct quadrature of the characteristic function (tests/oracles/solution_values.py)
  const auto s = DiffusionParams::space_fractional(1.0, 0.0, 1.5);
  CHECK(rel(density_space_fractional(s, 0.0, 1.0), 0.28735275145216444502) < 1e-10);
  CHECK(rel(density_space_fractional(s, 0.7, 1.0), 0.24078419849245477028) < 1e-9);
  CHECK(rel(density_space_fractional(s, 3.0, 1.0), 0.031509423616324935314) < 1e-9);
  // algebraic tail Gamma(1+mu) sin(pi mu/2) / (pi |x|^(1+mu))
  const double x = 300.0;
  const double tail = std::tgamma(2.5) * std::sin(0.75 * std::numbers::pi) / (std::numbers::pi * std::pow(x, 2.5));
  CHECK(std::abs(density_space_fractional(s, x, 1.0) / tail - 1.0) <= 1e-2);
  CHECK(std::abs(total_mass(DiffusionParams::space_fractional(0.6, 0.2, 1.5), 1.0) - 1.0) <= 1e-5);
}

TEST_CASE("similarity width") {
  const auto p = DiffusionParams::similarity(0.3, 0.1, 0.5);
  CHECK(scaling_phi(p, 0.7, 1.5, 0.0) == doctest::Approx(1.5).epsilon(1e-15));
  const double lam = p.theta + p.mu + p.nu - 1.0;
  CHECK(rel(scaling_phi(p, 0.7, 1.5, 200.0), std::pow(0.7 / 0.5, 1.0 / lam)) < 1e-12);
  const auto free_p = DiffusionParams::similarity(0.3, 0.1, 0.0);
  const auto weak = DiffusionParams::similarity(0.3, 0.1, 1e-10);
  CHECK(rel(scaling_phi(weak, 0.7, 1.5, 2.0), scaling_phi(free_p, 0.7, 1.5, 2.0)) < 1e-8);
  // normalizing k is negative in the infinite region: the width collapses in finite time
  CHECK_THROWS_AS(scaling_phi(free_p, similarity_k(0.3, 0.1), 1.0, 10.0), DomainError);
}

TEST_CASE("similarity exponents") {
  const ScalingExponents z = scaling_exponents(0.0, 0.0);
  CHECK(z.alpha == 0.0);
  CHECK(z.beta == -2.0);
  CHECK(z.nu == 2.0);
  CHECK_FALSE(z.degenerate);
  CHECK(scaling_exponents(2.0, 0.0).degenerate);
  for (auto [mu, th] : {std::pair{-2.0, 0.5}, {-2.5, 0.3}, {0.3, 0.1}}) {
    const ScalingExponents s = scaling_exponents(mu, th);
    CHECK(s.alpha + s.beta + 1.0 == doctest::Approx(mu - 1.0).epsilon(1e-14));
  }
  CHECK_THROWS_AS(scaling_exponents(0.5, 0.0), DomainError);
}

TEST_CASE("similarity density") {
  boost::math::quadrature::tanh_sinh<double> ts;
  // compact support
  const auto c = DiffusionParams::similarity(-2.0, 0.0, 2.0);
  const double kc = similarity_k(-2.0, 0.0);
  for (double t : {0.5, 1.0, 5.0}) {
    const double phi = scaling_phi(c, kc, 1.0, t);
    CHECK(scaling_density(c, kc, 1.0, -1, phi, t) == 0.0);
    CHECK(scaling_density(c, kc, 1.0, -1, -phi, t) == 0.0);
    // the profile has a cusp at the origin: integrate one half
    const double m = 2.0 * ts.integrate([&](double x) { return scaling_density(c, kc, 1.0, -1, x, t); }, 0.0, phi, 1e-12);
    CHECK(std::abs(m - 1.0) <= 1e-8);
  }
  // infinite support
  const auto f = DiffusionParams::similarity(0.3, 0.1);
  const double kf = similarity_k(0.3, 0.1);
  for (double t : {0.5, 1.0, 5.0}) {
    const double phi = scaling_phi(f, kf, 3.0, t);
    auto rho = [&](double x) { return scaling_density(f, kf, 3.0, 1, x, t); };
    CHECK(rho(1e6 * phi) < 1e-6 * rho(phi));
    const double m = 2.0 * ts.integrate(rho, 0.0, std::numeric_limits<double>::infinity(), 1e-12);
    CHECK(std::abs(m - 1.0) <= 1e-6);
    const double x = 0.8 * phi;
    CHECK(rel(rho(x), scaling_norm(0.3, 0.1, Region::Infinite) / phi * scaling_shape(0.3, 0.1, 1, 0.8)) < 1e-13);
  }
  CHECK(scaling_norm(-2.0, 0.0, Region::Compact) > 0.0);
  CHECK(scaling_norm(0.3, 0.1, Region::Infinite) > 0.0);
  CHECK_THROWS_AS(scaling_density(f, kf, 3.0, -1, 0.5, 1.0), DomainError);
  CHECK_THROWS_AS(scaling_norm(1.0, 0.0, Region::Infinite), DomainError);
  CHECK_THROWS_AS(similarity_region(1.0, 0.0), DomainError);
}

TEST_CASE("tsallis index") {
  CHECK(tsallis_q(2.0, 0.0) == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
  CHECK(tsallis_q(0.3, 0.1) == doctest::Approx(2.4286).epsilon(1e-4));
  CHECK_THROWS_AS(tsallis_q(-1.0, 0.0), DomainError);
}

TEST_CASE("densities are even and nonnegative") {
  const std::vector<DiffusionParams> ps = {
      DiffusionParams::case1(0.5, 0.0),          DiffusionParams::case1(0.75, 0.5),
      DiffusionParams::case1(0.9, -0.5),         DiffusionParams::case2(0.4, 0.3, 0.5),
      DiffusionParams::forced_power(0.8, 0.5, 0.2), DiffusionParams::laguerre_drift(1.0, 0.3, 1.0, 0.5),
      DiffusionParams::space_fractional(0.6, 0.2, 1.5), DiffusionParams::similarity(-2.0, 0.0, 2.0),
      DiffusionParams::similarity(0.3, 0.1)};
  for (const auto& p : ps) {
    for (double t : {0.5, 2.0}) {
      for (double x : linspace(0.05, 6.0, 30)) {
        const double a = density(p, x, t), b = density(p, -x, t);
        CHECK_MESSAGE(a == b, to_string(p.case_tag) << " x=" << x);
        CHECK_MESSAGE((a >= 0.0 && std::isfinite(a)), to_string(p.case_tag) << " x=" << x);
      }
    }
  }
}

}  // TEST_SUITE
