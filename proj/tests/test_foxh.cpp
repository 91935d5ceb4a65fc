#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracdiff/error.hpp"
#include "fracdiff/foxh.hpp"
#include "fracdiff/solutions.hpp"

using namespace fracdiff;
using namespace fracdiff::foxh;
using solutions::DiffusionParams;

namespace {

FoxHSpec exp_spec() { return FoxHSpec::make(1, 0, 0, 1, {}, {{0.0, 1.0}}); }

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo * std::pow(hi / lo, i / double(n - 1));
  return v;
}

}  // namespace

TEST_SUITE("foxh") {

TEST_CASE("make accepts well-formed specs") {
  const double g = 0.5, th = 0.0, w = 2.0 + th;
  CHECK_NOTHROW(FoxHSpec::make(2, 0, 1, 2, {{1.0 - g / w, g}}, {{0.0, 1.0}, {(1.0 + th) / w, 1.0}}));
  const FoxHSpec e = exp_spec();
  CHECK(e.m() == 1);
  CHECK(e.q() == 1);
  CHECK(e.delta() == 1.0);
  CHECK(e.left_bound() == 0.0);
  CHECK(std::isinf(e.right_bound()));
}

TEST_CASE("make rejects structural violations") {
  CHECK_THROWS_AS(FoxHSpec::make(3, 0, 0, 2, {}, {{0.0, 1.0}, {0.5, 1.0}}), ValidationError);
  CHECK_THROWS_AS(FoxHSpec::make(1, 2, 1, 1, {{0.0, 1.0}}, {{0.0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(FoxHSpec::make(1, 0, 0, 2, {}, {{0.0, 1.0}}), ValidationError);
  CHECK_THROWS_AS(FoxHSpec::make(1, 0, 0, 1, {}, {{0.0, -1.0}}), ValidationError);
}

TEST_CASE("make rejects colliding pole families") {
  // Gamma(s) Gamma(1 - 1 - s): left pole and right pole both at s = 0
  CHECK_THROWS_AS(FoxHSpec::make(1, 1, 1, 1, {{1.0, 1.0}}, {{0.0, 1.0}}), PoleError);
}

TEST_CASE("H^{1,0}_{0,1} is the exponential") {
  const FoxHSpec e = exp_spec();
  CHECK(eval_series(e, 1.5).value == doctest::Approx(std::exp(-1.5)).epsilon(1e-13));
  CHECK(eval_contour(e, 1.0).value == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
  CHECK(eval(e, 3.0).value == doctest::Approx(std::exp(-3.0)).epsilon(1e-12));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(eval_series(exp_spec(), 0.0), DomainError);
  CHECK_THROWS_AS(eval_series(exp_spec(), -1.0), DomainError);
}

TEST_CASE("drift instance with K = 0 equals the free instance") {
  const auto free_spec = solutions::green_spec(DiffusionParams::case1(0.8, 0.5));
  const auto forced_spec = solutions::green_spec(DiffusionParams::forced_power(0.8, 0.5, 0.0));
  CHECK(free_spec == forced_spec);
  CHECK(eval_series(forced_spec, 1.0).value == doctest::Approx(eval_series(free_spec, 1.0).value).epsilon(1e-15));
}

TEST_CASE("series and contour agree on the free instance") {
  const auto spec = solutions::green_spec(DiffusionParams::case1(0.5, 0.0));
  const double s = eval_series(spec, 2.0).value, c = eval_contour(spec, 2.0).value;
  CHECK(std::abs(s - c) <= 1e-8 * std::abs(c));
}

TEST_CASE("space-fractional instance with mu = 2 and order 1") {
  // H^{2,1}_{2,3} collapses to 2 exp(-z^2)
  const auto spec = solutions::space_fractional_spec(DiffusionParams::space_fractional(1.0, 0.0, 2.0));
  for (double z : {0.1, 0.5, 1.0, 2.0}) {
    CHECK(eval(spec, z).value == doctest::Approx(2.0 * std::exp(-z * z)).epsilon(1e-8));
    CHECK(eval_contour(spec, z).value == doctest::Approx(2.0 * std::exp(-z * z)).epsilon(1e-8));
  }
}

TEST_CASE("Mellin transform recovers the kernel") {
  // int_0^inf z^(s-1) H(z) dz = chi(s)
  const auto spec = solutions::green_spec(DiffusionParams::case1(0.5, 0.0));
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double s : {0.7, 1.0, 1.6}) {
    auto f = [&](double z) { return std::pow(z, s - 1.0) * eval(spec, z).value; };
    // H decays like exp(-c z^(2/3)); beyond 200 the remainder is below 1e-12
    const double v = ts.integrate(f, 0.0, 200.0, 1e-10);
    CHECK(v == doctest::Approx(spec.kernel({s, 0.0}).real()).epsilon(1e-6));
  }
}

TEST_CASE("Green instances are nonnegative") {
  for (double g : {0.3, 0.5, 0.75, 1.0}) {
    for (double th : {-0.5, 0.0, 0.5, 1.0}) {
      const auto spec = solutions::green_spec(DiffusionParams::case1(g, th));
      for (double z : logspace(1e-3, 50.0, 25)) {
        const FoxHValue v = eval(spec, z);
        CHECK_MESSAGE(v.value >= -v.error, "gamma=" << g << " theta=" << th << " z=" << z);
      }
    }
  }
}

TEST_CASE("coincident lower poles") {
  // kappa = (1+theta)/(2+theta) = 0.6 makes both lower pole families overlap
  const auto spec = solutions::green_spec(DiffusionParams::forced_power(0.8, 0.5, 1.5));
  for (double z : {0.05, 0.5, 2.0}) {
    const double s = eval_series(spec, z).value, c = eval_contour(spec, z).value;
    CHECK_MESSAGE(std::abs(s - c) <= 1e-7 * std::abs(c), "z=" << z);
  }
}

TEST_CASE("evaluator caches and is thread-safe") {
  const auto spec = solutions::green_spec(DiffusionParams::case1(0.75, 0.5));
  const std::vector<double> zs = logspace(1e-2, 10.0, 40);
  std::vector<double> serial;
  for (double z : zs) serial.push_back(eval(spec, z).value);

  Evaluator ev;
  std::vector<std::vector<double>> got(4, std::vector<double>(zs.size()));
  std::vector<std::thread> pool;
  for (int k = 0; k < 4; ++k) {
    pool.emplace_back([&, k] {
      for (std::size_t i = 0; i < zs.size(); ++i) got[k][i] = ev(spec, zs[i]).value;
    });
  }
  for (auto& th : pool) th.join();
  CHECK(ev.cache_size() == zs.size());
  for (const auto& row : got) CHECK(row == serial);
  ev.clear();
  CHECK(ev.cache_size() == 0);
}

}  // TEST_SUITE
