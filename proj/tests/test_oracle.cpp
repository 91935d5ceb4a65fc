#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fracdiff/error.hpp"
#include "fracdiff/oracle.hpp"
#include "fracdiff/specfun.hpp"

using namespace fracdiff;
using namespace fracdiff::oracle;
using solutions::green_case1;

namespace {

double heat(double x, double t) { return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t); }

double l1(const DensityProfile& d, const std::vector<double>& ref) {
  const double dx = d.xs[1] - d.xs[0];
  double s = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) s += std::abs(d.values[i] - ref[i]) * dx;
  return s;
}

double l1_between(const DensityProfile& a, const DensityProfile& b) { return l1(a, b.values); }

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("Laplace-domain Green function") {
  const auto heat_p = DiffusionParams::case1(1.0, 0.0);
  const cplx v = laplace_green(heat_p, 1.0, cplx(1.0, 0.0));
  CHECK(v.real() == doctest::Approx(std::exp(-1.0) / 2.0).epsilon(1e-12));
  CHECK(v.imag() == 0.0);
  const auto p = DiffusionParams::case1(0.5, 0.5);
  for (double s : {0.1, 1.0, 7.0}) {
    const cplx w = laplace_green(p, 0.8, cplx(s, 0.0));
    CHECK(w.real() > 0.0);
    CHECK(std::abs(w.imag()) <= 1e-14 * w.real());
  }
  const cplx a = laplace_green(p, 1.0, cplx(2.0, 3.0)), b = laplace_green(p, 1.0, cplx(2.0, -3.0));
  CHECK(std::abs(a - std::conj(b)) <= 1e-14 * std::abs(a));
  CHECK_THROWS_AS(laplace_green(DiffusionParams::laguerre_drift(1.0, 0.0, 1.0, 0.0), 1.0, cplx(1.0, 0.0)),
                  ValidationError);
  CHECK_THROWS_AS(laplace_green(p, 1.0, cplx(-1.0, 0.0)), DomainError);
}

TEST_CASE("Talbot inversion of known pairs") {
  CHECK(talbot_invert([](cplx s) { return 1.0 / s; }, 3.0, 16).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(talbot_invert([](cplx s) { return 1.0 / (s + 1.0); }, 2.0, 16).value ==
        doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
  double worst = 0.0;
  for (double g : {0.3, 0.5, 0.9}) {
    for (double lam : {0.5, 1.0, 2.0}) {
      for (double t : {0.1, 1.0, 10.0}) {
        auto F = [&](cplx s) { return std::pow(s, g - 1.0) / (std::pow(s, g) + lam); };
        const double ref = specfun::mittag_leffler({g, 1.0}, -lam * std::pow(t, g));
        worst = std::max(worst, std::abs(talbot_invert(F, t, 16).value - ref) / ref);
      }
    }
  }
  CHECK(worst <= 1e-7);
  CHECK_THROWS_AS(talbot_invert([](cplx s) { return 1.0 / s; }, 0.0, 16), DomainError);
}

TEST_CASE("Talbot inversion recovers the closed-form kernels") {
  const auto p1 = DiffusionParams::case1(0.5, 0.5);
  const double v1 = talbot_invert([&](cplx s) { return laplace_green(p1, 1.0, s); }, 1.0, 16, 1e-6).value;
  CHECK(std::abs(v1 - green_case1(p1, 1.0, 1.0)) <= 1e-5 * green_case1(p1, 1.0, 1.0));
  const auto p2 = DiffusionParams::case2(0.4, 0.3, 0.5);
  const double v2 = talbot_invert([&](cplx s) { return laplace_green(p2, 1.0, s); }, 2.0, 16, 1e-6).value;
  CHECK(std::abs(v2 - solutions::green_case2(p2, 1.0, 2.0)) <= 1e-5 * solutions::green_case2(p2, 1.0, 2.0));
}

TEST_CASE("history kernels are bit-identical") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t count = 300, n = 1001;
  std::vector<double> rows(count * n), w(count), a(n), b(n);
  for (double& r : rows) r = u(rng);
  for (double& x : w) x = u(rng);
  history_sum_serial(rows.data(), w.data(), count, n, a.data());
  history_sum_parallel(rows.data(), w.data(), count, n, b.data());
  CHECK(a == b);
}

TEST_CASE("L1 and memory weights") {
  const auto b = l1_weights(0.5, 4);
  CHECK(b[0] == 1.0);
  CHECK(b[1] == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  const auto one = l1_weights(1.0, 5);
  for (double v : std::vector<double>(one.begin() + 1, one.end())) CHECK(v == 0.0);
  // the weights integrate a constant exactly: sum = n^alpha (alpha+1)
  for (double a : {0.3, 0.5}) {
    const auto m = memory_weights(a, 12);
    double s = 0.0;
    for (double v : m) s += v;
    CHECK(s == doctest::Approx(std::pow(12.0, a) * (a + 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("finite differences reproduce the heat kernel") {
  OracleConfig cfg;
  const auto d = fd_solve(DiffusionParams::case1(1.0, 0.0), InitialCondition::delta(), cfg, 1.0);
  std::vector<double> ref;
  for (double x : d.xs) ref.push_back(heat(x, 1.0));
  CHECK(l1(d, ref) < 0.01);
  CHECK(fd_last_mass_drift() <= 1e-12);
}

TEST_CASE("finite differences conserve mass for every regime") {
  OracleConfig cfg;
  cfg.nx = 257;
  cfg.dt = 5e-3;
  for (const auto& p : {DiffusionParams::case1(0.5, 0.5), DiffusionParams::case2(0.5, 0.3, 0.0),
                        DiffusionParams::forced_power(0.8, 0.5, 0.2),
                        DiffusionParams::laguerre_drift(0.7, 0.3, 1.0, 0.5)}) {
    const auto d = fd_solve(p, InitialCondition::delta(), cfg, 1.0);
    CHECK_MESSAGE(fd_last_mass_drift() <= 1e-12, solutions::to_string(p.case_tag));
    CHECK(d.norm_estimate == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("finite differences are first order in time") {
  OracleConfig cfg;
  cfg.nx = 257;
  const auto p = DiffusionParams::case1(0.5, 0.0);
  std::vector<DensityProfile> sol;
  for (double dt : {0.04, 0.02, 0.01, 0.005}) {
    cfg.dt = dt;
    sol.push_back(fd_solve(p, InitialCondition::delta(), cfg, 1.0));
  }
  const double e1 = l1_between(sol[0], sol[1]), e2 = l1_between(sol[1], sol[2]), e3 = l1_between(sol[2], sol[3]);
  CHECK(std::log2(e1 / e2) >= 0.9);
  CHECK(std::log2(e2 / e3) >= 0.9);
}

TEST_CASE("serial and parallel solves agree bit for bit") {
  OracleConfig cfg;
  cfg.nx = 257;
  cfg.dt = 1e-2;
  const auto p = DiffusionParams::case2(0.5, 0.3, 0.5);
  cfg.parallel = false;
  const auto a = fd_solve(p, InitialCondition::delta(), cfg, 1.0);
  cfg.parallel = true;
  const auto b = fd_solve(p, InitialCondition::delta(), cfg, 1.0);
  CHECK(a.values == b.values);
}

TEST_CASE("tabulated two-bump initial condition") {
  // two hat functions of mass 1/2 centred at -1.5 and 1.5
  const auto ic = InitialCondition::tabulated({-2.5, -1.5, -0.5, 0.5, 1.5, 2.5}, {0.0, 0.5, 0.0, 0.0, 0.5, 0.0});
  const auto p = DiffusionParams::case1(0.5, 0.0);
  OracleConfig cfg;
  const auto fd = fd_solve(p, ic, cfg, 1.0);
  const auto closed = solutions::density_from_green(solutions::green_function(p), ic, fd.xs, 1.0);
  CHECK(l1(fd, closed.values) < 0.02);
}

TEST_CASE("Fourier inversion") {
  CHECK(fourier_invert([](double k, double) { return std::exp(-k * k); }, 0.0, 1.0) ==
        doctest::Approx(1.0 / (2.0 * std::sqrt(std::numbers::pi))).epsilon(1e-10));
  const double cauchy = fourier_invert([](double k, double) { return std::exp(-std::abs(k)); }, 1.0, 1.0);
  CHECK(cauchy == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-9));
  const auto p = DiffusionParams::space_fractional(0.6, 0.2, 1.5);
  auto cf = [&](double k, double t) { return solutions::charfun_space_fractional(p, k, t); };
  CHECK(fourier_invert(cf, 0.7, 1.0) == fourier_invert(cf, -0.7, 1.0));
  const double ref = solutions::density_space_fractional(p, 0.5, 1.0);
  CHECK(std::abs(fourier_invert(cf, 0.5, 1.0) - ref) <= 1e-4 * ref);
}

TEST_CASE("Grunwald-Letnikov differintegral") {
  const double half = std::tgamma(1.5);
  // d^(1/2) x = x^(1/2) / Gamma(3/2)
  CHECK(gl_differintegral([](double x) { return x; }, 0.6, 0.5, 1.0) ==
        doctest::Approx(std::sqrt(0.6) / half).epsilon(1e-8));
  // d^(-1/2) 1 = x^(1/2) / Gamma(3/2)
  CHECK(gl_differintegral([](double) { return 1.0; }, 0.6, -0.5, 0.0) ==
        doctest::Approx(std::sqrt(0.6) / half).epsilon(1e-8));
  // d^(0.3) x^(-0.4) = Gamma(0.6)/Gamma(0.3) x^(-0.7)
  CHECK(gl_differintegral([](double x) { return std::pow(x, -0.4); }, 0.5, 0.3, -0.4) ==
        doctest::Approx(std::tgamma(0.6) / std::tgamma(0.3) * std::pow(0.5, -0.7)).epsilon(1e-5));
  CHECK_THROWS_AS(gl_differintegral([](double x) { return x; }, 0.0, 0.5, 1.0), DomainError);
}

TEST_CASE("oracle configuration validation") {
  OracleConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.nx = 8;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = {};
  cfg.x_max = cfg.x_min;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("suite filtering, scaling and coarse grids") {
  OracleConfig cfg;
  SuiteOptions only;
  only.only = {"gaussian-reduction"};
  const auto one = run_verification_suite(cfg, only);
  REQUIRE(one.reports.size() == 1);
  CHECK(one.reports[0].passed);
  CHECK(one.reports[0].tolerance == 1e-8);

  only.tolerance_scale = 3.0;
  CHECK(run_verification_suite(cfg, only).reports[0].tolerance == doctest::Approx(3e-8));

  SuiteOptions none;
  none.only = {"no-such-check"};
  const auto empty = run_verification_suite(cfg, none);
  CHECK(empty.reports.empty());
  CHECK_FALSE(empty.note.empty());

  SuiteOptions fd;
  fd.only = {"fd-oracle"};
  const auto fine = run_verification_suite(cfg, fd);
  OracleConfig coarse = cfg;
  coarse.nx = 16;
  const auto rough = run_verification_suite(coarse, fd);
  REQUIRE(rough.reports.size() == 1);
  CHECK(rough.reports[0].measured_error > fine.reports[0].measured_error);

  const std::string csv = reports_to_csv(one.reports);
  CHECK(csv.rfind("check_name,measured_error,tolerance,passed,runtime_seconds\n", 0) == 0);
  CHECK(csv.find("gaussian-reduction,") != std::string::npos);
}

}  // TEST_SUITE
