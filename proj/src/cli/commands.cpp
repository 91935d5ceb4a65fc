#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "fracdiff/cli.hpp"
#include "fracdiff/error.hpp"

namespace fracdiff::cli {

using solutions::CaseTag;
using solutions::DiffusionParams;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string cell_text(const Cell& c) {
  if (std::holds_alternative<double>(c)) return num(std::get<double>(c));
  if (std::holds_alternative<std::string>(c)) return std::get<std::string>(c);
  if (std::holds_alternative<bool>(c)) return std::get<bool>(c) ? "true" : "false";
  return "";
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + num(x);
  return s;
}

void echo_params(Table& t, const DiffusionParams& p) {
  t.echo.emplace_back("case", solutions::to_string(p.case_tag));
  auto add = [&](const char* k, double v) { t.echo.emplace_back(k, num(v)); };
  switch (p.case_tag) {
    case CaseTag::Case1:
      add("gamma", p.gamma);
      add("theta", p.theta);
      break;
    case CaseTag::Case2:
      add("gamma", p.gamma);
      add("alpha", p.alpha_mem);
      add("theta", p.theta);
      break;
    case CaseTag::ForcedPower:
      add("gamma", p.gamma);
      add("theta", p.theta);
      add("K", p.K);
      break;
    case CaseTag::LaguerreDrift:
      add("gamma", p.gamma);
      add("theta", p.theta);
      add("k1", p.k1);
      add("k2", p.k2);
      break;
    case CaseTag::SpaceFractional:
      add("gamma", p.gamma);
      add("alpha", p.alpha_mem);
      add("mu", p.mu);
      break;
    case CaseTag::Similarity:
      add("mu", p.mu);
      add("theta", p.theta);
      add("nu", p.nu);
      add("K", p.K);
      break;
  }
  add("D", p.D);
}

// Evaluates f at every index in parallel; rethrows the first failure.
template <class F>
std::vector<double> parallel_map(std::size_t n, F f) {
  std::vector<double> out(n);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(fracdiff_cli_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

void Table::write_csv(std::ostream& os) const {
  for (const auto& [k, v] : echo) os << "# " << k << '=' << v << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << csv_field(columns[i]);
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(cell_text(row[i]));
    os << '\n';
  }
}

void Table::write_json(std::ostream& os) const {
  nlohmann::ordered_json doc;
  doc["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : echo) doc["parameters"][k] = v;
  doc["records"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json rec = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const Cell& c = row[i];
      if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        // JSON has no infinities; keep the CSV spelling as text
        rec[columns[i]] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(num(v));
      } else if (std::holds_alternative<std::string>(c)) {
        rec[columns[i]] = std::get<std::string>(c);
      } else if (std::holds_alternative<bool>(c)) {
        rec[columns[i]] = std::get<bool>(c);
      } else {
        rec[columns[i]] = nullptr;
      }
    }
    doc["records"].push_back(std::move(rec));
  }
  os << doc.dump(2) << '\n';
}

Table cmd_eval(const RunConfig& cfg) {
  const DiffusionParams p = cfg.params();
  const std::vector<double> xs = cfg.grid.value_or(Range{-5.0, 5.0, 201}).linspace();
  Table t;
  t.echo.emplace_back("command", "eval");
  echo_params(t, p);

  std::function<double(double, double)> rho;
  if (p.case_tag == CaseTag::LaguerreDrift) {
    const double x0 = cfg.x0.value_or(0.0);
    t.echo.emplace_back("x0", num(x0));
    rho = [p, x0](double x, double time) { return solutions::laguerre_green(p, x, x0, time).value; };
  } else if (p.case_tag == CaseTag::Similarity) {
    const int b = solutions::region_b(solutions::similarity_region(p.mu, p.theta));
    const double k = cfg.k_const.value_or(solutions::similarity_k(p.mu, p.theta));
    const double phi0 = cfg.phi0.value_or(1.0);
    t.echo.emplace_back("b", b > 0 ? "+1" : "-1");
    t.echo.emplace_back("k", num(k));
    t.echo.emplace_back("phi0", num(phi0));
    rho = [p, k, phi0, b](double x, double time) { return solutions::scaling_density(p, k, phi0, b, x, time); };
  } else {
    rho = [p](double x, double time) { return solutions::density(p, x, time); };
  }
  t.echo.emplace_back("x", num(xs.front()) + ":" + num(xs.back()) + ":" + std::to_string(xs.size()));
  t.echo.emplace_back("t", join(cfg.times));

  t.columns = {"x", "t", "rho"};
  for (double time : cfg.times) {
    const std::vector<double> v = parallel_map(xs.size(), [&](std::size_t i) { return rho(xs[i], time); });
    for (std::size_t i = 0; i < xs.size(); ++i) t.rows.push_back({xs[i], time, v[i]});
  }
  return t;
}

Table cmd_table(const RunConfig& cfg) {
  Table t;
  t.echo.emplace_back("command", "table");
  t.echo.emplace_back("figure", std::to_string(cfg.figure));

  if (cfg.figure == 1) {
    const std::vector<double> gammas = cfg.gamma ? std::vector<double>{*cfg.gamma} : std::vector<double>{0.5, 0.75, 1.0};
    const std::vector<double> thetas = cfg.theta ? std::vector<double>{*cfg.theta} : std::vector<double>{0.0, 0.5};
    const double D = cfg.D.value_or(1.0);
    const std::vector<double> zs = cfg.grid.value_or(Range{0.0, 5.0, 101}).linspace();
    t.echo.emplace_back("gamma", join(gammas));
    t.echo.emplace_back("theta", join(thetas));
    t.echo.emplace_back("D", num(D));
    t.echo.emplace_back("t", "1");
    t.echo.emplace_back("z", num(zs.front()) + ":" + num(zs.back()) + ":" + std::to_string(zs.size()));
    t.columns = {"gamma", "theta", "z", "scaled_green"};
    for (double g : gammas) {
      for (double th : thetas) {
        const DiffusionParams p = DiffusionParams::case1(g, th, D);
        const double w = 2.0 + th, c = solutions::fig1_scale(p, 1.0);
        const std::vector<double> v = parallel_map(zs.size(), [&](std::size_t i) {
          const double x = std::pow(zs[i] * w * w * D, 1.0 / w);
          return c * solutions::green_case1(p, x, 1.0);
        });
        for (std::size_t i = 0; i < zs.size(); ++i) t.rows.push_back({g, th, zs[i], v[i]});
      }
    }
    return t;
  }

  const bool compact = cfg.figure == 2;
  std::vector<std::pair<double, double>> curves;
  if (cfg.mu) {
    curves = {{*cfg.mu, cfg.theta.value_or(0.0)}};
  } else if (compact) {
    curves = {{-2.0, 0.0}, {-2.5, 0.3}, {-3.0, 0.5}};
  } else {
    curves = {{0.3, 0.1}, {0.2, 0.2}, {0.1, 0.2}};
  }
  std::vector<double> zs;
  if (compact) {
    zs = cfg.grid.value_or(Range{-1.5, 1.5, 301}).linspace();
  } else {
    const std::vector<double> mags = cfg.grid.value_or(Range{1e-6, 1e12, 1000}).logspace();
    for (auto it = mags.rbegin(); it != mags.rend(); ++it) zs.push_back(-*it);
    zs.push_back(0.0);
    zs.insert(zs.end(), mags.begin(), mags.end());
  }
  std::string names;
  for (auto [mu, th] : curves) names += (names.empty() ? "" : ";") + num(mu) + "," + num(th);
  t.echo.emplace_back("mu,theta", names);
  t.echo.emplace_back("b", compact ? "-1" : "+1");
  t.echo.emplace_back("z", compact ? "linear" : "log-spaced magnitudes, mirrored");
  t.columns = {"mu", "theta", "b", "z", "scaled_density"};
  const int b = compact ? -1 : 1;
  for (auto [mu, th] : curves) {
    const double norm = solutions::scaling_norm(mu, th, solutions::similarity_region(mu, th));
    const std::vector<double> v =
        parallel_map(zs.size(), [&](std::size_t i) { return norm * solutions::scaling_shape(mu, th, b, zs[i]); });
    for (std::size_t i = 0; i < zs.size(); ++i) {
      t.rows.push_back({mu, th, static_cast<double>(b), zs[i], v[i]});
    }
  }
  return t;
}

Table cmd_moments(const RunConfig& cfg) {
  const DiffusionParams p = cfg.params();
  std::vector<double> ts = cfg.times;
  std::sort(ts.begin(), ts.end());
  Table t;
  t.echo.emplace_back("command", "moments");
  echo_params(t, p);
  t.echo.emplace_back("t", join(ts));

  const std::vector<double> m = parallel_map(ts.size(), [&](std::size_t i) { return solutions::second_moment(p, ts[i]); });
  const double analytic = solutions::second_moment_exponent(p);
  t.columns = {"kind", "t", "second_moment", "slope", "analytic_exponent"};
  const std::size_t n = ts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1, hi = i + 1 == n ? i : i + 1;
    const double slope = std::log(m[hi] / m[lo]) / std::log(ts[hi] / ts[lo]);
    t.rows.push_back({std::string("point"), ts[i], m[i], slope, analytic});
  }
  t.rows.push_back({std::string("regression"), std::monostate{}, std::monostate{}, regression_slope(ts, m), analytic});
  return t;
}

Table cmd_verify(const RunConfig& cfg, bool& passed, std::ostream& log) {
  oracle::SuiteOptions opts;
  opts.only = cfg.only;
  opts.tolerance_scale = cfg.tolerance_scale;
  const oracle::SuiteResult res = oracle::run_verification_suite(cfg.oracle, opts);

  Table t;
  t.echo.emplace_back("command", "verify");
  t.echo.emplace_back("tolerance_scale", num(cfg.tolerance_scale));
  const oracle::OracleConfig& o = cfg.oracle;
  t.echo.emplace_back("x_min", num(o.x_min));
  t.echo.emplace_back("x_max", num(o.x_max));
  t.echo.emplace_back("nx", std::to_string(o.nx));
  t.echo.emplace_back("dt", num(o.dt));
  t.echo.emplace_back("talbot_nodes", std::to_string(o.talbot_nodes));
  t.echo.emplace_back("quad_tol", num(o.quad_tol));
  t.echo.emplace_back("memory_cutoff", std::to_string(o.memory_cutoff));
  t.echo.emplace_back("parallel", o.parallel ? "true" : "false");
  if (!res.note.empty()) t.echo.emplace_back("note", res.note);
  t.columns = {"check_name", "measured_error", "tolerance", "passed", "runtime_seconds"};

  passed = !res.reports.empty();
  for (const oracle::VerificationReport& r : res.reports) {
    passed = passed && r.passed;
    t.rows.push_back({r.check_name, r.measured_error, r.tolerance, r.passed,
                      r.runtime_seconds});
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-20s error %-11.4g tol %-9.3g %7.2f s  ", r.passed ? "PASS" : "FAIL",
                  r.check_name.c_str(), r.measured_error, r.tolerance, r.runtime_seconds);
    log << line << r.note << '\n';
  }
  if (!res.note.empty()) log << res.note << '\n';
  return t;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const std::optional<RunConfig> cfg = parse_args(argc, argv, out);
    if (!cfg) return kExitOk;
    cfg->validate();

    bool passed = true;
    Table table;
    switch (cfg->command) {
      case Command::Eval:
        table = cmd_eval(*cfg);
        break;
      case Command::Table:
        table = cmd_table(*cfg);
        break;
      case Command::Moments:
        table = cmd_moments(*cfg);
        break;
      case Command::Verify:
        table = cmd_verify(*cfg, passed, err);
        break;
    }

    std::ofstream file;
    if (!cfg->output_path.empty()) {
      file.open(cfg->output_path, std::ios::binary);
      if (!file) {
        err << "error: cannot open " << cfg->output_path << " for writing\n";
        return kExitInvalid;
      }
    }
    std::ostream& dest = cfg->output_path.empty() ? out : file;
    if (cfg->format == Format::Json) {
      table.write_json(dest);
    } else {
      table.write_csv(dest);
    }
    dest.flush();
    if (!dest) {
      err << "error: writing the output failed\n";
      return kExitFailed;
    }
    return passed ? kExitOk : kExitFailed;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailed;
  }
}

}  // namespace fracdiff::cli
