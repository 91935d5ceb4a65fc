#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "fracdiff/cli.hpp"
#include "fracdiff/error.hpp"

namespace fracdiff::cli {

using solutions::CaseTag;
using solutions::DiffusionParams;

namespace {

double parse_double(const std::string& text, const std::string& what) {
  std::string s = text;
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ValidationError(what + ": cannot read '" + text + "' as a number");
  }
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// Flags each case reads; anything else given on the command line is an error.
std::set<std::string> applicable(CaseTag tag) {
  switch (tag) {
    case CaseTag::Case1:
      return {"gamma", "theta", "D"};
    case CaseTag::Case2:
      return {"gamma", "alpha", "theta", "D"};
    case CaseTag::ForcedPower:
      return {"gamma", "theta", "K", "D"};
    case CaseTag::LaguerreDrift:
      return {"gamma", "theta", "k1", "k2", "D", "x0"};
    case CaseTag::SpaceFractional:
      return {"gamma", "alpha", "mu", "D"};
    case CaseTag::Similarity:
      return {"mu", "theta", "K", "D", "b", "k", "phi0"};
  }
  return {};
}

std::vector<std::string> given(const RunConfig& c) {
  std::vector<std::string> g;
  if (c.gamma) g.push_back("gamma");
  if (c.theta) g.push_back("theta");
  if (c.mu) g.push_back("mu");
  if (c.alpha) g.push_back("alpha");
  if (c.D) g.push_back("D");
  if (c.K) g.push_back("K");
  if (c.k1) g.push_back("k1");
  if (c.k2) g.push_back("k2");
  if (c.x0) g.push_back("x0");
  if (c.b) g.push_back("b");
  if (c.k_const) g.push_back("k");
  if (c.phi0) g.push_back("phi0");
  return g;
}

void require_only(const RunConfig& c, const std::set<std::string>& allowed, const std::string& context) {
  for (const std::string& name : given(c)) {
    if (!allowed.count(name)) throw ValidationError("--" + name + " does not apply to " + context);
  }
}

}  // namespace

std::vector<double> Range::linspace() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  // weighted form keeps lo = -hi grids exactly mirrored
  const double n = count - 1;
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = (lo * (n - i) + hi * i) / n;
  return v;
}

std::vector<double> Range::logspace() const {
  if (!(lo > 0.0)) throw ValidationError("log-spaced range needs lo > 0");
  std::vector<double> v(static_cast<std::size_t>(count));
  if (count == 1) {
    v[0] = lo;
    return v;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (count - 1));
  v.front() = lo;
  v.back() = hi;
  return v;
}

Range parse_range(const std::string& text) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() != 3) throw ValidationError("range '" + text + "' must have the form lo:hi:count");
  Range r;
  r.lo = parse_double(parts[0], "range lo");
  r.hi = parse_double(parts[1], "range hi");
  const double n = parse_double(parts[2], "range count");
  if (!(n >= 1.0) || n != std::floor(n) || n > 1e7) {
    throw ValidationError("range count must be a positive integer, got '" + parts[2] + "'");
  }
  r.count = static_cast<int>(n);
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || r.hi < r.lo) {
    throw ValidationError("range '" + text + "' needs finite lo <= hi");
  }
  if (r.count > 1 && r.hi == r.lo) throw ValidationError("range '" + text + "' repeats one point");
  return r;
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> ts;
  for (const std::string& part : split(text, ',')) {
    const double t = parse_double(part, "time");
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("times must be positive, got '" + part + "'");
    ts.push_back(t);
  }
  if (ts.empty()) throw ValidationError("no times given");
  return ts;
}

DiffusionParams RunConfig::params() const {
  require_only(*this, applicable(case_tag), solutions::to_string(case_tag));
  const double g = gamma.value_or(1.0), th = theta.value_or(0.0), d = D.value_or(1.0);
  switch (case_tag) {
    case CaseTag::Case1:
      return DiffusionParams::case1(g, th, d);
    case CaseTag::Case2:
      if (!alpha) throw ValidationError("case2 needs --alpha");
      return DiffusionParams::case2(g, *alpha, th, d);
    case CaseTag::ForcedPower:
      return DiffusionParams::forced_power(g, th, K.value_or(0.0), d);
    case CaseTag::LaguerreDrift:
      if (!k1) throw ValidationError("laguerre-drift needs --k1");
      return DiffusionParams::laguerre_drift(g, th, *k1, k2.value_or(0.0), d);
    case CaseTag::SpaceFractional:
      if (!mu) throw ValidationError("space-fractional needs --mu");
      return DiffusionParams::space_fractional(g, alpha.value_or(0.0), *mu, d);
    case CaseTag::Similarity:
      if (!mu) throw ValidationError("similarity needs --mu");
      return DiffusionParams::similarity(*mu, th, K.value_or(0.0), d);
  }
  throw ValidationError("unknown case");
}

void RunConfig::validate() const {
  if (grid && grid->count < 1) throw ValidationError("grid needs at least one point");
  for (double t : times) {
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("times must be positive");
  }
  if (times.empty()) throw ValidationError("no times given");

  switch (command) {
    case Command::Eval: {
      const DiffusionParams p = params();
      if (case_tag == CaseTag::Similarity) {
        const int region_b = solutions::region_b(solutions::similarity_region(p.mu, p.theta));
        if (b && *b != region_b) {
          std::ostringstream os;
          os << "b must be " << (region_b > 0 ? "+1" : "-1") << " for (mu, theta) = (" << p.mu << ", "
             << p.theta << ")";
          throw ValidationError(os.str());
        }
        if (phi0 && !(*phi0 > 0.0)) throw ValidationError("phi0 must be positive");
        const double k = k_const.value_or(solutions::similarity_k(p.mu, p.theta));
        // phi must exist at every requested time; raises when the radicand fails
        for (double t : times) solutions::scaling_phi(p, k, phi0.value_or(1.0), t);
      }
      break;
    }
    case Command::Table: {
      if (figure < 1 || figure > 3) throw ValidationError("figure must be 1, 2 or 3");
      if (figure == 1) {
        require_only(*this, {"gamma", "theta", "D"}, "figure 1");
        for (double g : gamma ? std::vector<double>{*gamma} : std::vector<double>{0.5, 0.75, 1.0}) {
          for (double th : theta ? std::vector<double>{*theta} : std::vector<double>{0.0, 0.5}) {
            DiffusionParams::case1(g, th, D.value_or(1.0));
          }
        }
      } else {
        require_only(*this, {"mu", "theta"}, "figure " + std::to_string(figure));
        if (theta && !mu) throw ValidationError("figure " + std::to_string(figure) + " needs --mu with --theta");
        if (mu) {
          const auto want = figure == 2 ? solutions::Region::Compact : solutions::Region::Infinite;
          if (solutions::similarity_region(*mu, theta.value_or(0.0)) != want) {
            throw ValidationError("figure " + std::to_string(figure) + " needs (mu, theta) in the " +
                                  solutions::to_string(want) + " region");
          }
        }
        if (figure == 3 && grid && !(grid->lo > 0.0)) {
          throw ValidationError("figure 3 takes |x|/phi magnitudes lo:hi:count with lo > 0");
        }
      }
      break;
    }
    case Command::Moments: {
      const DiffusionParams p = params();
      if (case_tag != CaseTag::Case1 && case_tag != CaseTag::Case2 && case_tag != CaseTag::ForcedPower) {
        throw ValidationError("moments supports case1, case2 and forced-power");
      }
      (void)p;
      std::vector<double> ts = times;
      std::sort(ts.begin(), ts.end());
      if (std::adjacent_find(ts.begin(), ts.end()) != ts.end()) throw ValidationError("times must be distinct");
      if (ts.size() < 5) throw ValidationError("moments needs at least 5 times for the regression");
      break;
    }
    case Command::Verify: {
      oracle.validate();
      if (!(tolerance_scale > 0.0)) throw ValidationError("tolerance-scale must be positive");
      const auto& names = oracle::check_names();
      for (const std::string& n : only) {
        if (std::find(names.begin(), names.end(), n) == names.end()) {
          std::string known;
          for (const std::string& k : names) known += (known.empty() ? "" : ", ") + k;
          throw ValidationError("unknown check '" + n + "'; known checks: " + known);
        }
      }
      break;
    }
  }
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Closed-form solutions and numerical oracles for generalized fractional diffusion"};
  app.require_subcommand(1, 1);

  std::string case_name = "case1", grid_text, times_text, b_text, format = "csv";
  std::string only_text;

  auto add_model = [&](CLI::App* sub) {
    auto opt = [&](const char* name, std::optional<double>& target, const char* help) {
      sub->add_option_function<double>(name, [&target](double v) { target = v; }, help);
    };
    opt("--gamma", cfg.gamma, "Caputo order in time, (0,1]");
    opt("--theta", cfg.theta, "exponent of the |x|^-theta diffusion coefficient");
    opt("--mu", cfg.mu, "spatial order (space-fractional, similarity)");
    opt("--alpha", cfg.alpha, "memory-kernel exponent (case2, space-fractional)");
    opt("--D", cfg.D, "diffusion constant (default 1)");
    opt("--K", cfg.K, "drift amplitude (forced-power) or linear drift rate (similarity)");
    opt("--k1", cfg.k1, "linear restoring rate (laguerre-drift)");
    opt("--k2", cfg.k2, "power-law drift amplitude (laguerre-drift)");
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output,-o", cfg.output_path, "output file (default stdout)");
  };

  CLI::App* eval = app.add_subcommand("eval", "evaluate rho(x,t) on a grid");
  eval->add_option("--case", case_name, "case1, case2, forced-power, laguerre-drift, space-fractional, similarity");
  add_model(eval);
  eval->add_option_function<double>("--x0", [&](double v) { cfg.x0 = v; }, "source point (laguerre-drift)");
  eval->add_option("--b", b_text, "similarity branch, -1 or +1 (checked against the region)");
  eval->add_option_function<double>("--k", [&](double v) { cfg.k_const = v; },
                                    "similarity constant k (default: the normalizing value)");
  eval->add_option_function<double>("--phi0", [&](double v) { cfg.phi0 = v; }, "similarity phi(0) (default 1)");
  eval->add_option("--x", grid_text, "x grid lo:hi:count (default -5:5:201)")->allow_extra_args(false);
  eval->add_option("--t", times_text, "comma-separated times (default 1)");
  add_output(eval);

  CLI::App* table = app.add_subcommand("table", "scaled curves of figures 1-3");
  table->add_option("--figure", cfg.figure, "1, 2 or 3")->required();
  table->add_option_function<double>("--gamma", [&](double v) { cfg.gamma = v; }, "figure 1 gamma");
  table->add_option_function<double>("--theta", [&](double v) { cfg.theta = v; }, "theta");
  table->add_option_function<double>("--mu", [&](double v) { cfg.mu = v; }, "figures 2-3 mu");
  table->add_option_function<double>("--D", [&](double v) { cfg.D = v; }, "figure 1 diffusion constant");
  table->add_option("--z", grid_text,
                    "abscissa lo:hi:count; figure 3 takes log-spaced magnitudes mirrored to negative z");
  add_output(table);

  CLI::App* moments = app.add_subcommand("moments", "second moment and its scaling exponent");
  moments->add_option("--case", case_name, "case1, case2 or forced-power");
  add_model(moments);
  moments->add_option("--t", times_text, "comma-separated times, at least 5")->required();
  add_output(moments);

  CLI::App* verify = app.add_subcommand("verify", "run the cross-check suite");
  verify->add_option("--only", only_text, "comma-separated check names");
  verify->add_option("--tolerance-scale", cfg.tolerance_scale, "multiplies every tolerance");
  verify->add_option("--nx", cfg.oracle.nx, "finite-difference grid points");
  verify->add_option("--dt", cfg.oracle.dt, "finite-difference time step");
  verify->add_option("--x-min", cfg.oracle.x_min, "finite-difference domain left end");
  verify->add_option("--x-max", cfg.oracle.x_max, "finite-difference domain right end");
  verify->add_option("--talbot-nodes", cfg.oracle.talbot_nodes, "Talbot nodes M (2M also used)");
  verify->add_option("--quad-tol", cfg.oracle.quad_tol, "quadrature tolerance");
  verify->add_option("--memory-cutoff", cfg.oracle.memory_cutoff, "Caputo history terms kept (0 = all)");
  verify->add_flag_callback("--serial", [&] { cfg.oracle.parallel = false; }, "use the serial history kernel");
  add_output(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw ValidationError(e.what());
  }

  if (*eval) cfg.command = Command::Eval;
  if (*table) cfg.command = Command::Table;
  if (*moments) cfg.command = Command::Moments;
  if (*verify) cfg.command = Command::Verify;
  cfg.case_tag = solutions::case_from_string(case_name);
  cfg.format = format == "json" ? Format::Json : Format::Csv;
  if (!grid_text.empty()) cfg.grid = parse_range(grid_text);
  if (!times_text.empty()) cfg.times = parse_times(times_text);
  if (!b_text.empty()) {
    if (b_text == "1" || b_text == "+1") {
      cfg.b = 1;
    } else if (b_text == "-1") {
      cfg.b = -1;
    } else {
      throw ValidationError("b must be -1 or +1, got '" + b_text + "'");
    }
  }
  if (!only_text.empty()) cfg.only = split(only_text, ',');
  return cfg;
}

}  // namespace fracdiff::cli
