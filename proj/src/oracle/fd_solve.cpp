#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fracdiff/error.hpp"
#include "fracdiff/oracle.hpp"

namespace fracdiff::oracle {

using solutions::CaseTag;

namespace {

thread_local double last_mass_drift = 0.0;

// Bernoulli function B(z) = z / (e^z - 1).
double bernoulli(double z) {
  if (std::abs(z) < 1e-8) return 1.0 - 0.5 * z;
  return z / std::expm1(z);
}

double drift(const DiffusionParams& p, double x) {
  const double sgn = x < 0.0 ? -1.0 : 1.0;
  const double ax = std::abs(x);
  switch (p.case_tag) {
    case CaseTag::ForcedPower:
      return p.K * sgn * std::pow(ax, -1.0 - p.theta);
    case CaseTag::LaguerreDrift:
      return -p.k1 * x + p.k2 * sgn * std::pow(ax, -1.0 - p.theta);
    default:
      return 0.0;
  }
}

// Tridiagonal operator A with (A rho)_i = (J_{i-1/2} - J_{i+1/2}) / (w_i dx).
struct Operator {
  std::vector<double> lower, diag, upper;  // lower[i] couples i to i-1, upper[i] to i+1

  void apply(const std::vector<double>& v, std::vector<double>& out) const {
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) {
      double s = diag[i] * v[i];
      if (i > 0) s += lower[i] * v[i - 1];
      if (i + 1 < n) s += upper[i] * v[i + 1];
      out[i] = s;
    }
  }
};

Operator build_operator(const DiffusionParams& p, const std::vector<double>& xs, double dx) {
  const std::size_t n = xs.size();
  Operator A;
  A.lower.assign(n, 0.0);
  A.diag.assign(n, 0.0);
  A.upper.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    // Face between nodes i and i+1; J = (d/dx)(B(-Pe) rho_i - B(Pe) rho_{i+1})
    const double xf = 0.5 * (xs[i] + xs[i + 1]);
    const double d = p.D * std::pow(std::abs(xf), -p.theta);
    const double pe = drift(p, xf) * dx / d;
    const double cl = d / dx * bernoulli(-pe), cr = d / dx * bernoulli(pe);
    const double wl = (i == 0 ? 0.5 : 1.0) * dx;
    const double wr = (i + 1 == n - 1 ? 0.5 : 1.0) * dx;
    // node i loses J, node i+1 gains J
    A.diag[i] -= cl / wl;
    A.upper[i] += cr / wl;
    A.lower[i + 1] += cl / wr;
    A.diag[i + 1] -= cr / wr;
  }
  return A;
}

// Solves (c I - q A) x = rhs by the Thomas algorithm.
void solve_shifted(const Operator& A, double c, double q, std::vector<double>& rhs) {
  const std::size_t n = rhs.size();
  std::vector<double> cp(n), dp(n);
  double b = c - q * A.diag[0];
  cp[0] = -q * A.upper[0] / b;
  dp[0] = rhs[0] / b;
  for (std::size_t i = 1; i < n; ++i) {
    const double a = -q * A.lower[i];
    b = c - q * A.diag[i] - a * cp[i - 1];
    cp[i] = i + 1 < n ? -q * A.upper[i] / b : 0.0;
    dp[i] = (rhs[i] - a * dp[i - 1]) / b;
  }
  rhs[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] = dp[i] - cp[i] * rhs[i + 1];
}

std::vector<double> cell_weights(std::size_t n, double dx) {
  std::vector<double> w(n, dx);
  w.front() = w.back() = 0.5 * dx;
  return w;
}

double mass(const std::vector<double>& w, const double* v) {
  double m = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) m += w[i] * v[i];
  return m;
}

}  // namespace

void OracleConfig::validate() const {
  if (!(x_max > x_min)) throw ValidationError("oracle config: x_max must exceed x_min");
  if (nx < 16) throw ValidationError("oracle config: nx must be at least 16");
  if (!(dt > 0.0)) throw ValidationError("oracle config: dt must be positive");
  if (talbot_nodes < 16) throw ValidationError("oracle config: talbot_nodes must be at least 16");
  if (!(quad_tol > 0.0)) throw ValidationError("oracle config: quad_tol must be positive");
  if (memory_cutoff < 0) throw ValidationError("oracle config: memory_cutoff must be nonnegative");
}

std::vector<double> fd_grid(const OracleConfig& cfg) {
  cfg.validate();
  const int n = cfg.nx % 2 == 0 ? cfg.nx + 1 : cfg.nx;
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double dx = (cfg.x_max - cfg.x_min) / (n - 1);
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = cfg.x_min + i * dx;
  // symmetric domains put the middle node exactly at the origin
  if (cfg.x_min == -cfg.x_max) xs[static_cast<std::size_t>(n / 2)] = 0.0;
  return xs;
}

double fd_last_mass_drift() { return last_mass_drift; }

std::vector<DensityProfile> fd_solve_times(const DiffusionParams& p, const InitialCondition& ic,
                                           const OracleConfig& cfg, const std::vector<double>& times) {
  p.validate();
  if (p.case_tag != CaseTag::Case1 && p.case_tag != CaseTag::Case2 &&
      p.case_tag != CaseTag::ForcedPower && p.case_tag != CaseTag::LaguerreDrift) {
    throw ValidationError("fd_solve: needs case1, case2, forced-power or laguerre-drift");
  }
  if (times.empty()) throw ValidationError("fd_solve: no output times requested");
  for (double t : times) {
    if (!(t > 0.0)) throw DomainError("fd_solve: output times must be positive");
  }
  const std::vector<double> xs = fd_grid(cfg);
  const std::size_t n = xs.size();
  const double dx = xs[1] - xs[0];
  const std::vector<double> w = cell_weights(n, dx);

  // step index of each output time
  const double t_end = *std::max_element(times.begin(), times.end());
  const std::size_t steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t_end / cfg.dt)));
  const double dt = t_end / static_cast<double>(steps);
  std::vector<std::size_t> out_steps;
  for (double t : times) {
    out_steps.push_back(std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(t / dt))));
  }

  std::vector<double> rho(n);
  if (ic.kind == InitialCondition::Kind::DeltaAtOrigin) {
    const double sigma = 2.0 * dx;
    for (std::size_t i = 0; i < n; ++i) rho[i] = std::exp(-0.5 * xs[i] * xs[i] / (sigma * sigma));
    const double m = mass(w, rho.data());
    for (double& v : rho) v /= m;
  } else {
    for (std::size_t i = 0; i < n; ++i) rho[i] = ic(xs[i]);
  }
  const double mass0 = mass(w, rho.data());

  const Operator A = build_operator(p, xs, dx);
  const double g = p.gamma;
  const double c0 = std::pow(dt, -g) / std::tgamma(2.0 - g);
  const bool memory = p.case_tag == CaseTag::Case2 && p.alpha_mem > 0.0;
  const double alpha = memory ? p.alpha_mem : 0.0;
  const double q = memory ? std::pow(dt, alpha) / std::tgamma(alpha + 2.0) : 1.0;

  const std::vector<double> b = l1_weights(g, steps + 1);
  auto history_sum = cfg.parallel ? history_sum_parallel : history_sum_serial;

  // increments[m-1] = rho^m - rho^(m-1); states[m] = rho^m (memory case only)
  std::vector<double> increments;
  increments.reserve(g < 1.0 ? steps * n : 0);
  std::vector<double> states;
  if (memory) {
    states.reserve((steps + 1) * n);
    states.insert(states.end(), rho.begin(), rho.end());
  }

  std::vector<double> hist(n), rhs(n), tmp(n), wts;
  std::vector<DensityProfile> out(times.size());
  last_mass_drift = 0.0;
  const std::size_t cutoff = static_cast<std::size_t>(cfg.memory_cutoff);

  for (std::size_t step = 1; step <= steps; ++step) {
    // L1 history: sum_{j=1}^{step-1} b_j (rho^{step-j} - rho^{step-j-1})
    std::fill(hist.begin(), hist.end(), 0.0);
    if (g < 1.0 && step > 1) {
      // keep j = 1..jmax; rows ascend in m = step - j from m0 = step - jmax
      const std::size_t jmax = cutoff > 0 ? std::min(step - 1, cutoff) : step - 1;
      const std::size_t m0 = step - jmax;
      wts.resize(jmax);
      for (std::size_t r = 0; r < jmax; ++r) wts[r] = b[step - m0 - r];
      history_sum(increments.data() + (m0 - 1) * n, wts.data(), jmax, n, hist.data());
    }
    for (std::size_t i = 0; i < n; ++i) rhs[i] = c0 * (rho[i] - hist[i]);

    if (memory) {
      const std::vector<double> a = memory_weights(alpha, step);
      std::size_t first = 0;
      if (cutoff > 0 && step > cutoff) first = step - cutoff;
      history_sum(states.data() + first * n, a.data() + first, step - first, n, tmp.data());
      A.apply(tmp, hist);
      for (std::size_t i = 0; i < n; ++i) rhs[i] += q * hist[i];
    }

    std::vector<double> next = rhs;
    solve_shifted(A, c0, q, next);

    if (g < 1.0) {
      for (std::size_t i = 0; i < n; ++i) tmp[i] = next[i] - rho[i];
      increments.insert(increments.end(), tmp.begin(), tmp.end());
    }
    rho.swap(next);
    if (memory) states.insert(states.end(), rho.begin(), rho.end());

    const double drift_rel = std::abs(mass(w, rho.data()) - mass0) / mass0;
    last_mass_drift = std::max(last_mass_drift, drift_rel);
    const double low = *std::min_element(rho.begin(), rho.end());
    if (drift_rel > 1e-6 || low < -1e-10 || !std::isfinite(low)) {
      std::ostringstream os;
      os << "fd_solve: instability at step " << step << " (mass drift " << drift_rel
         << ", minimum " << low << ")";
      throw NonConvergence(os.str());
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
      if (out_steps[k] != step) continue;
      out[k].t = dt * static_cast<double>(step);
      out[k].xs = xs;
      out[k].values = rho;
      out[k].norm_estimate = mass(w, rho.data());
    }
  }
  return out;
}

DensityProfile fd_solve(const DiffusionParams& p, const InitialCondition& ic, const OracleConfig& cfg,
                        double t_final) {
  return fd_solve_times(p, ic, cfg, {t_final}).front();
}

}  // namespace fracdiff::oracle
