#pragma once

// Independent numerical routes to rho(x,t): the Laplace-domain Green function
// with fixed-Talbot inversion, fractional finite differences, Fourier
// inversion of the characteristic function, and Grunwald-Letnikov
// differintegration. The verification suite compares them with the closed forms.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "fracdiff/solutions.hpp"

namespace fracdiff::oracle {

using cplx = std::complex<double>;
using solutions::DensityProfile;
using solutions::DiffusionParams;
using solutions::InitialCondition;

struct OracleConfig {
  double x_min = -20.0, x_max = 20.0;
  /// Grid points; an even count is raised by one so that x = 0 is a node and
  /// the |x|^-theta coefficient, sampled at cell faces, never sees x = 0.
  int nx = 512;
  double dt = 1e-3;
  int talbot_nodes = 16;
  double quad_tol = 1e-10;
  /// Caputo history terms kept (0 = full history).
  int memory_cutoff = 0;
  /// Use the OpenMP history kernel; results are bit-identical either way.
  bool parallel = true;

  /// Throws ValidationError naming the violated constraint.
  void validate() const;
};

// ------------------------------------------------------------------ Laplace

/// Laplace transform in t of the Case1/Case2 Green function, with
/// D~(s) = D (Case1) or D s^-alpha (Case2). Requires Re s > 0 or |arg s| < pi.
cplx laplace_green(const DiffusionParams& p, double x, cplx s);

struct TalbotResult {
  double value = 0.0;
  /// |f_2M - f_M|, the node-doubling change.
  double change = 0.0;
};

/// Fixed-Talbot inversion with M and 2M nodes (M = nodes). Returns the 2M value;
/// throws NonConvergence when the doubling change exceeds tol * max(|value|, floor).
TalbotResult talbot_invert(const std::function<cplx(cplx)>& F, double t, int nodes,
                           double tol = 1e-7, double floor = 1e-300);

// ------------------------------------------------------ finite differences

/// out[i] = sum_j w[j] rows[j][i] for rows stored contiguously (row j at rows + j n).
/// Each out[i] is accumulated in ascending j in both versions.
void history_sum_serial(const double* rows, const double* w, std::size_t count, std::size_t n,
                        double* out);
void history_sum_parallel(const double* rows, const double* w, std::size_t count, std::size_t n,
                          double* out);

/// L1 weights b_j = (j+1)^(1-gamma) - j^(1-gamma), j = 0..count-1.
std::vector<double> l1_weights(double gamma, std::size_t count);

/// Product-trapezoid weights of the order-alpha Riemann-Liouville integral at
/// step n: a_{j,n}, j = 0..n (dt^alpha / Gamma(alpha+2) not included).
std::vector<double> memory_weights(double alpha, std::size_t n);

/// Cell-centred positions of the FD grid for cfg.
std::vector<double> fd_grid(const OracleConfig& cfg);

/// Time-fractional FD solution: L1 Caputo scheme, conservative flux form
/// with face-sampled |x|^-theta, Scharfetter-Gummel drift, product-trapezoid
/// memory for Case2, zero-flux walls. The delta initial condition is a
/// Gaussian of width 2 dx. Returns profiles at each requested time (rounded
/// to the step grid). Throws NonConvergence on mass drift > 1e-6 or values
/// below -1e-10.
std::vector<DensityProfile> fd_solve_times(const DiffusionParams& p, const InitialCondition& ic,
                                           const OracleConfig& cfg, const std::vector<double>& times);
DensityProfile fd_solve(const DiffusionParams& p, const InitialCondition& ic,
                        const OracleConfig& cfg, double t_final);

/// Largest relative deviation of the discrete mass from its initial value in the last run
/// of fd_solve on this thread.
double fd_last_mass_drift();

// ------------------------------------------------------------------ Fourier

/// (1/pi) int_0^inf cos(k x) charfun(k, t) dk, integrated between the zeros
/// of cos(k x) with Wynn-epsilon acceleration of the partial sums.
double fourier_invert(const std::function<double(double k, double t)>& charfun, double x, double t,
                      double quad_tol = 1e-10);

// ---------------------------------------------------------- differintegral

/// Riemann-Liouville differintegral of order `order` at x with lower terminal 0,
/// by Grunwald-Letnikov sums on N = 256 2^i points (i < levels), extrapolated
/// to h = 0 assuming an error expansion in h^1, h^2, ... and h^(lead+1+j),
/// where f(t) ~ t^lead near t = 0. The point t = 0 is excluded from the sums.
double gl_differintegral(const std::function<double(double)>& f, double x, double order,
                         double lead, int levels = 7);

// ------------------------------------------------------------- verification

struct VerificationReport {
  std::string check_name;
  double measured_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  double runtime_seconds = 0.0;
  /// Human-readable detail; not part of the CSV record.
  std::string note;
};

struct SuiteOptions {
  /// Check names to run; empty runs all.
  std::vector<std::string> only;
  /// Multiplies every tolerance.
  double tolerance_scale = 1.0;
};

struct SuiteResult {
  std::vector<VerificationReport> reports;
  /// Explains an empty report list.
  std::string note;
};

/// Names of the checks, in execution order.
const std::vector<std::string>& check_names();

/// Runs the cross-checks; individual failures are reported, never thrown.
SuiteResult run_verification_suite(const OracleConfig& cfg, const SuiteOptions& opts = {});

/// check_name,measured_error,tolerance,passed,runtime_seconds
std::string reports_to_csv(const std::vector<VerificationReport>& reports);

}  // namespace fracdiff::oracle
