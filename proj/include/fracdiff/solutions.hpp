#pragma once

// Closed-form Green functions and densities of the generalized fractional
// diffusion equation
//
//   d^gamma rho/dt^gamma = int D(t-t') d/dx{ |x|^-theta d^(mu-1)/dx^(mu-1) rho^nu } dt'
//                          - d/dx{ F(x) rho }
//
// for each solvable parameter regime, plus the scalar quantities derived
// from them (moment exponents, similarity exponents, Tsallis index).

#include <functional>
#include <string>
#include <vector>

#include "fracdiff/foxh.hpp"

namespace fracdiff::solutions {

enum class CaseTag { Case1, Case2, ForcedPower, LaguerreDrift, SpaceFractional, Similarity };

std::string to_string(CaseTag tag);
/// Accepts case1, case2, forced-power, laguerre-drift, space-fractional, similarity.
CaseTag case_from_string(const std::string& name);

struct DiffusionParams {
  CaseTag case_tag = CaseTag::Case1;
  double gamma = 1.0;      // Caputo order in time, (0,1]
  double theta = 0.0;      // exponent of the |x|^-theta diffusion coefficient
  double mu = 2.0;         // spatial order
  double nu = 1.0;         // nonlinearity exponent
  double alpha_mem = 0.0;  // memory kernel D(t) = D t^(alpha-1)/Gamma(alpha)
  double D = 1.0;
  double K = 0.0;          // drift amplitude (ForcedPower: F = K x|x|^(a-1); Similarity: F = -K x)
  double force_exponent = -1.0;  // the a in F = K x|x|^(a-1); ForcedPower needs a + theta + 1 = 0
  double k1 = 0.0, k2 = 0.0;     // LaguerreDrift: F = -k1 x + k2 x^(-1-theta)

  /// Throws ValidationError naming the violated constraint.
  void validate() const;

  static DiffusionParams case1(double gamma, double theta, double D = 1.0);
  static DiffusionParams case2(double gamma, double alpha_mem, double theta, double D = 1.0);
  static DiffusionParams forced_power(double gamma, double theta, double K, double D = 1.0);
  static DiffusionParams laguerre_drift(double gamma, double theta, double k1, double k2,
                                        double D = 1.0);
  static DiffusionParams space_fractional(double gamma, double alpha_mem, double mu, double D = 1.0);
  /// nu is fixed by the similarity exponents; K is the linear drift rate.
  static DiffusionParams similarity(double mu, double theta, double K = 0.0, double D = 1.0);

  /// gamma, or gamma + alpha_mem for the memory-kernel cases.
  double effective_order() const;
};

// ------------------------------------------------------ Green functions

/// The H^{2,0}_{1,2} instance shared by Case1, Case2 (order gamma+alpha) and ForcedPower.
foxh::FoxHSpec green_spec(const DiffusionParams& p);

/// Scaled argument z = |x|^(2+theta) / ((2+theta)^2 D t^order).
double green_argument(const DiffusionParams& p, double x, double t);

double green_case1(const DiffusionParams& p, double x, double t);
/// Stretched-exponential large-z form; diverges at x = 0 when gamma < 1.
double green_case1_asymptotic(const DiffusionParams& p, double x, double t);
double green_case2(const DiffusionParams& p, double x, double t);
double green_forced_power(const DiffusionParams& p, double x, double t);

/// C(theta, gamma) of the figure-1 scaling: C * G equals the bare H-function value.
double fig1_scale(const DiffusionParams& p, double t);

// ------------------------------------------------------ scalar results

enum class DiffusionClass { Subdiffusive, Normal, Superdiffusive };

/// 2 gamma / (2 + theta); the memory-kernel case uses gamma + alpha.
double second_moment_exponent(const DiffusionParams& p);
DiffusionClass classify(double exponent, double tol = 1e-12);
std::string to_string(DiffusionClass c);

/// E_gamma(-(lambda_n + absorption) t^gamma) with lambda_n = (2+theta) n k1.
double ml_relax(const DiffusionParams& p, int n, double t, double absorption = 0.0);
double eigenvalue(const DiffusionParams& p, int n);

/// q = (3 + mu + theta) / (1 + mu + theta).
double tsallis_q(double mu, double theta);

// ------------------------------------------------ eigenfunction expansion

/// Order of the Laguerre polynomials, (k2/D - 1 - theta)/(2 + theta).
double laguerre_order(const DiffusionParams& p);

struct LaguerreGreen {
  double value = 0.0;
  /// Magnitude of the last retained term.
  double truncation = 0.0;
  int terms = 0;
};

/// Eigenfunction expansion of G(x, x0, t), normalized to unit mass on the
/// whole line; the n = 0 term is the stationary density. Throws NonConvergence
/// when n_max terms leave a last term above 1e-8 |G| + 1e-12 (the relaxation
/// factors decay only algebraically in n when gamma < 1).
LaguerreGreen laguerre_green(const DiffusionParams& p, double x, double x0, double t,
                             int n_max = 60);
double laguerre_stationary(const DiffusionParams& p, double x);
/// psi_n(x) = psi_0(x) L_n^(alpha)(k1 |x|^(2+theta) / ((2+theta) D)).
double laguerre_eigenfunction(const DiffusionParams& p, int n, double x);

// ------------------------------------------------------ space-fractional

double charfun_space_fractional(const DiffusionParams& p, double k, double t);
foxh::FoxHSpec space_fractional_spec(const DiffusionParams& p);
double density_space_fractional(const DiffusionParams& p, double x, double t);

// ----------------------------------------------------------- similarity

enum class Region { Compact, Infinite };
std::string to_string(Region r);

struct ScalingExponents {
  double alpha = 0.0, beta = 0.0, nu = 0.0;
  /// All three vanish (mu = 2): the ansatz collapses to a constant.
  bool degenerate = false;
};

ScalingExponents scaling_exponents(double mu, double theta);

/// phi(t) solving phi'/phi^2 + K/phi = k D / phi^(theta+mu+nu).
double scaling_phi(const DiffusionParams& p, double k_const, double phi0, double t);

/// Region of (mu, theta), with a 1e-9 guard band at the boundaries.
Region similarity_region(double mu, double theta);
/// b = -1 for the compact region, +1 for the infinite one.
int region_b(Region r);
double scaling_norm(double mu, double theta, Region region);
/// k fixed by the normalization, k = -N^((1-2mu-theta)/(1+mu+theta)) Gamma(alpha+1)/Gamma(-beta).
double similarity_k(double mu, double theta);
/// Scaled profile phi(t) rho(x,t) at z = x/phi(t), without the normalization.
double scaling_shape(double mu, double theta, int b, double z);
double scaling_density(const DiffusionParams& p, double k_const, double phi0, int b, double x,
                       double t);

// --------------------------------------------------------------- profiles

struct DensityProfile {
  double t = 0.0;
  std::vector<double> xs;
  std::vector<double> values;
  /// Trapezoid integral of the samples; never used to rescale them.
  double norm_estimate = 0.0;
};

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys);

struct InitialCondition {
  enum class Kind { DeltaAtOrigin, Tabulated };
  Kind kind = Kind::DeltaAtOrigin;
  std::vector<double> xs, values;

  static InitialCondition delta();
  /// Piecewise-linear table; values >= 0 with unit trapezoid mass (1e-6).
  static InitialCondition tabulated(std::vector<double> xs, std::vector<double> values);
  double operator()(double x) const;
};

struct GreenFunction {
  std::function<double(double x, double t)> eval;
  /// True only when G(x, x') depends on x - x' alone (theta = 0).
  bool translation_invariant = false;
};

/// Green function of the Case1, Case2 or ForcedPower regime.
GreenFunction green_function(const DiffusionParams& p);

/// Delta: samples G. Tabulated: convolution with the table (translation-invariant G only).
DensityProfile density_from_green(const GreenFunction& g, const InitialCondition& ic,
                                  const std::vector<double>& xs, double t);

/// Closed-form density of any regime at (x, t). For Similarity uses the
/// normalizing k and phi(0) = 1; LaguerreDrift starts from x0 = 0.
double density(const DiffusionParams& p, double x, double t);

/// int x^2 rho dx by quadrature of the closed-form density.
double second_moment(const DiffusionParams& p, double t);

/// int rho dx by quadrature of the closed-form density.
double total_mass(const DiffusionParams& p, double t);

}  // namespace fracdiff::solutions
