#pragma once

// Command-line front end: density evaluation, figure tables, second-moment
// scaling and the verification suite. Output is CSV (with a "# key=value"
// parameter echo above the header row) or a JSON mirror of the same records.

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fracdiff/oracle.hpp"
#include "fracdiff/solutions.hpp"

namespace fracdiff::cli {

enum class Command { Eval, Table, Moments, Verify };
enum class Format { Csv, Json };

/// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;   // a verification check failed or a computation did not converge
inline constexpr int kExitInvalid = 2;  // bad flags or parameters

/// Evenly spaced grid written lo:hi:count.
struct Range {
  double lo = 0.0, hi = 0.0;
  int count = 0;
  std::vector<double> linspace() const;
  std::vector<double> logspace() const;
};

/// Throws ValidationError on malformed text, count < 1, or hi < lo.
Range parse_range(const std::string& text);
/// Comma-separated list of positive times.
std::vector<double> parse_times(const std::string& text);

struct RunConfig {
  Command command = Command::Eval;
  solutions::CaseTag case_tag = solutions::CaseTag::Case1;

  // Model parameters; unset ones take per-case defaults, set ones must apply to the case.
  std::optional<double> gamma, theta, mu, alpha, D, K, k1, k2;
  std::optional<double> x0;      // laguerre-drift source point
  std::optional<int> b;          // similarity: -1 compact, +1 infinite
  std::optional<double> k_const; // similarity: constant of the phi equation
  std::optional<double> phi0;    // similarity: phi(0)

  std::optional<Range> grid;     // x (eval) or scaled abscissa (table)
  std::vector<double> times{1.0};
  int figure = 1;

  // verify
  std::vector<std::string> only;
  double tolerance_scale = 1.0;
  oracle::OracleConfig oracle;

  std::string output_path;  // empty writes to the output stream
  Format format = Format::Csv;

  /// Builds the model for case_tag; throws ValidationError naming the violated constraint.
  solutions::DiffusionParams params() const;
  /// Checks everything the selected command needs before any computation.
  void validate() const;
};

/// One output cell: empty, number, text or flag.
using Cell = std::variant<std::monostate, double, std::string, bool>;

struct Table {
  std::vector<std::pair<std::string, std::string>> echo;  // parameter echo
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

/// Rows (x, t, rho) for every t in cfg.times and x on the grid.
Table cmd_eval(const RunConfig& cfg);
/// Scaled abscissa/ordinate of figure 1 (C G vs z), 2 or 3 (phi rho vs x/phi).
Table cmd_table(const RunConfig& cfg);
/// (t, <x^2>, local slope) rows and a closing regression row.
Table cmd_moments(const RunConfig& cfg);
/// Suite report; `passed` is set to whether every check passed.
Table cmd_verify(const RunConfig& cfg, bool& passed, std::ostream& log);

/// Parses argv into a RunConfig. Throws ValidationError on bad flags; returns
/// nullopt after printing help.
std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::ostream& out);

/// Parses, validates, runs and writes the output. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fracdiff::cli
