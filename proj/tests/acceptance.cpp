// Runs the default verification suite and prints one line per acceptance
// criterion: the check verdict, its measured error and tolerance, and its
// runtime against the criterion's time limit. Exits 1 if any line fails.

#include <cstdio>
#include <string>
#include <vector>

#include "fracdiff/oracle.hpp"

namespace {

struct Criterion {
  int number;
  const char* check;
  double limit_seconds;
};

const std::vector<Criterion> kCriteria = {
    {1, "gaussian-reduction", 5.0},  {2, "foxh-dual-route", 60.0}, {3, "laplace-oracle", 60.0},
    {4, "fd-oracle", 120.0},         {5, "normalization", 60.0},   {6, "second-moment", 120.0},
    {7, "asymptotics", 30.0},        {8, "similarity", 30.0},      {9, "tsallis-tail", 30.0},
    {10, "eigenfunction", 60.0},     {11, "space-fractional", 60.0}, {12, "leibniz", 60.0},
};

}  // namespace

int main() {
  using namespace fracdiff::oracle;
  const SuiteResult suite = run_verification_suite(OracleConfig{});
  bool all = true;
  double total = 0.0;
  for (const Criterion& c : kCriteria) {
    const VerificationReport* found = nullptr;
    for (const auto& r : suite.reports) {
      if (r.check_name == c.check) found = &r;
    }
    if (!found) {
      std::printf("criterion %2d %-18s: FAIL  no report\n", c.number, c.check);
      all = false;
      continue;
    }
    const bool in_time = found->runtime_seconds < c.limit_seconds;
    const bool ok = found->passed && in_time;
    all = all && ok;
    total += found->runtime_seconds;
    std::printf("criterion %2d %-18s: %s  measured %.3e  tol %.3e  runtime %.2f s (limit %.0f s)%s\n", c.number,
                c.check, ok ? "PASS" : "FAIL", found->measured_error, found->tolerance, found->runtime_seconds,
                c.limit_seconds, in_time ? "" : "  over time");
  }
  std::printf("suite runtime %.2f s (limit 600 s)\n", total);
  if (total >= 600.0) all = false;
  return all ? 0 : 1;
}
