#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trivote {

/// Randomized property suites shared by the CLI `check` command and the
/// acceptance tests.
enum class CheckSuite { RefereeInequality, Jensen, SquaredBound, All };

CheckSuite parse_check_suite(const std::string& name);

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;  // the derived per-suite sub-seed actually used
  std::uint64_t instances_checked = 0;
  std::uint64_t violations = 0;
  std::vector<std::string> messages;  // one per violation, capped

  bool passed() const { return violations == 0; }
};

/// Runs the selected suites on `count` seeded random instances each
/// (n, m <= 8; planar and matrix mixed).
///
///   lemma2   - the referee inequality holds on every agent quadruple
///   jensen   - squared distortion >= distortion^2 for rd, rr and ro
///   theorem2 - exact rr squared distortion <= 21 and distortion <= sqrt(21)
std::vector<SuiteResult> run_check_suites(CheckSuite suite, std::uint64_t seed,
                                          std::uint64_t count);

}  // namespace trivote
