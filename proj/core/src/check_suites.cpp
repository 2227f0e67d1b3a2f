#include "trivote/check_suites.hpp"

#include <cmath>
#include <stdexcept>

#include "trivote/analysis.hpp"
#include "trivote/random_instances.hpp"

namespace trivote {

namespace {

constexpr std::size_t kMaxMessages = 16;

void note_violation(SuiteResult& result, std::string message) {
  ++result.violations;
  if (result.messages.size() < kMaxMessages) result.messages.push_back(std::move(message));
}

SuiteResult run_referee_inequality(std::uint64_t seed, std::uint64_t count) {
  SuiteResult result{"lemma2", Rng::derive_seed(seed, 0x11), 0, 0, {}};
  Rng rng(result.seed);
  for (std::uint64_t i = 0; i < count; ++i) {
    const MetricInstance inst = random_instance(rng, 8, 8);
    ++result.instances_checked;
    const auto violations = check_referee_inequality(inst);
    if (!violations.empty())
      note_violation(result, "instance " + std::to_string(i) + ": " +
                                 std::to_string(violations.size()) + " quadruples violated");
  }
  return result;
}

SuiteResult run_jensen(std::uint64_t seed, std::uint64_t count) {
  SuiteResult result{"jensen", Rng::derive_seed(seed, 0x22), 0, 0, {}};
  Rng rng(result.seed);
  const MechanismId mechanisms[] = {MechanismId::RandomDictatorship, MechanismId::RandomReferee,
                                    MechanismId::RandomOligarchy};
  for (std::uint64_t i = 0; i < count; ++i) {
    const MetricInstance inst = random_instance(rng, 8, 8);
    ++result.instances_checked;
    for (MechanismId id : mechanisms) {
      const OutcomeDistribution dist = mechanism_distribution(inst, id);
      const double d1 = expected_distortion(inst, dist, 1);
      const double d2 = expected_distortion(inst, dist, 2);
      if (d2 < d1 * d1 - 1e-12)
        note_violation(result, "instance " + std::to_string(i) + " mechanism " +
                                   mechanism_name(id) + ": E[X^2]=" + std::to_string(d2) +
                                   " < (E[X])^2=" + std::to_string(d1 * d1));
    }
  }
  return result;
}

SuiteResult run_squared_bound(std::uint64_t seed, std::uint64_t count) {
  SuiteResult result{"theorem2", Rng::derive_seed(seed, 0x33), 0, 0, {}};
  Rng rng(result.seed);
  const double root21 = std::sqrt(21.0);
  for (std::uint64_t i = 0; i < count; ++i) {
    const MetricInstance inst = random_instance(rng, 8, 8);
    ++result.instances_checked;
    const OutcomeDistribution dist = rr_distribution(inst);
    const double d2 = expected_distortion(inst, dist, 2);
    const double d1 = expected_distortion(inst, dist, 1);
    if (d2 > 21.0 + 1e-9)
      note_violation(result,
                     "instance " + std::to_string(i) + ": squared distortion " + std::to_string(d2));
    if (d1 > root21 + 1e-9)
      note_violation(result, "instance " + std::to_string(i) + ": distortion " + std::to_string(d1));
  }
  return result;
}

}  // namespace

CheckSuite parse_check_suite(const std::string& name) {
  if (name == "lemma2") return CheckSuite::RefereeInequality;
  if (name == "jensen") return CheckSuite::Jensen;
  if (name == "theorem2") return CheckSuite::SquaredBound;
  if (name == "all") return CheckSuite::All;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_check_suites(CheckSuite suite, std::uint64_t seed,
                                          std::uint64_t count) {
  std::vector<SuiteResult> results;
  if (suite == CheckSuite::RefereeInequality || suite == CheckSuite::All)
    results.push_back(run_referee_inequality(seed, count));
  if (suite == CheckSuite::Jensen || suite == CheckSuite::All)
    results.push_back(run_jensen(seed, count));
  if (suite == CheckSuite::SquaredBound || suite == CheckSuite::All)
    results.push_back(run_squared_bound(seed, count));
  return results;
}

}  // namespace trivote
