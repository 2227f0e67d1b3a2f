#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trivote/metric_instance.hpp"
#include "trivote/rng.hpp"

namespace trivote {

/// The three constant-sample-complexity mechanisms.
enum class MechanismId { RandomDictatorship, RandomReferee, RandomOligarchy };

MechanismId parse_mechanism(const std::string& name);  // "rd" | "rr" | "ro"
std::string mechanism_name(MechanismId id);

/// Exact probability vector over alternatives.
struct OutcomeDistribution {
  std::vector<double> probs;

  /// Entries nonnegative and summing to 1 within `tol`.
  bool is_valid(double tol = 1e-12) const;
};

/// Random Dictatorship: a uniformly random agent's favorite.
/// probs[a] = |{u : favorite(u) = a}| / n.
OutcomeDistribution rd_distribution(const MetricInstance& inst);

/// Random Referee: agents u, v, w drawn independently and uniformly with
/// replacement; the outcome is whichever of the favorites p_u, p_v is nearer
/// to w (exact tie: lower index; p_u = p_v: that alternative). Computed by
/// exact enumeration of all n^3 ordered triples, so it is the trusted
/// baseline; O(n^3) keeps exact evaluation practical up to n of a few hundred.
OutcomeDistribution rr_distribution(const MetricInstance& inst);

/// Random Oligarchy: three favorites drawn with replacement; an alternative
/// reported at least twice wins, otherwise one of the three reports is chosen
/// uniformly. Exact enumeration of all n^3 ordered triples.
OutcomeDistribution ro_distribution(const MetricInstance& inst);

OutcomeDistribution mechanism_distribution(const MetricInstance& inst, MechanismId id);

enum class QueryType { Favorite, Comparison };

struct QueryRecord {
  std::size_t agent;
  QueryType type;
  std::size_t answer;  // alternative index
};

/// One mechanism execution in the query model.
struct MechanismRun {
  std::size_t chosen = 0;
  int queries_used = 0;
  std::vector<QueryRecord> transcript;
};

/// Runs a single seeded execution issuing exactly the queries the definition
/// prescribes: RD one favorite; RO three favorites (plus an internal uniform
/// pick when all three reports differ); RR two favorites and one comparison.
/// When the two proposed favorites coincide the comparison answer is forced,
/// so no comparison query is issued and the run records 2 queries.
/// The empirical law over seeds equals the corresponding *_distribution.
MechanismRun sample_mechanism(const MetricInstance& inst, MechanismId id, Rng& rng);
MechanismRun sample_mechanism(const MetricInstance& inst, MechanismId id, std::uint64_t seed);

}  // namespace trivote
