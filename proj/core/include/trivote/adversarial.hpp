#pragma once

#include <cstddef>
#include <vector>

#include "trivote/metric_instance.hpp"

namespace trivote {

enum class StarVariant { A, B };
enum class StarGeometry { AbstractMetric, EuclideanCircle };

/// The three-leaf star family: agents sit on the leaves (distance 0 to the
/// colocated leaf alternative), every leaf is at distance 1 from the hub
/// alternative. Variant A separates leaves by 2; variant B by 1 + eps.
/// The Euclidean realization places the leaves on the unit circle around the
/// hub: 120-degree spacing for variant A (all leaf pairs at sqrt(3)) and
/// 60-degree spacing for variant B (adjacent pairs at 1, the outer pair at
/// sqrt(3)).
struct StarFamily {
  StarVariant variant = StarVariant::A;
  double eps = 1e-3;  // used by the abstract variant B; must lie in (0, 0.5)
  StarGeometry geometry = StarGeometry::AbstractMetric;
};

/// Alternative indexing for star instances: 0..2 are the leaves, 3 is the hub.
inline constexpr std::size_t kStarHub = 3;

MetricInstance build_star_instance(const StarFamily& family);

/// Two-cluster matrix instance on which every favorite-only mechanism has
/// squared distortion growing linearly in the number of alternatives:
/// agent 0 plus its k private alternatives form an eps-clique at distance 1
/// from everything else; the other n-1 agents and their k(n-1) alternatives
/// form a second eps-clique. Alternatives 0..k-1 are agent 0's private set.
/// Requires n >= 2, k >= 1 and eps in (0, 1/n].
MetricInstance build_topk_squared_instance(std::size_t n_agents, std::size_t k, double eps);

/// Planar instance realizing the same separation geometrically: one outlier
/// agent at unit distance from a circle of diameter `delta` holding the other
/// n-1 agents, every agent with k private alternatives at distance eps
/// (placed toward the far side so the textbook cost bounds hold exactly).
/// Alternatives 0..k-1 belong to the outlier. Requires n >= 2, k >= 1,
/// eps <= delta/10 and delta <= 1/n.
MetricInstance build_circle_instance(std::size_t n_agents, std::size_t k, double eps,
                                     double delta);

/// Best mixed assignment against the ordinally indistinguishable star pair.
struct MixtureOptimum {
  double center_prob = 0.0;  // probability mass on the hub
  double value = 0.0;        // the equalized worst-case distortion
};

/// Closed form of the min-max mixture over the two star variants:
/// center_prob = (2+2eps)/(5-4eps) and value = 4/3 - center_prob/3
/// (value -> 6/5 as eps -> 0). Accepts eps in [0, 0.5). The derivation is for
/// the abstract-metric family; requesting the Euclidean realization throws.
MixtureOptimum optimal_ordinal_mixture(double eps,
                                       StarGeometry geometry = StarGeometry::AbstractMetric);

/// max of the two per-variant expected distortions when the hub carries
/// probability `center_prob` and the leaves share the rest; minimizing this
/// over center_prob recovers optimal_ordinal_mixture by grid search.
double star_mixture_max_regret(double eps, double center_prob);

/// An exact social-cost claim checked by verify_construction.
struct CostClaim {
  std::size_t alternative;
  double cost;
  double tolerance;
};

/// Recomputes social costs and confirms each claim within its tolerance.
bool verify_construction(const MetricInstance& inst, const std::vector<CostClaim>& claims);

}  // namespace trivote
