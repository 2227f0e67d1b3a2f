#pragma once

#include <cstddef>

#include "trivote/metric_instance.hpp"
#include "trivote/rng.hpp"

namespace trivote {

/// Agents and alternatives at uniform points in [0, 1]^2.
MetricInstance random_planar_instance(Rng& rng, std::size_t agents, std::size_t alternatives);

/// Random explicit metric: a random symmetric weight matrix run through its
/// shortest-path closure, which enforces the triangle inequality.
MetricInstance random_matrix_instance(Rng& rng, std::size_t agents, std::size_t alternatives);

/// Random sizes in [1, max_*] and a 50/50 mix of planar and matrix geometry.
/// Instances with zero optimal social cost are redrawn, so distortion is
/// always defined.
MetricInstance random_instance(Rng& rng, std::size_t max_agents, std::size_t max_alternatives);

/// Planar instance with every agent sitting exactly on its own alternative
/// (m = n), the restricted model used by the plane analysis.
MetricInstance random_colocated_instance(Rng& rng, std::size_t agents);

}  // namespace trivote
