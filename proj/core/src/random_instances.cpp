#include "trivote/random_instances.hpp"

#include <vector>

namespace trivote {

MetricInstance random_planar_instance(Rng& rng, std::size_t agents, std::size_t alternatives) {
  std::vector<Point> pts(agents + alternatives);
  for (Point& p : pts) p = {rng.uniform_double(), rng.uniform_double()};
  return MetricInstance::from_points(agents, alternatives, std::move(pts));
}

MetricInstance random_matrix_instance(Rng& rng, std::size_t agents, std::size_t alternatives) {
  const std::size_t entities = agents + alternatives;
  std::vector<double> m(entities * entities, 0.0);
  for (std::size_t i = 0; i < entities; ++i) {
    for (std::size_t j = i + 1; j < entities; ++j) {
      const double w = 0.1 + 1.9 * rng.uniform_double();
      m[i * entities + j] = w;
      m[j * entities + i] = w;
    }
  }
  // Floyd-Warshall closure turns arbitrary positive weights into a metric.
  for (std::size_t k = 0; k < entities; ++k)
    for (std::size_t i = 0; i < entities; ++i)
      for (std::size_t j = 0; j < entities; ++j) {
        const double via = m[i * entities + k] + m[k * entities + j];
        if (via < m[i * entities + j]) m[i * entities + j] = via;
      }
  return MetricInstance::from_matrix(agents, alternatives, std::move(m));
}

MetricInstance random_instance(Rng& rng, std::size_t max_agents, std::size_t max_alternatives) {
  while (true) {
    const std::size_t n = 1 + rng.uniform_index(max_agents);
    const std::size_t m = 1 + rng.uniform_index(max_alternatives);
    MetricInstance inst = rng.next_u64() % 2 == 0 ? random_planar_instance(rng, n, m)
                                                  : random_matrix_instance(rng, n, m);
    if (optimal_alternative(inst).second > 0.0) return inst;
  }
}

MetricInstance random_colocated_instance(Rng& rng, std::size_t agents) {
  std::vector<Point> pts(2 * agents);
  for (std::size_t i = 0; i < agents; ++i) {
    pts[i] = {rng.uniform_double(), rng.uniform_double()};
    pts[agents + i] = pts[i];
  }
  return MetricInstance::from_points(agents, agents, std::move(pts));
}

}  // namespace trivote
