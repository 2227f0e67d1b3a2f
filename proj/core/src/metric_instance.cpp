#include "trivote/metric_instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace trivote {

namespace {

void validate_counts(std::size_t agents, std::size_t alternatives) {
  if (agents == 0) throw std::invalid_argument("instance needs at least one agent");
  if (alternatives == 0) throw std::invalid_argument("instance needs at least one alternative");
}

void validate_matrix(std::size_t entities, const std::vector<double>& m) {
  if (m.size() != entities * entities)
    throw std::invalid_argument("distance matrix must have " + std::to_string(entities * entities) +
                                " entries, got " + std::to_string(m.size()));
  for (std::size_t i = 0; i < entities; ++i) {
    for (std::size_t j = 0; j < entities; ++j) {
      const double d = m[i * entities + j];
      if (!std::isfinite(d)) throw std::invalid_argument("distance matrix contains a non-finite value");
      if (d < 0.0) throw std::invalid_argument("distance matrix contains a negative value");
      if (m[j * entities + i] != d) throw std::invalid_argument("distance matrix is not symmetric");
    }
    if (m[i * entities + i] != 0.0)
      throw std::invalid_argument("distance matrix has a nonzero diagonal entry");
  }
  for (std::size_t x = 0; x < entities; ++x) {
    for (std::size_t y = 0; y < entities; ++y) {
      const double dxy = m[x * entities + y];
      for (std::size_t z = 0; z < entities; ++z) {
        if (m[x * entities + z] > dxy + m[y * entities + z] + kTriangleTolerance)
          throw std::invalid_argument(
              "triangle inequality violated for entities (" + std::to_string(x) + ", " +
              std::to_string(y) + ", " + std::to_string(z) + ")");
      }
    }
  }
}

}  // namespace

MetricInstance MetricInstance::from_matrix(std::size_t agents, std::size_t alternatives,
                                           std::vector<double> matrix) {
  validate_counts(agents, alternatives);
  validate_matrix(agents + alternatives, matrix);
  MetricInstance inst;
  inst.kind_ = GeometryKind::Matrix;
  inst.agents_ = agents;
  inst.alternatives_ = alternatives;
  inst.matrix_ = std::move(matrix);
  return inst;
}

MetricInstance MetricInstance::unchecked_matrix(std::size_t agents, std::size_t alternatives,
                                                std::vector<double> matrix) {
  validate_counts(agents, alternatives);
  const std::size_t entities = agents + alternatives;
  if (matrix.size() != entities * entities)
    throw std::invalid_argument("distance matrix has the wrong size");
  MetricInstance inst;
  inst.kind_ = GeometryKind::Matrix;
  inst.agents_ = agents;
  inst.alternatives_ = alternatives;
  inst.matrix_ = std::move(matrix);
  return inst;
}

MetricInstance MetricInstance::from_points(std::size_t agents, std::size_t alternatives,
                                           std::vector<Point> points) {
  validate_counts(agents, alternatives);
  if (points.size() != agents + alternatives)
    throw std::invalid_argument("planar instance must list one point per entity");
  for (const Point& p : points)
    if (!is_finite(p)) throw std::invalid_argument("planar instance contains a non-finite point");
  MetricInstance inst;
  inst.kind_ = GeometryKind::Planar;
  inst.agents_ = agents;
  inst.alternatives_ = alternatives;
  inst.points_ = std::move(points);
  return inst;
}

const std::vector<Point>& MetricInstance::points() const {
  if (kind_ != GeometryKind::Planar) throw std::logic_error("matrix instance has no points");
  return points_;
}

const std::vector<double>& MetricInstance::matrix() const {
  if (kind_ != GeometryKind::Matrix) throw std::logic_error("planar instance has no matrix");
  return matrix_;
}

bool MetricInstance::is_metric() const {
  if (kind_ == GeometryKind::Planar) return true;
  try {
    validate_matrix(entity_count(), matrix_);
  } catch (const std::invalid_argument&) {
    return false;
  }
  return true;
}

double social_cost(const MetricInstance& inst, std::size_t alternative) {
  if (alternative >= inst.alternative_count())
    throw std::out_of_range("alternative index out of range");
  double total = 0.0;
  for (std::size_t u = 0; u < inst.agent_count(); ++u)
    total += inst.agent_alternative_distance(u, alternative);
  return total;
}

std::pair<std::size_t, double> optimal_alternative(const MetricInstance& inst) {
  std::size_t best = 0;
  double best_cost = social_cost(inst, 0);
  for (std::size_t a = 1; a < inst.alternative_count(); ++a) {
    const double cost = social_cost(inst, a);
    if (cost < best_cost) {
      best = a;
      best_cost = cost;
    }
  }
  return {best, best_cost};
}

std::size_t favorite_alternative(const MetricInstance& inst, std::size_t agent) {
  if (agent >= inst.agent_count()) throw std::out_of_range("agent index out of range");
  std::size_t best = 0;
  double best_d = inst.agent_alternative_distance(agent, 0);
  for (std::size_t a = 1; a < inst.alternative_count(); ++a) {
    const double d = inst.agent_alternative_distance(agent, a);
    if (d < best_d) {
      best = a;
      best_d = d;
    }
  }
  return best;
}

std::size_t compare_alternatives(const MetricInstance& inst, std::size_t agent, std::size_t a,
                                 std::size_t b) {
  if (agent >= inst.agent_count()) throw std::out_of_range("agent index out of range");
  if (a >= inst.alternative_count() || b >= inst.alternative_count())
    throw std::out_of_range("alternative index out of range");
  const double da = inst.agent_alternative_distance(agent, a);
  const double db = inst.agent_alternative_distance(agent, b);
  if (da < db) return a;
  if (db < da) return b;
  return std::min(a, b);
}

PreferenceProfile derive_profile(const MetricInstance& inst) {
  PreferenceProfile profile;
  profile.orders.resize(inst.agent_count());
  for (std::size_t u = 0; u < inst.agent_count(); ++u) {
    auto& order = profile.orders[u];
    order.resize(inst.alternative_count());
    for (std::size_t a = 0; a < inst.alternative_count(); ++a) order[a] = a;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double da = inst.agent_alternative_distance(u, a);
      const double db = inst.agent_alternative_distance(u, b);
      if (da != db) return da < db;
      return a < b;
    });
  }
  return profile;
}

}  // namespace trivote
