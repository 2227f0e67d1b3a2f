#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "trivote/geometry.hpp"

namespace trivote {

enum class GeometryKind { Matrix, Planar };

/// Tolerance used when validating the triangle inequality on explicit matrices.
inline constexpr double kTriangleTolerance = 1e-9;

/// Agents and alternatives embedded in a common metric space.
///
/// Entities share one index space: agents occupy [0, n) and alternatives
/// [n, n+m). An instance is either an explicit (n+m) x (n+m) distance matrix
/// or a planar embedding (agent points first, then alternative points, with
/// Euclidean distances). Construction validates the metric axioms: distances
/// are finite and nonnegative, the diagonal is zero, the matrix is exactly
/// symmetric, and every triple satisfies the triangle inequality within
/// kTriangleTolerance. Planar embeddings satisfy all of that by construction,
/// so only finiteness is checked.
///
/// Instances are immutable after construction and safe to share across threads.
class MetricInstance {
 public:
  /// Builds a matrix instance. `matrix` is row-major with (n+m)^2 entries.
  /// Throws std::invalid_argument on any violated invariant.
  static MetricInstance from_matrix(std::size_t agents, std::size_t alternatives,
                                    std::vector<double> matrix);

  /// Builds a planar instance; `points` lists agent points then alternative points.
  static MetricInstance from_points(std::size_t agents, std::size_t alternatives,
                                    std::vector<Point> points);

  /// Builds a matrix instance without metric validation. Exists so diagnostics
  /// (e.g. the referee-inequality checker) can be run against deliberately broken inputs;
  /// everything else should use from_matrix.
  static MetricInstance unchecked_matrix(std::size_t agents, std::size_t alternatives,
                                         std::vector<double> matrix);

  std::size_t agent_count() const { return agents_; }
  std::size_t alternative_count() const { return alternatives_; }
  std::size_t entity_count() const { return agents_ + alternatives_; }
  GeometryKind kind() const { return kind_; }

  /// Distance between any two entities in the shared index space.
  double entity_distance(std::size_t a, std::size_t b) const {
    if (kind_ == GeometryKind::Matrix) return matrix_[a * entity_count() + b];
    return distance(points_[a], points_[b]);
  }

  double agent_alternative_distance(std::size_t agent, std::size_t alternative) const {
    return entity_distance(agent, agents_ + alternative);
  }

  double alternative_pair_distance(std::size_t a, std::size_t b) const {
    return entity_distance(agents_ + a, agents_ + b);
  }

  double agent_pair_distance(std::size_t u, std::size_t v) const { return entity_distance(u, v); }

  /// Planar instances only: the embedded points (agents first).
  const std::vector<Point>& points() const;

  /// Matrix instances only: the raw row-major distance matrix.
  const std::vector<double>& matrix() const;

  /// True when every metric axiom holds (always true for validated instances;
  /// can be false for unchecked_matrix inputs).
  bool is_metric() const;

  friend bool operator==(const MetricInstance& a, const MetricInstance& b) {
    return a.kind_ == b.kind_ && a.agents_ == b.agents_ && a.alternatives_ == b.alternatives_ &&
           a.matrix_ == b.matrix_ && a.points_ == b.points_;
  }

 private:
  MetricInstance() = default;

  GeometryKind kind_ = GeometryKind::Matrix;
  std::size_t agents_ = 0;
  std::size_t alternatives_ = 0;
  std::vector<double> matrix_;  // matrix form
  std::vector<Point> points_;   // planar form
};

/// One total order per agent over alternative indices, nearest first,
/// ties broken toward the lower alternative index.
struct PreferenceProfile {
  std::vector<std::vector<std::size_t>> orders;
};

/// Sum over agents (in ascending agent order) of the distance to `alternative`.
double social_cost(const MetricInstance& inst, std::size_t alternative);

/// The social-cost minimizer and its cost; ties resolve to the lowest index.
std::pair<std::size_t, double> optimal_alternative(const MetricInstance& inst);

/// The alternative nearest to `agent`; ties resolve to the lowest index.
std::size_t favorite_alternative(const MetricInstance& inst, std::size_t agent);

/// The nearer of alternatives {a, b} for `agent`; exact tie resolves to min(a, b).
std::size_t compare_alternatives(const MetricInstance& inst, std::size_t agent, std::size_t a,
                                 std::size_t b);

/// Materializes the full ordinal profile implied by the distances.
PreferenceProfile derive_profile(const MetricInstance& inst);

}  // namespace trivote
