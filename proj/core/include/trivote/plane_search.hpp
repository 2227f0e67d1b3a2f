#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include "trivote/errors.hpp"
#include "trivote/geometry.hpp"

namespace trivote {

/// Five points in the plane (a multiset; repeats allowed).
struct PlanarConfig {
  std::array<Point, 5> points;

  friend bool operator==(const PlanarConfig& a, const PlanarConfig& b) {
    return a.points == b.points;
  }
};

bool all_coincident(const PlanarConfig& cfg);

/// Lexicographic order on the sorted point multisets; the deterministic
/// tie-break for reported argmax configurations.
bool config_lex_less(const PlanarConfig& a, const PlanarConfig& b);

/// Average referee cost of the 5-tuple: over all 30 assignments of roles
/// (unordered proposer pair {i,j}, referee k) and both bystanders l, the mean
/// distance from the bystander to the proposer alternative nearer to the
/// referee (exact referee ties resolve to the lexicographically smaller
/// point). 60 terms, averaged.
double rr_average_cost(const PlanarConfig& cfg);

struct MedianResult {
  Point point;
  double average_cost = 0.0;  // mean distance from the inputs to `point`
};

/// Geometric median via Weiszfeld iteration with anchor handling: every
/// distinct input point is first tested for subgradient optimality (an input
/// point with ||sum of unit vectors to the others|| <= multiplicity is the
/// exact minimizer); otherwise iterate from the centroid, stepping off any
/// anchor along the descent direction, until the gradient norm drops below
/// 1e-9. The best input point is always evaluated as a fallback candidate.
MedianResult geometric_median(std::span<const Point> pts);

/// rr_average_cost / optimal average cost; exactly 1 for a fully coincident
/// tuple (where the ratio is 0/0). Invariant under permutation, rotation,
/// translation and positive scaling.
double pessimistic_distortion(const PlanarConfig& cfg);

/// The snapping grid: spacing delta = 1/delta_inverse over [0, 1+delta]^2,
/// with anchor columns alpha*delta for alpha in {0, ..., delta_inverse}.
struct GridSpec {
  std::uint64_t delta_inverse = 1;

  double delta() const { return 1.0 / static_cast<double>(delta_inverse); }
  std::uint64_t axis_points() const { return delta_inverse + 2; }  // 0, d, ..., 1+d
  std::uint64_t alpha_count() const { return delta_inverse + 1; }

  /// Nearest grid point; coordinate ties snap toward the lower value.
  Point snap(const Point& p) const;

  /// True when every coordinate is within `tol` of a grid point in the extent.
  bool on_grid(const Point& p, double tol = 1e-12) const;
};

/// Half-width of the referee indifference band used by certified_pd:
/// (3*sqrt(2)/2) * delta.
double indifference_margin(double delta);

/// Certification cutoff 1.97 / ((1 + 4*sqrt(2)*delta) * (1 + (3*sqrt(2)/2)*delta)).
/// A grid maximum below this value certifies the continuum bound 1.97.
double certification_threshold(double delta);

/// Pessimistic distortion with worst-case accounting for snapped referees:
/// whenever the referee's two distances differ by at most the indifference
/// margin, the term takes the worse of the two proposer choices. Always at
/// least the plain pessimistic_distortion of the same configuration.
/// All five points must lie on the grid (within 1e-12), else std::domain_error.
double certified_pd(const PlanarConfig& cfg, const GridSpec& grid);

/// Similarity-normalizes a configuration into the canonical grid frame:
/// max pairwise distance 1, the extreme pair vertical at (alpha*delta, 0) and
/// (alpha*delta, 1) for an integral alpha in the grid's range, all points in
/// [0, 1+delta]^2. Pessimistic distortion is preserved (up to roundoff).
/// A configuration already in canonical position is returned unchanged.
/// Throws std::invalid_argument when all points coincide.
PlanarConfig canonicalize(const PlanarConfig& cfg, const GridSpec& grid);

}  // namespace trivote
