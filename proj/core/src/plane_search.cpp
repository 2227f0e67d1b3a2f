#include "trivote/plane_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace trivote {

namespace {

constexpr double kRoleAssignments = 60.0;  // 10 pairs x 3 referees x 2 bystanders

struct DistanceTable {
  double d[5][5];

  explicit DistanceTable(const PlanarConfig& cfg) {
    for (int i = 0; i < 5; ++i) {
      d[i][i] = 0.0;
      for (int j = i + 1; j < 5; ++j) d[i][j] = d[j][i] = distance(cfg.points[i], cfg.points[j]);
    }
  }
};

// Sum over the two bystanders (everyone but i, j, k) of their distance to
// proposer point q.
inline double bystander_sum(const DistanceTable& t, const double* col_sum, int i, int j, int k,
                            int q) {
  return col_sum[q] - t.d[i][q] - t.d[j][q] - t.d[k][q];
}

void column_sums(const DistanceTable& t, double* col_sum) {
  for (int q = 0; q < 5; ++q) {
    double s = 0.0;
    for (int l = 0; l < 5; ++l) s += t.d[l][q];
    col_sum[q] = s;
  }
}

double total_distance(std::span<const Point> pts, const Point& y) {
  double total = 0.0;
  for (const Point& p : pts) total += distance(p, y);
  return total;
}

}  // namespace

bool all_coincident(const PlanarConfig& cfg) {
  for (int i = 1; i < 5; ++i)
    if (cfg.points[i] != cfg.points[0]) return false;
  return true;
}

bool config_lex_less(const PlanarConfig& a, const PlanarConfig& b) {
  std::array<Point, 5> sa = a.points;
  std::array<Point, 5> sb = b.points;
  std::sort(sa.begin(), sa.end(), lex_less);
  std::sort(sb.begin(), sb.end(), lex_less);
  for (int i = 0; i < 5; ++i) {
    if (lex_less(sa[i], sb[i])) return true;
    if (lex_less(sb[i], sa[i])) return false;
  }
  return false;
}

double rr_average_cost(const PlanarConfig& cfg) {
  const DistanceTable t(cfg);
  double col_sum[5];
  column_sums(t, col_sum);
  double total = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      for (int k = 0; k < 5; ++k) {
        if (k == i || k == j) continue;
        int pick;
        if (t.d[k][i] < t.d[k][j])
          pick = i;
        else if (t.d[k][j] < t.d[k][i])
          pick = j;
        else
          pick = lex_less(cfg.points[j], cfg.points[i]) ? j : i;
        total += bystander_sum(t, col_sum, i, j, k, pick);
      }
    }
  }
  return total / kRoleAssignments;
}

MedianResult geometric_median(std::span<const Point> pts) {
  if (pts.empty()) throw std::invalid_argument("geometric median of an empty set");
  for (const Point& p : pts)
    if (!is_finite(p)) throw std::invalid_argument("geometric median needs finite points");
  const double count = static_cast<double>(pts.size());

  // Subgradient test at every distinct input point: at an input point a with
  // multiplicity c, a is optimal iff ||sum over others of unit vectors|| <= c.
  const Point* anchor_opt = nullptr;
  for (std::size_t i = 0; i < pts.size() && anchor_opt == nullptr; ++i) {
    bool seen = false;
    for (std::size_t j = 0; j < i; ++j)
      if (pts[j] == pts[i]) {
        seen = true;
        break;
      }
    if (seen) continue;
    double rx = 0.0, ry = 0.0;
    double multiplicity = 0.0;
    for (const Point& p : pts) {
      if (p == pts[i]) {
        multiplicity += 1.0;
        continue;
      }
      const double d = distance(p, pts[i]);
      rx += (p.x - pts[i].x) / d;
      ry += (p.y - pts[i].y) / d;
    }
    if (std::sqrt(rx * rx + ry * ry) <= multiplicity + 1e-12) anchor_opt = &pts[i];
  }
  if (anchor_opt != nullptr)
    return {*anchor_opt, total_distance(pts, *anchor_opt) / count};

  // Best input point as the fallback candidate.
  Point best_input = pts[0];
  double best_input_total = total_distance(pts, pts[0]);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double f = total_distance(pts, pts[i]);
    if (f < best_input_total || (f == best_input_total && lex_less(pts[i], best_input))) {
      best_input_total = f;
      best_input = pts[i];
    }
  }

  Point y{0.0, 0.0};
  for (const Point& p : pts) {
    y.x += p.x;
    y.y += p.y;
  }
  y.x /= count;
  y.y /= count;

  constexpr double kAnchorEps = 1e-12;
  constexpr double kResidualTol = 1e-9;  // gradient norm at convergence
  constexpr double kStagnationTol = 1e-13;
  constexpr int kMaxIters = 50000;
  for (int iter = 0; iter < kMaxIters; ++iter) {
    double weight = 0.0, tx = 0.0, ty = 0.0;
    double rx = 0.0, ry = 0.0;
    double multiplicity = 0.0;
    for (const Point& p : pts) {
      const double d = distance(p, y);
      if (d <= kAnchorEps) {
        multiplicity += 1.0;
        continue;
      }
      const double inv = 1.0 / d;
      weight += inv;
      tx += p.x * inv;
      ty += p.y * inv;
      rx += (p.x - y.x) * inv;
      ry += (p.y - y.y) * inv;
    }
    const double rnorm = std::sqrt(rx * rx + ry * ry);
    Point next;
    if (multiplicity > 0.0) {
      // Sitting on an input point that is not optimal (the upfront test ruled
      // that out): step off along the descent direction (Vardi-Zhang).
      if (rnorm <= multiplicity) break;  // numerically optimal after all
      const double step = (rnorm - multiplicity) / weight;
      next = Point{y.x + step * rx / rnorm, y.y + step * ry / rnorm};
    } else {
      if (rnorm <= kResidualTol) break;
      next = Point{tx / weight, ty / weight};
    }
    const double moved = distance(next, y);
    y = next;
    if (moved < kStagnationTol) break;
  }

  const double f = total_distance(pts, y);
  if (best_input_total <= f) return {best_input, best_input_total / count};
  return {y, f / count};
}

double pessimistic_distortion(const PlanarConfig& cfg) {
  if (all_coincident(cfg)) return 1.0;
  const double scrr = rr_average_cost(cfg);
  const MedianResult opt = geometric_median(std::span<const Point>(cfg.points));
  return scrr / opt.average_cost;
}

Point GridSpec::snap(const Point& p) const {
  const double d = delta();
  auto snap_coord = [&](double v) {
    // Round to nearest; exact half-way ties go to the lower grid line.
    double idx = std::floor(v / d + 0.5);
    if ((idx - 0.5) * d == v) idx -= 1.0;
    idx = std::clamp(idx, 0.0, static_cast<double>(delta_inverse + 1));
    return idx * d;
  };
  return {snap_coord(p.x), snap_coord(p.y)};
}

bool GridSpec::on_grid(const Point& p, double tol) const {
  const Point s = snap(p);
  return std::abs(s.x - p.x) <= tol && std::abs(s.y - p.y) <= tol;
}

double indifference_margin(double delta) { return 1.5 * std::sqrt(2.0) * delta; }

double certification_threshold(double delta) {
  return 1.97 / ((1.0 + 4.0 * std::sqrt(2.0) * delta) * (1.0 + indifference_margin(delta)));
}

double certified_pd(const PlanarConfig& cfg, const GridSpec& grid) {
  for (const Point& p : cfg.points)
    if (!grid.on_grid(p))
      throw std::domain_error("certified_pd requires all points on the grid");
  if (all_coincident(cfg)) return 1.0;

  const double margin = indifference_margin(grid.delta());
  const DistanceTable t(cfg);
  double col_sum[5];
  column_sums(t, col_sum);
  double total = 0.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      for (int k = 0; k < 5; ++k) {
        if (k == i || k == j) continue;
        if (std::abs(t.d[k][i] - t.d[k][j]) <= margin) {
          // Indifferent referee: account for the worse proposer choice.
          total += std::max(bystander_sum(t, col_sum, i, j, k, i),
                            bystander_sum(t, col_sum, i, j, k, j));
        } else {
          const int pick = t.d[k][i] < t.d[k][j] ? i : j;
          total += bystander_sum(t, col_sum, i, j, k, pick);
        }
      }
    }
  }
  const MedianResult opt = geometric_median(std::span<const Point>(cfg.points));
  return total / kRoleAssignments / opt.average_cost;
}

PlanarConfig canonicalize(const PlanarConfig& cfg, const GridSpec& grid) {
  if (all_coincident(cfg))
    throw std::invalid_argument("cannot canonicalize a fully coincident configuration");
  const double d = grid.delta();

  // Locate the (lexicographically first) maximally separated pair.
  int ei = 0, ej = 1;
  double max_dist = -1.0;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const double dist_ij = distance(cfg.points[i], cfg.points[j]);
      if (dist_ij > max_dist) {
        max_dist = dist_ij;
        ei = i;
        ej = j;
      }
    }
  }

  // Fast path: already canonical (unit vertical extreme pair on an integral
  // grid column, everything inside the extent) is returned untouched.
  {
    const Point a = cfg.points[ei];
    const Point b = cfg.points[ej];
    const Point lo = a.y <= b.y ? a : b;
    const Point hi = a.y <= b.y ? b : a;
    const double alpha = lo.x / d;
    const bool column_ok = lo.x == hi.x && std::abs(alpha - std::round(alpha)) <= 1e-12 &&
                           std::round(alpha) >= 0.0 &&
                           std::round(alpha) <= static_cast<double>(grid.delta_inverse);
    bool extent_ok = max_dist == 1.0 && lo.y == 0.0 && hi.y == 1.0;
    for (const Point& p : cfg.points)
      extent_ok = extent_ok && p.x >= 0.0 && p.x <= 1.0 + d && p.y >= 0.0 && p.y <= 1.0 + d;
    if (column_ok && extent_ok) return cfg;
  }

  // Translate the lower extreme point to the origin, scale so the pair is
  // unit length, rotate the pair onto the +y axis.
  const Point p0 = lex_less(cfg.points[ei], cfg.points[ej]) ? cfg.points[ei] : cfg.points[ej];
  const Point p1 = lex_less(cfg.points[ei], cfg.points[ej]) ? cfg.points[ej] : cfg.points[ei];
  const double ux = (p1.x - p0.x) / max_dist;
  const double uy = (p1.y - p0.y) / max_dist;

  PlanarConfig out;
  for (int i = 0; i < 5; ++i) {
    const double sx = (cfg.points[i].x - p0.x) / max_dist;
    const double sy = (cfg.points[i].y - p0.y) / max_dist;
    // Rotation taking (ux, uy) to (0, 1).
    out.points[i] = Point{uy * sx - ux * sy, ux * sx + uy * sy};
  }

  // Shift right onto the first grid column that keeps every x nonnegative.
  double min_x = out.points[0].x;
  for (const Point& p : out.points) min_x = std::min(min_x, p.x);
  const double alpha = std::ceil(-min_x / d - 1e-12);
  const double shift = std::max(0.0, alpha) * d;
  for (Point& p : out.points) {
    p.x += shift;
    if (std::abs(p.y) < 1e-15) p.y = 0.0;  // clean the rotated extreme pair
  }
  return out;
}

}  // namespace trivote
