#include "trivote/adversarial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace trivote {

namespace {

constexpr std::size_t kLeaves = 3;

void set_symmetric(std::vector<double>& m, std::size_t entities, std::size_t i, std::size_t j,
                   double d) {
  m[i * entities + j] = d;
  m[j * entities + i] = d;
}

}  // namespace

MetricInstance build_star_instance(const StarFamily& family) {
  if (!(family.eps > 0.0 && family.eps < 0.5))
    throw std::invalid_argument("star eps must lie in (0, 0.5)");

  if (family.geometry == StarGeometry::EuclideanCircle) {
    // Hub at the origin, leaves on the unit circle; agents sit on the leaves.
    const double spacing_deg = family.variant == StarVariant::A ? 120.0 : 60.0;
    const double spacing = spacing_deg * std::numbers::pi / 180.0;
    std::vector<Point> pts(kLeaves + kLeaves + 1);
    for (std::size_t i = 0; i < kLeaves; ++i) {
      const double angle = spacing * static_cast<double>(i);
      const Point leaf{std::cos(angle), std::sin(angle)};
      pts[i] = leaf;            // agent i
      pts[kLeaves + i] = leaf;  // alternative i
    }
    pts[kLeaves + kStarHub] = Point{0.0, 0.0};
    return MetricInstance::from_points(kLeaves, kLeaves + 1, std::move(pts));
  }

  const double leaf_leaf = family.variant == StarVariant::A ? 2.0 : 1.0 + family.eps;
  const std::size_t entities = kLeaves + kLeaves + 1;  // agents, leaf alts, hub
  std::vector<double> m(entities * entities, 0.0);
  const std::size_t hub = kLeaves + kStarHub;
  for (std::size_t i = 0; i < kLeaves; ++i) {
    set_symmetric(m, entities, i, hub, 1.0);            // agent to hub
    set_symmetric(m, entities, kLeaves + i, hub, 1.0);  // leaf alt to hub
    for (std::size_t j = 0; j < kLeaves; ++j) {
      if (i == j) continue;
      set_symmetric(m, entities, i, j, leaf_leaf);                      // agent/agent
      set_symmetric(m, entities, kLeaves + i, kLeaves + j, leaf_leaf);  // alt/alt
      set_symmetric(m, entities, i, kLeaves + j, leaf_leaf);            // agent/other alt
    }
    // agent i is colocated with leaf alternative i: distance already 0
  }
  return MetricInstance::from_matrix(kLeaves, kLeaves + 1, std::move(m));
}

MetricInstance build_topk_squared_instance(std::size_t n_agents, std::size_t k, double eps) {
  if (n_agents < 2) throw std::invalid_argument("need at least 2 agents");
  if (k < 1) throw std::invalid_argument("need k >= 1");
  if (!(eps > 0.0 && eps <= 1.0 / static_cast<double>(n_agents)))
    throw std::invalid_argument("eps must lie in (0, 1/n]");

  const std::size_t alternatives = k * n_agents;
  const std::size_t entities = n_agents + alternatives;
  // Entity layout: agent 0, agents 1..n-1, alternatives 0..k-1 (agent 0's
  // private set), alternatives k..kn-1 (the far cluster).
  auto in_near_clique = [&](std::size_t entity) {
    if (entity == 0) return true;                         // agent 0
    if (entity < n_agents) return false;                  // other agents
    return entity - n_agents < k;                         // private alternatives
  };
  std::vector<double> m(entities * entities, 0.0);
  for (std::size_t i = 0; i < entities; ++i) {
    for (std::size_t j = i + 1; j < entities; ++j) {
      const double d = in_near_clique(i) == in_near_clique(j) ? eps : 1.0;
      set_symmetric(m, entities, i, j, d);
    }
  }
  return MetricInstance::from_matrix(n_agents, alternatives, std::move(m));
}

MetricInstance build_circle_instance(std::size_t n_agents, std::size_t k, double eps,
                                     double delta) {
  if (n_agents < 2) throw std::invalid_argument("need at least 2 agents");
  if (k < 1) throw std::invalid_argument("need k >= 1");
  if (!(delta > 0.0 && delta <= 1.0 / static_cast<double>(n_agents)))
    throw std::invalid_argument("delta must lie in (0, 1/n]");
  if (!(eps > 0.0 && eps <= delta / 10.0))
    throw std::invalid_argument("eps must lie in (0, delta/10]");

  const std::size_t alternatives = k * n_agents;
  std::vector<Point> pts(n_agents + alternatives);

  const Point outlier{0.0, 0.0};
  const Point circle_center{1.0, 0.0};
  pts[0] = outlier;
  // Other agents equally spaced on the circle, starting at the point nearest
  // the outlier.
  for (std::size_t j = 1; j < n_agents; ++j) {
    const double angle = std::numbers::pi + 2.0 * std::numbers::pi *
                                                static_cast<double>(j - 1) /
                                                static_cast<double>(n_agents - 1);
    pts[j] = Point{circle_center.x + 0.5 * delta * std::cos(angle),
                   circle_center.y + 0.5 * delta * std::sin(angle)};
  }
  // k private alternatives per agent at distance exactly eps, fanned around
  // the direction that keeps the cost bounds tight (outlier's set points at
  // the circle; circle agents' sets point back toward the outlier).
  auto place_private = [&](std::size_t agent, const Point& toward, std::size_t base) {
    const double base_angle = std::atan2(toward.y - pts[agent].y, toward.x - pts[agent].x);
    for (std::size_t i = 0; i < k; ++i) {
      const double angle =
          base_angle + 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(k);
      pts[n_agents + base + i] =
          Point{pts[agent].x + eps * std::cos(angle), pts[agent].y + eps * std::sin(angle)};
    }
  };
  place_private(0, circle_center, 0);
  for (std::size_t j = 1; j < n_agents; ++j) place_private(j, outlier, j * k);

  return MetricInstance::from_points(n_agents, alternatives, std::move(pts));
}

MixtureOptimum optimal_ordinal_mixture(double eps, StarGeometry geometry) {
  if (geometry != StarGeometry::AbstractMetric)
    throw std::invalid_argument("the mixture closed form applies to the abstract-metric star");
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in [0, 0.5)");
  MixtureOptimum opt;
  opt.center_prob = (2.0 + 2.0 * eps) / (5.0 - 4.0 * eps);
  opt.value = 4.0 / 3.0 - opt.center_prob / 3.0;
  return opt;
}

double star_mixture_max_regret(double eps, double center_prob) {
  if (!(eps >= 0.0 && eps < 0.5)) throw std::invalid_argument("eps must lie in [0, 0.5)");
  if (!(center_prob >= 0.0 && center_prob <= 1.0))
    throw std::invalid_argument("center_prob must lie in [0, 1]");
  const double leaf_prob = 1.0 - center_prob;
  // Variant A (leaves 2 apart): hub optimal, every leaf has distortion 4/3.
  const double regret_a = center_prob + leaf_prob * (4.0 / 3.0);
  // Variant B (leaves 1+eps apart): leaves optimal, hub costs 3/(2(1+eps)).
  const double regret_b = center_prob * 3.0 / (2.0 * (1.0 + eps)) + leaf_prob;
  return std::max(regret_a, regret_b);
}

bool verify_construction(const MetricInstance& inst, const std::vector<CostClaim>& claims) {
  for (const CostClaim& claim : claims) {
    const double actual = social_cost(inst, claim.alternative);
    if (std::abs(actual - claim.cost) > claim.tolerance) return false;
  }
  return true;
}

}  // namespace trivote
