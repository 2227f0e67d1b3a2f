#include "trivote/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "trivote/rng.hpp"

namespace trivote {

namespace {

void check_moment(int moment) {
  if (moment != 1 && moment != 2) throw std::invalid_argument("moment must be 1 or 2");
}

struct BestPoint {
  double x = 0.0;
  double value = -std::numeric_limits<double>::infinity();

  void offer(double px, double pv) {
    if (pv > value) {
      value = pv;
      x = px;
    }
  }
};

// Golden-section refinement of a maximum inside [lo, hi].
BestPoint golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  static const double kInvPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  BestPoint best;
  best.offer(lo, f(lo));
  best.offer(hi, f(hi));
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  best.offer(c, fc);
  best.offer(d, fd);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      best.offer(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      best.offer(d, fd);
    }
  }
  return best;
}

// Coarse scan over [lo, hi] with `steps` intervals, then local refinement.
BestPoint scan_then_refine(const std::function<double(double)>& f, double lo, double hi,
                           std::size_t steps, double tol) {
  BestPoint coarse;
  double best_x = lo;
  for (std::size_t i = 0; i <= steps; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps);
    const double v = f(x);
    if (v > coarse.value) {
      coarse.value = v;
      coarse.x = x;
      best_x = x;
    }
  }
  const double h = (hi - lo) / static_cast<double>(steps);
  BestPoint refined = golden_max(f, std::max(lo, best_x - h), std::min(hi, best_x + h), tol);
  refined.offer(coarse.x, coarse.value);
  return refined;
}

}  // namespace

double expected_distortion(const MetricInstance& inst, const OutcomeDistribution& dist,
                           int moment) {
  check_moment(moment);
  if (dist.probs.size() != inst.alternative_count())
    throw std::invalid_argument("distribution size does not match the instance");
  const auto [opt, opt_cost] = optimal_alternative(inst);
  (void)opt;
  if (opt_cost == 0.0)
    throw DegenerateInstanceError("optimal social cost is zero; distortion undefined");
  double total = 0.0;
  for (std::size_t a = 0; a < dist.probs.size(); ++a) {
    if (dist.probs[a] == 0.0) continue;
    const double ratio = social_cost(inst, a) / opt_cost;
    total += dist.probs[a] * (moment == 1 ? ratio : ratio * ratio);
  }
  return total;
}

ExactEvaluation evaluate_exact(const MetricInstance& inst, MechanismId id) {
  ExactEvaluation eval;
  eval.distribution = mechanism_distribution(inst, id);
  const auto [opt, opt_cost] = optimal_alternative(inst);
  eval.report.opt_alternative = opt;
  eval.report.opt_cost = opt_cost;
  eval.report.distortion = expected_distortion(inst, eval.distribution, 1);
  eval.report.squared_distortion = expected_distortion(inst, eval.distribution, 2);
  return eval;
}

std::vector<RefereeInequalityViolation> check_referee_inequality(const MetricInstance& inst) {
  const std::size_t n = inst.agent_count();
  const auto [opt, opt_cost] = optimal_alternative(inst);
  (void)opt_cost;
  std::vector<double> z(n);
  std::vector<std::size_t> fav(n);
  for (std::size_t u = 0; u < n; ++u) {
    z[u] = inst.agent_alternative_distance(u, opt);
    fav[u] = favorite_alternative(inst, u);
  }
  std::vector<RefereeInequalityViolation> violations;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const double zmax = std::max(z[u], z[v]);
      const double zmin = std::min(z[u], z[v]);
      for (std::size_t w = 0; w < n; ++w) {
        const std::size_t chosen = compare_alternatives(inst, w, fav[u], fav[v]);
        const double bound = 2.0 * std::min(zmax, z[w] + zmin);
        for (std::size_t x = 0; x < n; ++x) {
          const double lhs = inst.agent_alternative_distance(x, chosen);
          const double rhs = z[x] + bound;
          if (lhs > rhs + 1e-9) violations.push_back({u, v, w, x, lhs, rhs});
        }
      }
    }
  }
  return violations;
}

double oligarchy_bound(std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("oligarchy_bound requires at least 2 alternatives");
  const double denom = static_cast<double>(m) - 1.0;
  auto inner = [denom](double p) {
    const double q = p - 1.0;
    return 1.0 + p * p * (p - 2.0) + q * q * q / denom;
  };
  const BestPoint best = scan_then_refine(inner, 0.0, 1.0, 10000, 1e-10);
  return 1.0 + 2.0 * best.value;
}

double mf_bound_distortion(const std::function<double(double)>& mf) {
  auto objective = [&mf](double p) { return mf(p) * (1.0 - p) / p; };
  constexpr std::size_t kGrid = 100000;
  double best_v = 0.0;  // p -> 1 gives mf(1)*0 = 0, so 0 is always attainable
  double best_p = 1.0;
  for (std::size_t i = 1; i <= kGrid; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(kGrid);
    const double v = objective(p);
    if (v > best_v) {
      best_v = v;
      best_p = p;
    }
  }
  const double h = 1.0 / static_cast<double>(kGrid);
  BestPoint refined = golden_max(objective, std::max(1e-12, best_p - h),
                                 std::min(1.0, best_p + h), 1e-10);
  refined.offer(best_p, best_v);
  return 1.0 + 2.0 * refined.value;
}

double oligarchy_mf_coarse(double p) { return -p * p * p + p * p + p; }

double oligarchy_mf_refined(double p, std::uint64_t m) {
  if (m < 2) throw std::invalid_argument("refined mf requires at least 2 alternatives");
  const double q = p - 1.0;
  return oligarchy_mf_coarse(p) - p * q * q / (static_cast<double>(m) - 1.0);
}

double favorite_only_lower_bound(std::uint64_t m) {
  // Reference table for m = 2..10. On this range the values coincide with
  // 3 - 2/m, but they are kept as data rather than a formula.
  static const double kTable[] = {2.0, 2.333, 2.5, 2.6, 2.666, 2.714, 2.75, 2.777, 2.8};
  if (m < 2 || m > 10)
    throw std::out_of_range("favorite-only lower bound tabulated only for m in [2, 10]");
  return kTable[m - 2];
}

MonteCarloEstimate monte_carlo_distortion(const MetricInstance& inst, MechanismId id,
                                          std::uint64_t samples, std::uint64_t seed, int moment) {
  check_moment(moment);
  if (samples == 0) throw std::invalid_argument("need at least one sample");
  const std::size_t n = inst.agent_count();
  const auto [opt, opt_cost] = optimal_alternative(inst);
  (void)opt;
  if (opt_cost == 0.0)
    throw DegenerateInstanceError("optimal social cost is zero; distortion undefined");

  std::vector<std::size_t> fav(n);
  for (std::size_t u = 0; u < n; ++u) fav[u] = favorite_alternative(inst, u);
  std::vector<double> ratio(inst.alternative_count());
  for (std::size_t a = 0; a < ratio.size(); ++a) ratio[a] = social_cost(inst, a) / opt_cost;

  Rng rng(seed);
  auto draw_outcome = [&]() -> std::size_t {
    switch (id) {
      case MechanismId::RandomDictatorship:
        return fav[rng.uniform_index(n)];
      case MechanismId::RandomReferee: {
        const std::size_t pu = fav[rng.uniform_index(n)];
        const std::size_t pv = fav[rng.uniform_index(n)];
        const std::size_t w = rng.uniform_index(n);
        if (pu == pv) return pu;
        const double du = inst.agent_alternative_distance(w, pu);
        const double dv = inst.agent_alternative_distance(w, pv);
        if (du < dv) return pu;
        if (dv < du) return pv;
        return std::min(pu, pv);
      }
      case MechanismId::RandomOligarchy: {
        const std::size_t a = fav[rng.uniform_index(n)];
        const std::size_t b = fav[rng.uniform_index(n)];
        const std::size_t c = fav[rng.uniform_index(n)];
        if (a == b || a == c) return a;
        if (b == c) return b;
        const std::size_t reports[3] = {a, b, c};
        return reports[rng.uniform_index(3)];
      }
    }
    throw std::logic_error("bad mechanism id");
  };

  // Welford's running mean/variance.
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t i = 1; i <= samples; ++i) {
    double x = ratio[draw_outcome()];
    if (moment == 2) x *= x;
    const double d1 = x - mean;
    mean += d1 / static_cast<double>(i);
    m2 += d1 * (x - mean);
  }
  MonteCarloEstimate est;
  est.samples = samples;
  est.estimate = mean;
  est.std_error = samples > 1
                      ? std::sqrt(m2 / static_cast<double>(samples - 1) /
                                  static_cast<double>(samples))
                      : 0.0;
  return est;
}

BoundCurve oligarchy_curve(std::uint64_t m_max) {
  if (m_max < 2) throw std::invalid_argument("curve needs m_max >= 2");
  BoundCurve curve;
  curve.entries.reserve(m_max - 1);
  for (std::uint64_t m = 2; m <= m_max; ++m) curve.entries.push_back({m, oligarchy_bound(m)});
  return curve;
}

void write_curve_csv(std::ostream& out, std::uint64_t m_max) {
  const BoundCurve curve = oligarchy_curve(m_max);
  out << "m,lower_bound,random_oligarchy\n";
  char buf[64];
  for (const auto& entry : curve.entries) {
    out << entry.m << ',';
    if (entry.m >= 2 && entry.m <= 10) {
      std::snprintf(buf, sizeof(buf), "%.17g", favorite_only_lower_bound(entry.m));
      out << buf;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", entry.value);
    out << ',' << buf << "\n";
  }
}

}  // namespace trivote
