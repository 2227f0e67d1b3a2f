#include "trivote/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trivote {

namespace {

std::vector<std::size_t> all_favorites(const MetricInstance& inst) {
  std::vector<std::size_t> fav(inst.agent_count());
  for (std::size_t u = 0; u < inst.agent_count(); ++u) fav[u] = favorite_alternative(inst, u);
  return fav;
}

// Referee w picks between alternatives a and b; exact tie goes to the lower index.
std::size_t referee_pick(const MetricInstance& inst, std::size_t w, std::size_t a, std::size_t b) {
  if (a == b) return a;
  const double da = inst.agent_alternative_distance(w, a);
  const double db = inst.agent_alternative_distance(w, b);
  if (da < db) return a;
  if (db < da) return b;
  return std::min(a, b);
}

}  // namespace

MechanismId parse_mechanism(const std::string& name) {
  if (name == "rd") return MechanismId::RandomDictatorship;
  if (name == "rr") return MechanismId::RandomReferee;
  if (name == "ro") return MechanismId::RandomOligarchy;
  throw std::invalid_argument("unknown mechanism '" + name + "' (expected rd, rr or ro)");
}

std::string mechanism_name(MechanismId id) {
  switch (id) {
    case MechanismId::RandomDictatorship: return "rd";
    case MechanismId::RandomReferee: return "rr";
    case MechanismId::RandomOligarchy: return "ro";
  }
  throw std::logic_error("bad mechanism id");
}

bool OutcomeDistribution::is_valid(double tol) const {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) return false;
    sum += p;
  }
  return std::abs(sum - 1.0) <= tol;
}

OutcomeDistribution rd_distribution(const MetricInstance& inst) {
  const std::size_t n = inst.agent_count();
  std::vector<std::uint64_t> count(inst.alternative_count(), 0);
  for (std::size_t u = 0; u < n; ++u) ++count[favorite_alternative(inst, u)];
  OutcomeDistribution dist;
  dist.probs.resize(count.size());
  for (std::size_t a = 0; a < count.size(); ++a)
    dist.probs[a] = static_cast<double>(count[a]) / static_cast<double>(n);
  return dist;
}

OutcomeDistribution rr_distribution(const MetricInstance& inst) {
  const std::size_t n = inst.agent_count();
  const auto fav = all_favorites(inst);
  // Integer triple counts keep the distribution exact.
  std::vector<std::uint64_t> count(inst.alternative_count(), 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t pu = fav[u];
      const std::size_t pv = fav[v];
      if (pu == pv) {
        count[pu] += n;  // every referee is forced
        continue;
      }
      for (std::size_t w = 0; w < n; ++w) ++count[referee_pick(inst, w, pu, pv)];
    }
  }
  const double total = static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
  OutcomeDistribution dist;
  dist.probs.resize(count.size());
  for (std::size_t a = 0; a < count.size(); ++a)
    dist.probs[a] = static_cast<double>(count[a]) / total;
  return dist;
}

OutcomeDistribution ro_distribution(const MetricInstance& inst) {
  const std::size_t n = inst.agent_count();
  const auto fav = all_favorites(inst);
  // Counts in units of 1/3 so the all-distinct branch stays integral.
  std::vector<std::uint64_t> thirds(inst.alternative_count(), 0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      for (std::size_t w = 0; w < n; ++w) {
        const std::size_t a = fav[u], b = fav[v], c = fav[w];
        if (a == b || a == c) {
          thirds[a] += 3;
        } else if (b == c) {
          thirds[b] += 3;
        } else {
          ++thirds[a];
          ++thirds[b];
          ++thirds[c];
        }
      }
    }
  }
  const double total =
      3.0 * static_cast<double>(n) * static_cast<double>(n) * static_cast<double>(n);
  OutcomeDistribution dist;
  dist.probs.resize(thirds.size());
  for (std::size_t a = 0; a < thirds.size(); ++a)
    dist.probs[a] = static_cast<double>(thirds[a]) / total;
  return dist;
}

OutcomeDistribution mechanism_distribution(const MetricInstance& inst, MechanismId id) {
  switch (id) {
    case MechanismId::RandomDictatorship: return rd_distribution(inst);
    case MechanismId::RandomReferee: return rr_distribution(inst);
    case MechanismId::RandomOligarchy: return ro_distribution(inst);
  }
  throw std::logic_error("bad mechanism id");
}

MechanismRun sample_mechanism(const MetricInstance& inst, MechanismId id, Rng& rng) {
  const std::size_t n = inst.agent_count();
  MechanismRun run;
  auto ask_favorite = [&](std::size_t agent) {
    const std::size_t p = favorite_alternative(inst, agent);
    run.transcript.push_back({agent, QueryType::Favorite, p});
    ++run.queries_used;
    return p;
  };

  switch (id) {
    case MechanismId::RandomDictatorship: {
      run.chosen = ask_favorite(rng.uniform_index(n));
      return run;
    }
    case MechanismId::RandomReferee: {
      const std::size_t u = rng.uniform_index(n);
      const std::size_t v = rng.uniform_index(n);
      const std::size_t w = rng.uniform_index(n);
      const std::size_t pu = ask_favorite(u);
      const std::size_t pv = ask_favorite(v);
      if (pu == pv) {
        run.chosen = pu;  // answer is forced, no comparison issued
        return run;
      }
      const std::size_t picked = referee_pick(inst, w, pu, pv);
      run.transcript.push_back({w, QueryType::Comparison, picked});
      ++run.queries_used;
      run.chosen = picked;
      return run;
    }
    case MechanismId::RandomOligarchy: {
      const std::size_t a = ask_favorite(rng.uniform_index(n));
      const std::size_t b = ask_favorite(rng.uniform_index(n));
      const std::size_t c = ask_favorite(rng.uniform_index(n));
      if (a == b || a == c)
        run.chosen = a;
      else if (b == c)
        run.chosen = b;
      else {
        const std::size_t reports[3] = {a, b, c};
        run.chosen = reports[rng.uniform_index(3)];
      }
      return run;
    }
  }
  throw std::logic_error("bad mechanism id");
}

MechanismRun sample_mechanism(const MetricInstance& inst, MechanismId id, std::uint64_t seed) {
  Rng rng(seed);
  return sample_mechanism(inst, id, rng);
}

}  // namespace trivote
