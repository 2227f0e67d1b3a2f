#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "trivote/errors.hpp"
#include "trivote/mechanisms.hpp"
#include "trivote/metric_instance.hpp"

namespace trivote {

/// Exact distortion evaluation of a mechanism on one instance.
struct DistortionReport {
  double distortion = 0.0;          // first moment of SC(a)/SC(a*)
  double squared_distortion = 0.0;  // second moment
  std::size_t opt_alternative = 0;
  double opt_cost = 0.0;
};

/// E[(SC(a)/SC(a*))^moment] under `dist`; moment is 1 or 2.
/// Throws DegenerateInstanceError when SC(a*) == 0 (ratio undefined).
double expected_distortion(const MetricInstance& inst, const OutcomeDistribution& dist, int moment);

struct ExactEvaluation {
  OutcomeDistribution distribution;
  DistortionReport report;
};

ExactEvaluation evaluate_exact(const MetricInstance& inst, MechanismId id);

/// A quadruple of agents violating the referee inequality
///   d(C({u,v},w), x) <= Z_x + 2*min(max(Z_u,Z_v), Z_w + min(Z_u,Z_v))
/// with Z_y = d(y, a*). Holds for every quadruple on a true metric; violations
/// can only appear on inputs that break the triangle inequality.
struct RefereeInequalityViolation {
  std::size_t u, v, w, x;
  double lhs, rhs;
};

/// Checks the inequality on every ordered agent quadruple (tolerance 1e-9)
/// and returns the violations in lexicographic (u,v,w,x) order.
std::vector<RefereeInequalityViolation> check_referee_inequality(const MetricInstance& inst);

/// Distortion upper bound for Random Oligarchy on m alternatives:
///   1 + 2 * max_{p in [0,1]} (1 + p^2 (p-2) + (p-1)^3 / (m-1)).
/// The inner maximum is located by a coarse 10^4-point scan followed by
/// golden-section refinement to |dp| <= 1e-10. Requires m >= 2.
double oligarchy_bound(std::uint64_t m);

/// Distortion bound 1 + 2*max_{p in (0,1]} mf(p)*(1-p)/p for a mechanism whose
/// maximum output probability of a p-popular alternative is mf(p). The maximum
/// is taken over a 10^5-point grid with local golden-section refinement.
double mf_bound_distortion(const std::function<double(double)>& mf);

/// mf curves for Random Oligarchy: the coarse bound and the |S|-dependent one.
double oligarchy_mf_coarse(double p);
double oligarchy_mf_refined(double p, std::uint64_t m);

/// Tabulated favorite-only lower bounds for m = 2..10 (reference data).
/// Values outside the table raise std::out_of_range.
double favorite_only_lower_bound(std::uint64_t m);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Unbiased sample mean of (SC(chosen)/SC(a*))^moment over seeded runs,
/// with its standard error. Throws DegenerateInstanceError when SC(a*) == 0.
MonteCarloEstimate monte_carlo_distortion(const MetricInstance& inst, MechanismId id,
                                          std::uint64_t samples, std::uint64_t seed, int moment);

/// Mechanism distortion bound as a function of the number of alternatives.
struct BoundCurve {
  struct Entry {
    std::uint64_t m;
    double value;
  };
  std::vector<Entry> entries;
};

BoundCurve oligarchy_curve(std::uint64_t m_max);

/// CSV with header `m,lower_bound,random_oligarchy`, one row per m in
/// [2, m_max]; the lower-bound cell is empty where no reference value is
/// tabulated. '.' decimal separator, LF line endings.
void write_curve_csv(std::ostream& out, std::uint64_t m_max);

}  // namespace trivote
