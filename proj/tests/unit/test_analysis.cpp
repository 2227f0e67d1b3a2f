#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <tuple>

#include "trivote/adversarial.hpp"
#include "trivote/analysis.hpp"
#include "trivote/check_suites.hpp"
#include "trivote/random_instances.hpp"

using namespace trivote;

namespace {

MetricInstance star_a() {
  return build_star_instance({StarVariant::A, 1e-3, StarGeometry::AbstractMetric});
}

}  // namespace

TEST_CASE("expected distortion of rd on star variant A is 4/3") {
  const MetricInstance inst = star_a();
  const OutcomeDistribution dist = rd_distribution(inst);
  CHECK(expected_distortion(inst, dist, 1) == doctest::Approx(4.0 / 3).epsilon(1e-15));
  CHECK(expected_distortion(inst, dist, 2) == doctest::Approx(16.0 / 9).epsilon(1e-15));
}

TEST_CASE("point mass on the optimum has distortion 1 in both moments") {
  const MetricInstance inst = star_a();
  OutcomeDistribution dist;
  dist.probs = {0.0, 0.0, 0.0, 1.0};  // the hub is optimal
  CHECK(expected_distortion(inst, dist, 1) == 1.0);
  CHECK(expected_distortion(inst, dist, 2) == 1.0);
}

TEST_CASE("second moment matches a ratio-sum oracle") {
  Rng rng(81);
  for (int trial = 0; trial < 20; ++trial) {
    const MetricInstance inst = random_instance(rng, 8, 8);
    const OutcomeDistribution dist = rr_distribution(inst);
    const auto [opt, opt_cost] = optimal_alternative(inst);
    (void)opt;
    double oracle = 0.0;
    for (std::size_t a = 0; a < dist.probs.size(); ++a) {
      const double r = social_cost(inst, a) / opt_cost;
      oracle += dist.probs[a] * r * r;
    }
    CHECK(expected_distortion(inst, dist, 2) == doctest::Approx(oracle).epsilon(1e-13));
  }
}

TEST_CASE("degenerate instances are rejected") {
  // Both agents sit on the only alternative: SC(a*) = 0.
  const MetricInstance inst = MetricInstance::from_points(2, 1, {{1, 1}, {1, 1}, {1, 1}});
  OutcomeDistribution dist;
  dist.probs = {1.0};
  CHECK_THROWS_AS(expected_distortion(inst, dist, 1), DegenerateInstanceError);
  CHECK_THROWS_AS(monte_carlo_distortion(inst, MechanismId::RandomDictatorship, 10, 1, 1),
                  DegenerateInstanceError);
}

TEST_CASE("moment validation") {
  const MetricInstance inst = star_a();
  CHECK_THROWS_AS(expected_distortion(inst, rd_distribution(inst), 3), std::invalid_argument);
  CHECK_THROWS_AS(monte_carlo_distortion(inst, MechanismId::RandomReferee, 0, 1, 1),
                  std::invalid_argument);
}

TEST_CASE("referee inequality holds on random metric instances") {
  Rng rng(83);
  for (int trial = 0; trial < 60; ++trial) {
    const MetricInstance inst = random_instance(rng, 8, 8);
    CHECK(check_referee_inequality(inst).empty());
  }
}

TEST_CASE("referee inequality trivially holds for one agent") {
  const MetricInstance inst = MetricInstance::from_points(1, 2, {{0, 0}, {1, 0}, {2, 0}});
  CHECK(check_referee_inequality(inst).empty());
}

TEST_CASE("a broken triangle inequality can break the referee inequality") {
  // Agent 0's favorite is alternative 1, which is absurdly far from agent 1.
  // Entities: agent0, agent1, alt0, alt1.
  std::vector<double> m = {
      0.0, 0.3, 0.2, 0.1,   //
      0.3, 0.0, 0.2, 50.0,  //
      0.2, 0.2, 0.0, 0.25,  //
      0.1, 50.0, 0.25, 0.0,
  };
  const MetricInstance broken = MetricInstance::unchecked_matrix(2, 2, std::move(m));
  REQUIRE_FALSE(broken.is_metric());
  const auto violations = check_referee_inequality(broken);
  CHECK_FALSE(violations.empty());
  // Violations come out in lexicographic quadruple order.
  for (std::size_t i = 1; i < violations.size(); ++i) {
    const auto& a = violations[i - 1];
    const auto& b = violations[i];
    CHECK(std::tie(a.u, a.v, a.w, a.x) < std::tie(b.u, b.v, b.w, b.x));
  }
}

TEST_CASE("oligarchy bound reproduces the reference values") {
  CHECK(std::abs(oligarchy_bound(2) - 2.056) <= 2e-3);
  CHECK(std::abs(oligarchy_bound(10) - 2.802) <= 2e-3);
  const double limit = oligarchy_bound(1'000'000'000);
  CHECK(limit > 2.999);
  CHECK(limit <= 3.0001);
  CHECK_THROWS_AS(oligarchy_bound(1), std::invalid_argument);
}

TEST_CASE("oligarchy bound is nondecreasing and at most 3") {
  double prev = 0.0;
  for (std::uint64_t m = 2; m <= 40; ++m) {
    const double value = oligarchy_bound(m);
    CHECK(value >= prev - 1e-12);
    CHECK(value <= 3.0 + 1e-9);
    prev = value;
  }
}

TEST_CASE("mf-based bounds") {
  CHECK(mf_bound_distortion(oligarchy_mf_coarse) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(mf_bound_distortion([](double p) { return p; }) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(mf_bound_distortion([](double) { return 0.0; }) == 1.0);
}

TEST_CASE("the two oligarchy formula routes agree") {
  for (std::uint64_t m = 2; m <= 10; ++m) {
    const double via_closed_form = oligarchy_bound(m);
    const double via_mf =
        mf_bound_distortion([m](double p) { return oligarchy_mf_refined(p, m); });
    CHECK(std::abs(via_closed_form - via_mf) <= 1e-6);
  }
}

TEST_CASE("favorite-only lower bound table") {
  CHECK(favorite_only_lower_bound(2) == 2.0);
  CHECK(favorite_only_lower_bound(4) == 2.5);
  CHECK(favorite_only_lower_bound(5) == 2.6);
  CHECK_THROWS_AS(favorite_only_lower_bound(1), std::out_of_range);
  CHECK_THROWS_AS(favorite_only_lower_bound(11), std::out_of_range);
}

TEST_CASE("jensen and the known distortion ceilings on random instances") {
  Rng rng(89);
  const double root21 = std::sqrt(21.0);
  for (int trial = 0; trial < 80; ++trial) {
    const MetricInstance inst = random_instance(rng, 8, 8);
    for (MechanismId id : {MechanismId::RandomDictatorship, MechanismId::RandomReferee,
                           MechanismId::RandomOligarchy}) {
      const OutcomeDistribution dist = mechanism_distribution(inst, id);
      const double d1 = expected_distortion(inst, dist, 1);
      const double d2 = expected_distortion(inst, dist, 2);
      CHECK(d2 >= d1 * d1 - 1e-12);
      CHECK(d1 >= 1.0 - 1e-12);
    }
    const OutcomeDistribution rr = rr_distribution(inst);
    CHECK(expected_distortion(inst, rr, 2) <= 21.0 + 1e-9);
    CHECK(expected_distortion(inst, rr, 1) <= root21 + 1e-9);
    CHECK(expected_distortion(inst, rd_distribution(inst), 1) <= 3.0 + 1e-9);
  }
}

TEST_CASE("monte carlo on a point-mass instance is exact") {
  const MetricInstance inst =
      MetricInstance::from_points(3, 1, {{0, 0}, {1, 0}, {2, 0}, {1, 0}});
  const MonteCarloEstimate est =
      monte_carlo_distortion(inst, MechanismId::RandomDictatorship, 1000, 5, 1);
  CHECK(est.estimate == 1.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("monte carlo agrees with the star value and exact enumeration") {
  const MetricInstance star = star_a();
  const MonteCarloEstimate est =
      monte_carlo_distortion(star, MechanismId::RandomDictatorship, 1'000'000, 777, 1);
  CHECK(std::abs(est.estimate - 4.0 / 3) <= 3.0 * est.std_error + 1e-12);

  Rng rng(97);
  const MetricInstance inst = random_instance(rng, 50, 8);
  const double exact = expected_distortion(inst, rr_distribution(inst), 1);
  const MonteCarloEstimate mc =
      monte_carlo_distortion(inst, MechanismId::RandomReferee, 1'000'000, 778, 1);
  CHECK(std::abs(mc.estimate - exact) <= 3.0 * mc.std_error + 1e-12);
}

TEST_CASE("bound curve and CSV emission") {
  const BoundCurve curve = oligarchy_curve(12);
  REQUIRE(curve.entries.size() == 11);
  for (std::size_t i = 0; i < curve.entries.size(); ++i) {
    CHECK(curve.entries[i].m == i + 2);
    CHECK(curve.entries[i].value <= 3.0 + 1e-9);
    if (i > 0) CHECK(curve.entries[i].value >= curve.entries[i - 1].value - 1e-12);
  }

  std::ostringstream out;
  write_curve_csv(out, 12);
  const std::string csv = out.str();
  CHECK(csv.rfind("m,lower_bound,random_oligarchy\n", 0) == 0);
  CHECK(csv.find("\r") == std::string::npos);
  CHECK(csv.find("2,2,2.05630") != std::string::npos);
  // rows beyond the tabulated range leave the lower-bound cell empty
  CHECK(csv.find("\n11,,") != std::string::npos);
  CHECK(csv.find("\n12,,") != std::string::npos);
}

TEST_CASE("check suites pass and support vacuous runs") {
  const auto results = run_check_suites(CheckSuite::All, 4242, 25);
  REQUIRE(results.size() == 3);
  for (const auto& result : results) {
    CHECK(result.passed());
    CHECK(result.instances_checked == 25);
  }
  for (const auto& result : run_check_suites(CheckSuite::RefereeInequality, 1, 0)) {
    CHECK(result.passed());
    CHECK(result.instances_checked == 0);
  }
  CHECK_THROWS_AS(parse_check_suite("nope"), std::invalid_argument);
}
