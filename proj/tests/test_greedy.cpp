#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "incentive/exact.hpp"
#include "incentive/greedy.hpp"
#include "incentive/rng.hpp"

#include "fixtures.hpp"

using namespace incentive;

TEST_CASE("budget 7 takes one step and stops at the six-unit jump") {
  const Instance instance = fixtures::two_commuters();
  const GreedyResult result = solve(instance, 7.0);

  REQUIRE(result.iterations.size() == 1);
  const IterationRecord &step = result.iterations[0];
  CHECK(step.k == 1);
  CHECK(step.individual_id == 1);
  CHECK(step.alt_id == 2);
  CHECK(step.incr_weight == 2.0);
  CHECK(step.incr_social == 4.0);
  CHECK(step.incr_efficiency == 2.0);
  CHECK(step.tot_incentive == 2.0);
  CHECK(step.welfare_gain == 4.0);

  CHECK(result.budget_used == 2.0);
  CHECK(result.welfare_gain == 4.0);
  CHECK(result.max_step_size == 2.0);

  REQUIRE(result.split.has_value());
  CHECK(result.split->individual_id == 2);
  CHECK(result.split->alt_id == 3);
  CHECK(result.split->incr_weight == 6.0);
  CHECK(result.split->incr_efficiency == Catch::Approx(4.0 / 3.0));
  CHECK(characteristic_incr_efficiency(result) == 4.0 / 3.0);

  REQUIRE(result.incentives.size() == 1);
  CHECK(result.incentives[0].individual_id == 1);
  CHECK(result.incentives[0].alt_id == 2);
  CHECK(result.incentives[0].amount == 2.0);
  CHECK(result.incentives[0].social_gain == 4.0);

  // The optimum at budget 7 is 8 (move only the second individual); the
  // distance 8 - 4 stays within the split-efficiency bound.
  CHECK(optimality_gap_bound(result) == (4.0 / 3.0) * 5.0);
  CHECK(enumerate_optimal(instance, 7.0).welfare_gain -
            result.welfare_gain <=
        optimality_gap_bound(result));
  CHECK(welfare_upper_bound_at(result, 1, 7.0) == 14.0);
}

TEST_CASE("budget 8 buys both efficient steps") {
  const Instance instance = fixtures::two_commuters();
  const GreedyResult result = solve(instance, 8.0);

  REQUIRE(result.iterations.size() == 2);
  CHECK(result.iterations[1].individual_id == 2);
  CHECK(result.iterations[1].alt_id == 3);
  CHECK(result.iterations[1].tot_incentive == 8.0);
  CHECK(result.iterations[1].welfare_gain == 12.0);

  CHECK(result.budget_used == 8.0);
  CHECK(result.welfare_gain == 12.0);
  CHECK(result.max_step_size == 6.0);
  REQUIRE(result.split.has_value());
  CHECK(result.split->individual_id == 1);
  CHECK(result.split->alt_id == 3);
  CHECK(result.split->incr_efficiency == 2.0 / 3.0);

  // Here the greedy value is exactly optimal.
  CHECK(enumerate_optimal(instance, 8.0).welfare_gain == 12.0);
}

TEST_CASE("a large budget consumes the chains completely") {
  const Instance instance = fixtures::two_commuters();
  const GreedyResult result = solve(instance, 11.0);

  REQUIRE(result.iterations.size() == 3);
  CHECK(result.iterations[2].alt_id == 3);
  CHECK(result.welfare_gain == 14.0);
  CHECK(result.budget_used == 11.0);
  CHECK(!result.split.has_value());
  CHECK(characteristic_incr_efficiency(result) == 0.0);
  CHECK(optimality_gap_bound(result) == 0.0);
  CHECK(result.chain_position == std::vector<std::int32_t>{2, 1});
}

TEST_CASE("budget 0 stops on the first item without scanning past it") {
  const Instance instance = fixtures::two_commuters();
  const GreedyResult result = solve(instance, 0.0);
  CHECK(result.iterations.empty());
  CHECK(result.budget_used == 0.0);
  REQUIRE(result.split.has_value());
  CHECK(result.split->individual_id == 1);
  CHECK(result.split->alt_id == 2);
  CHECK(optimality_gap_bound(result) == 0.0);
}

TEST_CASE("solver rejects negative and NaN budgets") {
  const Instance instance = fixtures::two_commuters();
  CHECK_THROWS_AS(solve(instance, -1.0), NegativeBudgetError);
  CHECK_THROWS_AS(solve(instance, std::nan("")), NegativeBudgetError);
}

TEST_CASE("every breakpoint is exactly optimal for its own spend") {
  Rng rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance instance = fixtures::random_integer_instance(rng, 4, 4, 12);
    const double budget =
        rng.uniform01() * (fixtures::total_chain_weight(instance) + 1.0);
    const GreedyResult result = solve(instance, budget);
    for (const IterationRecord &it : result.iterations) {
      CHECK(enumerate_optimal(instance, it.tot_incentive).welfare_gain ==
            it.welfare_gain);
    }
    // ... and the end-of-run gap respects the split-efficiency bound.
    const double optimum = enumerate_optimal(instance, budget).welfare_gain;
    CHECK(optimum - result.welfare_gain <=
          optimality_gap_bound(result) + 1e-9);
    // Efficiencies never rise from one iteration to the next.
    for (std::size_t k = 1; k < result.iterations.size(); ++k) {
      CHECK(result.iterations[k].incr_efficiency <=
            result.iterations[k - 1].incr_efficiency);
      CHECK(result.iterations[k].welfare_gain *
                result.iterations[k - 1].tot_incentive <=
            result.iterations[k - 1].welfare_gain *
                result.iterations[k].tot_incentive + 1e-9);
    }
  }
}

TEST_CASE("resume continues a run without redoing or changing anything") {
  Rng rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance instance = fixtures::random_integer_instance(rng, 5, 5);
    const double total = fixtures::total_chain_weight(instance) + 1.0;
    double b1 = rng.uniform01() * total;
    double b2 = rng.uniform01() * total;
    if (b1 > b2) std::swap(b1, b2);

    const GreedyResult stopped = solve(instance, b1);
    const GreedyResult resumed = resume(stopped, instance, b2);
    const GreedyResult fresh = solve(instance, b2);

    CHECK(resumed.budget == fresh.budget);
    CHECK(resumed.budget_used == fresh.budget_used);
    CHECK(resumed.welfare_gain == fresh.welfare_gain);
    CHECK(resumed.max_step_size == fresh.max_step_size);
    CHECK(resumed.chain_position == fresh.chain_position);
    REQUIRE(resumed.iterations.size() == fresh.iterations.size());
    for (std::size_t k = 0; k < fresh.iterations.size(); ++k) {
      CHECK(resumed.iterations[k].individual_id ==
            fresh.iterations[k].individual_id);
      CHECK(resumed.iterations[k].alt_id == fresh.iterations[k].alt_id);
      CHECK(resumed.iterations[k].tot_incentive ==
            fresh.iterations[k].tot_incentive);
      CHECK(resumed.iterations[k].welfare_gain ==
            fresh.iterations[k].welfare_gain);
    }
    CHECK(resumed.split.has_value() == fresh.split.has_value());
    if (fresh.split) {
      CHECK(resumed.split->individual_id == fresh.split->individual_id);
      CHECK(resumed.split->alt_id == fresh.split->alt_id);
    }
    REQUIRE(resumed.incentives.size() == fresh.incentives.size());
    for (std::size_t k = 0; k < fresh.incentives.size(); ++k) {
      CHECK(resumed.incentives[k].individual_id ==
            fresh.incentives[k].individual_id);
      CHECK(resumed.incentives[k].alt_id == fresh.incentives[k].alt_id);
      CHECK(resumed.incentives[k].amount == fresh.incentives[k].amount);
    }
  }

  const Instance instance = fixtures::two_commuters();
  const GreedyResult result = solve(instance, 8.0);
  CHECK_THROWS_AS(resume(result, instance, 7.0), BudgetDecreasedError);
}

TEST_CASE("threshold runs stop strictly above the target inverse") {
  const Instance instance = fixtures::two_commuters();

  // Incremental criterion: 1/2 and 3/4 pass a target of 1, 3/2 does not.
  const GreedyResult incremental = solve_until_inverse_efficiency(
      instance, 1.0, StoppingCriterion::kIncremental);
  CHECK(incremental.iterations.size() == 2);
  CHECK(incremental.budget_used == 8.0);
  CHECK(incremental.welfare_gain == 12.0);
  CHECK(incremental.budget == 8.0);
  REQUIRE(incremental.split.has_value());
  CHECK(incremental.split->alt_id == 3);

  // Overall criterion: cumulative spend per gain stays below 1 even with
  // the last step included, so the whole chain is consumed.
  const GreedyResult overall = solve_until_inverse_efficiency(
      instance, 1.0, StoppingCriterion::kOverall);
  CHECK(overall.iterations.size() == 3);
  CHECK(overall.budget_used == 11.0);
  CHECK(!overall.split.has_value());

  // A tighter target separates the two criteria the other way around.
  CHECK(solve_until_inverse_efficiency(instance, 0.7,
                                       StoppingCriterion::kIncremental)
            .budget_used == 2.0);
  CHECK(solve_until_inverse_efficiency(instance, 0.7,
                                       StoppingCriterion::kOverall)
            .budget_used == 8.0);

  CHECK_THROWS_AS(solve_until_inverse_efficiency(
                      instance, -0.5, StoppingCriterion::kOverall),
                  InvalidConfigError);
}

TEST_CASE("iteration bounds are anchored at recorded breakpoints only") {
  const Instance instance = fixtures::two_commuters();
  const GreedyResult result = solve(instance, 8.0);
  CHECK(welfare_upper_bound_at(result, 2, 8.0) == 12.0);
  CHECK_THROWS_AS(welfare_upper_bound_at(result, 0, 8.0),
                  IterationOutOfRangeError);
  CHECK_THROWS_AS(welfare_upper_bound_at(result, 3, 8.0),
                  IterationOutOfRangeError);
}

TEST_CASE("the welfare curve steps at breakpoints and rejects out-of-range") {
  const Instance instance = fixtures::two_commuters();
  const WelfareCurve curve = welfare_curve(solve(instance, 11.0));

  REQUIRE(curve.points.size() == 4);
  CHECK(curve.budget == 11.0);
  CHECK(curve.points[0].spend == 0.0);
  CHECK(curve.points[1].spend == 2.0);
  CHECK(curve.points[2].spend == 8.0);
  CHECK(curve.points[3].spend == 11.0);

  CHECK(curve_query(curve, 0.0) == 0.0);
  CHECK(curve_query(curve, 1.999) == 0.0);
  CHECK(curve_query(curve, 2.0) == 4.0);
  CHECK(curve_query(curve, 7.5) == 4.0);
  CHECK(curve_query(curve, 8.0) == 12.0);
  CHECK(curve_query(curve, 11.0) == 14.0);
  CHECK_THROWS_AS(curve_query(curve, 11.001), SpendOutOfRangeError);
  CHECK_THROWS_AS(curve_query(curve, -0.001), SpendOutOfRangeError);
  CHECK_THROWS_AS(curve_query(curve, std::nan("")), SpendOutOfRangeError);
}
