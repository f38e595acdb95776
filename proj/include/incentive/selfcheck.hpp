/**
 * @file selfcheck.hpp
 * @brief Randomized property suite behind the `verify` command.
 *
 * Each property pits the greedy solver against the brute-force enumerator on
 * small integer-valued instances, where every asserted identity holds exactly
 * in floating point. The optional fault injection switches the solver to a
 * deliberately wrong item order so the suite can demonstrate that it would
 * catch a broken implementation.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "incentive/concavize.hpp"
#include "incentive/exact.hpp"
#include "incentive/greedy.hpp"
#include "incentive/io.hpp"
#include "incentive/model.hpp"
#include "incentive/policies.hpp"
#include "incentive/rng.hpp"

namespace incentive {

struct SelfCheckConfig {
  std::int64_t n_instances = 200;
  std::uint64_t seed = 1;
  std::int32_t max_individuals = 5;
  std::int32_t max_alternatives = 5;
  /// When true, the solver consumes items cheapest-first instead of by
  /// efficiency. The suite is expected to report failures.
  bool inject_fault = false;
};

struct PropertyReport {
  std::string name;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  std::string first_failure;
};

struct SelfCheckReport {
  std::vector<PropertyReport> properties;
  bool all_passed = true;
};

namespace detail {

/// Random instance with small integer utilities and socials. Values repeat
/// freely across alternatives, so ties of every kind are well represented.
inline Instance random_integer_instance(Rng &rng, std::int32_t max_individuals,
                                        std::int32_t max_alternatives) {
  Instance instance;
  const auto n = static_cast<std::int32_t>(
      rng.uniform_int(1, static_cast<std::uint64_t>(max_individuals)));
  for (std::int32_t i = 0; i < n; ++i) {
    Individual individual;
    individual.id = i + 1;
    const auto m = static_cast<std::int32_t>(
        rng.uniform_int(1, static_cast<std::uint64_t>(max_alternatives)));
    for (std::int32_t j = 0; j < m; ++j) {
      Alternative a;
      a.id = j + 1;
      a.utility = static_cast<double>(rng.uniform_int(0, 12));
      a.social = static_cast<double>(rng.uniform_int(0, 12));
      individual.alternatives.push_back(a);
    }
    instance.individuals.push_back(std::move(individual));
  }
  return instance;
}

inline void record(PropertyReport &report, bool ok, const std::string &detail) {
  ++report.checks;
  if (!ok) {
    ++report.failures;
    if (report.first_failure.empty()) report.first_failure = detail;
  }
}

}  // namespace detail

/// Runs the full property suite and returns per-property tallies.
inline SelfCheckReport run_self_check(const SelfCheckConfig &config) {
  SelfCheckReport report;
  report.properties = {
      {"breakpoints-are-optimal", 0, 0, ""},
      {"gap-bound-holds", 0, 0, ""},
      {"efficiency-is-monotone", 0, 0, ""},
      {"scheme-spend-identity", 0, 0, ""},
  };
  PropertyReport &touch = report.properties[0];
  PropertyReport &gap = report.properties[1];
  PropertyReport &monotone = report.properties[2];
  PropertyReport &scheme = report.properties[3];

  const auto order = config.inject_fault
                         ? detail::ItemOrder::kWeightAscending
                         : detail::ItemOrder::kIncrementalEfficiency;

  Rng rng(config.seed);
  for (std::int64_t trial = 0; trial < config.n_instances; ++trial) {
    const Instance instance = detail::random_integer_instance(
        rng, config.max_individuals, config.max_alternatives);
    const std::string tag =
        "seed " + std::to_string(config.seed) + " trial " +
        std::to_string(trial);

    double total_weight = 0.0;
    for (const LpExtremeChain &chain : build_chains(instance)) {
      if (!chain.entries.empty()) total_weight += chain.entries.back().weight;
    }
    const double budget = rng.uniform01() * (total_weight + 1.0);
    const GreedyResult result =
        detail::solve_with_order(instance, budget, order);

    // Every prefix of the greedy path is an exact optimum at its own spend.
    for (const IterationRecord &it : result.iterations) {
      const ExactResult best = enumerate_optimal(instance, it.tot_incentive);
      detail::record(touch, best.welfare_gain == it.welfare_gain,
                     tag + ": step " + std::to_string(it.k) + " gained " +
                         format_double(it.welfare_gain) + ", optimum is " +
                         format_double(best.welfare_gain));
    }

    // The a-priori bound covers the distance to the true optimum.
    const ExactResult best = enumerate_optimal(instance, budget);
    const double gap_value = best.welfare_gain - result.welfare_gain;
    detail::record(gap, gap_value <= optimality_gap_bound(result) + 1e-9,
                   tag + ": gap " + format_double(gap_value) +
                       " exceeds bound " +
                       format_double(optimality_gap_bound(result)));

    // Incremental and overall efficiency never rise along the path.
    bool ordered = true;
    for (std::size_t k = 1; k < result.iterations.size(); ++k) {
      const IterationRecord &prev = result.iterations[k - 1];
      const IterationRecord &curr = result.iterations[k];
      if (curr.incr_efficiency > prev.incr_efficiency) ordered = false;
      if (prev.tot_incentive > 0.0 && curr.tot_incentive > 0.0 &&
          curr.welfare_gain / curr.tot_incentive >
              prev.welfare_gain / prev.tot_incentive + 1e-12) {
        ordered = false;
      }
    }
    detail::record(monotone, ordered, tag + ": efficiency increased between steps");

    // An all-or-nothing subsidy scheme overpays a personalized policy by
    // exactly the inefficiency bound when baselines sit at the defaults.
    const double tax_level = 0.25 + rng.uniform01();
    SchemeConfig scheme_config;
    scheme_config.rate = 1.0 / tax_level;
    scheme_config.budget = std::numeric_limits<double>::infinity();
    const SchemeResult outcome = fcfs_subsidy_scheme(instance, scheme_config);
    const PolicyEvaluation eval = evaluate(instance, outcome.policy);
    double personalized_spend = 0.0;
    for (std::size_t i = 0; i < instance.individuals.size(); ++i) {
      const Individual &individual = instance.individuals[i];
      const ChoiceOutcome choice = choose(individual, outcome.policy);
      for (std::size_t j = 0; j < individual.alternatives.size(); ++j) {
        if (individual.alternatives[j].id == choice.alternative) {
          personalized_spend += weight(individual, j);
        }
      }
    }
    const double bound = inefficiency_lower_bound(instance, outcome.policy,
                                                  tax_level);
    detail::record(
        scheme,
        std::abs((eval.expenses - personalized_spend) - bound) <= 1e-9,
        tag + ": scheme overhead " +
            format_double(eval.expenses - personalized_spend) +
            " != bound " + format_double(bound));
  }

  for (const PropertyReport &property : report.properties) {
    if (property.failures > 0) report.all_passed = false;
  }
  return report;
}

}  // namespace incentive
