/**
 * @file greedy.hpp
 * @brief Budget-constrained incentive allocation by greedy chain consumption.
 *
 * After every individual is reduced to her LP-extreme chain, the solver
 * repeatedly takes the single chain step with the highest incremental
 * efficiency anywhere in the population (ties to the lower individual id),
 * paying its incremental weight out of the budget. It stops at the first
 * step that does not fit; that step is the split item and nothing beyond it
 * is scanned. Steps within one individual's chain have strictly decreasing
 * efficiency, so they are consumed in order and the partial sums telescope
 * to the exact incentive the final assignment needs.
 *
 * Guarantees used by tests and callers:
 *  - at every recorded spend level the welfare gain is exactly optimal;
 *  - the final gap to the optimum at the full budget is at most
 *    split_efficiency * (budget - budget_used);
 *  - re-running with a larger budget continues where the run stopped.
 */

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <vector>

#include "incentive/concavize.hpp"
#include "incentive/errors.hpp"
#include "incentive/types.hpp"

namespace incentive {

/// One consumed chain step. Spend and gain are cumulative after the step.
struct IterationRecord {
  std::int64_t k = 0;  // 1-based iteration number
  std::int32_t individual_id = 0;
  std::int32_t alt_id = 0;
  double incr_weight = 0.0;
  double incr_social = 0.0;
  double incr_efficiency = 0.0;
  double tot_incentive = 0.0;
  double welfare_gain = 0.0;
};

/// First chain step that no longer fit the budget.
struct SplitItem {
  std::int32_t individual_id = 0;
  std::int32_t alt_id = 0;
  double incr_weight = 0.0;
  double incr_social = 0.0;
  double incr_efficiency = 0.0;
};

/// Final grant to one individual moved off her default.
struct AssignedIncentive {
  std::int32_t individual_id = 0;
  std::int32_t alt_id = 0;
  /// Transfer paid, the cumulative chain weight of the assigned alternative.
  double amount = 0.0;
  double social_gain = 0.0;
};

struct GreedyResult {
  double budget = 0.0;
  double budget_used = 0.0;
  double welfare_gain = 0.0;
  std::vector<IterationRecord> iterations;
  /// Absent when the chains were consumed completely.
  std::optional<SplitItem> split;
  /// Largest incremental weight among consumed steps (0 if none).
  double max_step_size = 0.0;
  /// Chain position per individual in instance order, 0 = default.
  std::vector<std::int32_t> chain_position;
  /// Grants of the induced incentive policy, in instance order.
  std::vector<AssignedIncentive> incentives;
};

/// Efficiency of the split item; 0 when the run consumed everything. This is
/// the slope bounding every result derived from the run.
inline double characteristic_incr_efficiency(const GreedyResult &result) {
  return result.split ? result.split->incr_efficiency : 0.0;
}

/// Which efficiency a threshold run compares against its target.
enum class StoppingCriterion {
  /// Cumulative welfare gain per unit of cumulative spend.
  kOverall,
  /// Efficiency of the next chain step alone.
  kIncremental,
};

namespace detail {

/// Heap ordering knob. kWeightAscending is intentionally wrong (cheapest
/// step first); the verify command uses it as a negative control to prove
/// the property suite can detect a broken solver.
enum class ItemOrder { kIncrementalEfficiency, kWeightAscending };

struct HeapEntry {
  double key;
  std::size_t individual_index;
  std::int32_t chain_pos;
};

struct HeapCompare {
  // std::priority_queue pops the largest; break key ties toward the
  // smaller individual index for deterministic output.
  bool operator()(const HeapEntry &a, const HeapEntry &b) const {
    if (a.key != b.key) return a.key < b.key;
    return a.individual_index > b.individual_index;
  }
};

struct ThresholdStop {
  StoppingCriterion criterion;
  double target_inverse;
};

inline double heap_key(const ChainEntry &entry, ItemOrder order) {
  return order == ItemOrder::kIncrementalEfficiency ? entry.incr_efficiency
                                                    : -entry.incr_weight;
}

/// Core loop shared by solve, resume and the threshold runs. Starts from
/// the given chain positions and running totals, consumes steps until the
/// budget, the threshold or the chains run out.
inline GreedyResult run_greedy(const std::vector<LpExtremeChain> &chains,
                               double budget, GreedyResult state,
                               std::optional<ThresholdStop> threshold,
                               ItemOrder order) {
  state.budget = budget;
  state.split.reset();

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapCompare> heap;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const auto next = static_cast<std::size_t>(state.chain_position[i]) + 1;
    if (next < chains[i].entries.size()) {
      heap.push({heap_key(chains[i].entries[next], order), i,
                 static_cast<std::int32_t>(next)});
    }
  }

  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    const LpExtremeChain &chain = chains[top.individual_index];
    const ChainEntry &entry =
        chain.entries[static_cast<std::size_t>(top.chain_pos)];

    if (threshold) {
      const double inverse =
          threshold->criterion == StoppingCriterion::kIncremental
              ? 1.0 / entry.incr_efficiency
              : (state.budget_used + entry.incr_weight) /
                    (state.welfare_gain + entry.incr_social);
      if (inverse > threshold->target_inverse) {
        state.split = SplitItem{chain.individual_id, entry.alt_id,
                                entry.incr_weight, entry.incr_social,
                                entry.incr_efficiency};
        break;
      }
    }

    if (entry.incr_weight > budget - state.budget_used) {
      state.split = SplitItem{chain.individual_id, entry.alt_id,
                              entry.incr_weight, entry.incr_social,
                              entry.incr_efficiency};
      break;
    }

    heap.pop();
    state.budget_used += entry.incr_weight;
    state.welfare_gain += entry.incr_social;
    state.max_step_size = std::max(state.max_step_size, entry.incr_weight);
    state.chain_position[top.individual_index] = top.chain_pos;
    state.iterations.push_back(
        {static_cast<std::int64_t>(state.iterations.size()) + 1,
         chain.individual_id, entry.alt_id, entry.incr_weight,
         entry.incr_social, entry.incr_efficiency, state.budget_used,
         state.welfare_gain});

    const auto next = static_cast<std::size_t>(top.chain_pos) + 1;
    if (next < chain.entries.size()) {
      heap.push({heap_key(chain.entries[next], order), top.individual_index,
                 static_cast<std::int32_t>(next)});
    }
  }

  state.incentives.clear();
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const auto pos = static_cast<std::size_t>(state.chain_position[i]);
    if (pos == 0) continue;
    const ChainEntry &assigned = chains[i].entries[pos];
    state.incentives.push_back({chains[i].individual_id, assigned.alt_id,
                                assigned.weight,
                                assigned.social - chains[i].entries[0].social});
  }
  return state;
}

inline GreedyResult fresh_state(std::size_t n) {
  GreedyResult state;
  state.chain_position.assign(n, 0);
  return state;
}

inline GreedyResult solve_with_order(const Instance &instance, double budget,
                                     ItemOrder order) {
  if (!(budget >= 0.0)) throw NegativeBudgetError(budget);
  const std::vector<LpExtremeChain> chains = build_chains(instance);
  return run_greedy(chains, budget,
                    fresh_state(instance.individuals.size()), std::nullopt,
                    order);
}

}  // namespace detail

/**
 * @brief Allocate @p budget over @p instance.
 * @throws NegativeBudgetError when the budget is negative (or NaN).
 */
inline GreedyResult solve(const Instance &instance, double budget) {
  return detail::solve_with_order(instance, budget,
                                  detail::ItemOrder::kIncrementalEfficiency);
}

/**
 * @brief Continue a finished run with a larger budget.
 *
 * Chains are rebuilt (that cost is linear and parallel) but no past
 * iteration is redone; the output is field-for-field identical to
 * solve(instance, new_budget).
 *
 * @throws BudgetDecreasedError when new_budget < result.budget.
 */
inline GreedyResult resume(const GreedyResult &result, const Instance &instance,
                           double new_budget) {
  if (!(new_budget >= result.budget)) {
    throw BudgetDecreasedError(result.budget, new_budget);
  }
  const std::vector<LpExtremeChain> chains = build_chains(instance);
  assert(chains.size() == result.chain_position.size());
  return detail::run_greedy(chains, new_budget, result, std::nullopt,
                            detail::ItemOrder::kIncrementalEfficiency);
}

/**
 * @brief Run until the efficiency of allocation drops to a target.
 * @param target_inverse Maximum tolerated inverse efficiency (money per
 *        welfare unit). The run stops before the first step that would push
 *        the chosen criterion's inverse above it.
 */
inline GreedyResult solve_until_inverse_efficiency(const Instance &instance,
                                                   double target_inverse,
                                                   StoppingCriterion criterion) {
  if (!(target_inverse >= 0.0)) {
    throw InvalidConfigError("target inverse efficiency must be nonnegative");
  }
  const std::vector<LpExtremeChain> chains = build_chains(instance);
  GreedyResult result = detail::run_greedy(
      chains, std::numeric_limits<double>::infinity(),
      detail::fresh_state(instance.individuals.size()),
      detail::ThresholdStop{criterion, target_inverse},
      detail::ItemOrder::kIncrementalEfficiency);
  // The run is bounded by the threshold, not by money; report the spend
  // itself as the budget so downstream bounds and curve queries are tight.
  result.budget = result.budget_used;
  return result;
}

/// Welfare distance to the exact optimum at the full budget is at most this.
inline double optimality_gap_bound(const GreedyResult &result) {
  if (!result.split) return 0.0;
  return result.split->incr_efficiency * (result.budget - result.budget_used);
}

/**
 * @brief Upper bound on the optimal welfare gain at @p budget, read off
 * iteration @p k: gain(k) + efficiency(k) * (budget - spend(k)).
 * @throws IterationOutOfRangeError unless 1 <= k <= iterations.size().
 */
inline double welfare_upper_bound_at(const GreedyResult &result,
                                     std::int64_t k, double budget) {
  if (k < 1 || k > static_cast<std::int64_t>(result.iterations.size())) {
    throw IterationOutOfRangeError(
        k, static_cast<std::int64_t>(result.iterations.size()));
  }
  const IterationRecord &it =
      result.iterations[static_cast<std::size_t>(k - 1)];
  return it.welfare_gain + it.incr_efficiency * (budget - it.tot_incentive);
}

/// One breakpoint of the spend-to-welfare curve.
struct CurvePoint {
  double spend = 0.0;
  double welfare_gain = 0.0;
};

/// Piecewise-constant welfare curve; exact at every breakpoint.
struct WelfareCurve {
  /// Upper end of the solved spend range.
  double budget = 0.0;
  /// Breakpoints in strictly increasing spend order, starting at (0, 0).
  std::vector<CurvePoint> points;
};

inline WelfareCurve welfare_curve(const GreedyResult &result) {
  WelfareCurve curve;
  curve.budget = result.budget;
  curve.points.reserve(result.iterations.size() + 1);
  curve.points.push_back({0.0, 0.0});
  for (const IterationRecord &it : result.iterations) {
    curve.points.push_back({it.tot_incentive, it.welfare_gain});
  }
  return curve;
}

/**
 * @brief Welfare gain achievable with @p spend money: the last breakpoint
 * at or below it.
 * @throws SpendOutOfRangeError outside [0, curve.budget].
 */
inline double curve_query(const WelfareCurve &curve, double spend) {
  if (!(spend >= 0.0) || spend > curve.budget) {
    throw SpendOutOfRangeError(spend, curve.budget);
  }
  auto it = std::upper_bound(
      curve.points.begin(), curve.points.end(), spend,
      [](double value, const CurvePoint &p) { return value < p.spend; });
  assert(it != curve.points.begin());
  return std::prev(it)->welfare_gain;
}

}  // namespace incentive
