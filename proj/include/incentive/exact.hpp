/**
 * @file exact.hpp
 * @brief Exact optima for small instances, used as ground truth in tests.
 *
 * The planner's problem is a multiple-choice knapsack: pick one alternative
 * per individual, maximize the total social gain over the defaults, subject
 * to total incentive weight <= budget. Both solvers here are deliberately
 * naive and independent of the production solver.
 */

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "incentive/model.hpp"
#include "incentive/types.hpp"

namespace incentive {

/// Optimal assignment found by exhaustive enumeration.
struct ExactResult {
  double welfare_gain = 0.0;
  /// Chosen alternative id per individual, in instance order.
  std::vector<std::int32_t> assignment;
};

/**
 * @brief Exhaustive search over the full Cartesian product of choice sets.
 *
 * Ties between equally good assignments resolve to the lexicographically
 * smallest one in alternative-position order, which makes results stable
 * for golden tests.
 *
 * @throws InstanceTooLargeError when the product exceeds 1e7 assignments.
 */
inline ExactResult enumerate_optimal(const Instance &instance, double budget) {
  if (budget < 0.0) throw NegativeBudgetError(budget);
  const std::size_t n = instance.individuals.size();

  double combinations = 1.0;
  for (const Individual &individual : instance.individuals) {
    assert(!individual.alternatives.empty());
    combinations *= static_cast<double>(individual.alternatives.size());
    if (combinations > 1e7) {
      throw InstanceTooLargeError(
          "assignment space exceeds 1e7, refusing to enumerate");
    }
  }

  // Per-individual weight and social gain relative to the default.
  std::vector<std::vector<double>> weights(n), gains(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Individual &individual = instance.individuals[i];
    const std::size_t d = default_alternative(individual);
    const double s_default = individual.alternatives[d].social;
    for (std::size_t j = 0; j < individual.alternatives.size(); ++j) {
      weights[i].push_back(weight(individual, j));
      gains[i].push_back(individual.alternatives[j].social - s_default);
    }
  }

  ExactResult best;
  best.welfare_gain = 0.0;
  std::vector<std::size_t> pick(n, 0), best_pick(n, 0);
  bool have_best = false;

  // Odometer over the assignment space, most significant digit first, so
  // assignments are visited in lexicographic order and the first optimum
  // found is the lexicographically smallest.
  while (true) {
    double total_weight = 0.0, total_gain = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      total_weight += weights[i][pick[i]];
      total_gain += gains[i][pick[i]];
    }
    if (total_weight <= budget &&
        (!have_best || total_gain > best.welfare_gain)) {
      best.welfare_gain = total_gain;
      best_pick = pick;
      have_best = true;
    }
    std::size_t digit = n;
    while (digit > 0) {
      --digit;
      if (++pick[digit] < instance.individuals[digit].alternatives.size())
        break;
      pick[digit] = 0;
      if (digit == 0) {
        for (std::size_t i = 0; i < n; ++i) {
          best.assignment.push_back(
              instance.individuals[i].alternatives[best_pick[i]].id);
        }
        return best;
      }
    }
    if (n == 0) {
      return best;
    }
  }
}

/**
 * @brief Dynamic program over an integer weight grid.
 * @param grid Weight quantum; every weight must be an exact multiple.
 *
 * Classic table dp[c] = best gain with capacity c, one row per individual.
 * An independent cross-check for enumerate_optimal on integer instances.
 *
 * @throws NonGridWeightsError when a weight is off the grid by > 1e-9.
 * @throws InstanceTooLargeError when the table would exceed 1e8 cells.
 */
inline double dp_optimal(const Instance &instance, double budget,
                         double grid) {
  if (budget < 0.0) throw NegativeBudgetError(budget);
  if (grid <= 0.0) throw InvalidConfigError("grid must be positive");

  const auto capacity = static_cast<std::int64_t>(
      std::floor(budget / grid + 1e-9));
  const double cells = static_cast<double>(capacity + 1) *
                       static_cast<double>(instance.individuals.size());
  if (cells > 1e8) {
    throw InstanceTooLargeError("dp table exceeds 1e8 cells");
  }

  // Partial gains can be negative, so the unreachable marker must be below
  // every representable total.
  const double kNoValue = -std::numeric_limits<double>::infinity();
  std::vector<double> dp(static_cast<std::size_t>(capacity) + 1, kNoValue);
  dp[0] = 0.0;
  std::vector<double> next(dp.size());

  for (const Individual &individual : instance.individuals) {
    const std::size_t d = default_alternative(individual);
    const double s_default = individual.alternatives[d].social;
    std::fill(next.begin(), next.end(), kNoValue);
    for (std::size_t j = 0; j < individual.alternatives.size(); ++j) {
      const double w = weight(individual, j);
      const auto w_int = static_cast<std::int64_t>(std::llround(w / grid));
      if (std::abs(static_cast<double>(w_int) * grid - w) > 1e-9 || w_int < 0) {
        throw NonGridWeightsError(individual.id, w, grid);
      }
      const double gain = individual.alternatives[j].social - s_default;
      for (std::int64_t c = w_int; c <= capacity; ++c) {
        const double base = dp[static_cast<std::size_t>(c - w_int)];
        if (base == kNoValue) continue;
        double &cell = next[static_cast<std::size_t>(c)];
        if (cell == kNoValue || base + gain > cell) cell = base + gain;
      }
    }
    dp.swap(next);
  }

  double best = 0.0;
  for (double value : dp) best = std::max(best, value);
  return best;
}

}  // namespace incentive
