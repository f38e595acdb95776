/**
 * @file stochastic.hpp
 * @brief Incentive allocation when utilities are known only up to noise.
 *
 * The planner sees utility estimates v; each individual acts on a latent
 * utility v + e with e drawn i.i.d. Gumbel with scale mu (the logit model).
 * Having observed an individual's current choice d, the right offer for
 * alternative j is no longer v_d - v_j but the conditional expectation
 *
 *   E(U_d - U_j | U_d > U_j)
 *     = mu * (1 + exp(dv/mu)) / exp(dv/mu) * log(1 + exp(dv/mu)),
 *
 * with dv = v_d - v_j, which the conditioning pushes strictly above
 * max(0, dv). Allocation then runs as in the deterministic case, on chains
 * built from these expected offers, and a simulation protocol plays the
 * offers against the latent draws one proposal at a time.
 */

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "incentive/concavize.hpp"
#include "incentive/errors.hpp"
#include "incentive/greedy.hpp"
#include "incentive/model.hpp"
#include "incentive/parallel.hpp"
#include "incentive/rng.hpp"
#include "incentive/types.hpp"

namespace incentive {

/**
 * @brief Expected incentive E(U_d - U_j | U_d > U_j) for a utility-estimate
 * gap @p delta_v and noise scale @p mu.
 *
 * Evaluated as mu * (1 + exp(-x)) * log1p(exp(x)) with x = delta_v / mu,
 * split by sign so it is accurate from one asymptote to the other: it
 * approaches delta_v as x -> +inf, mu as x -> -inf, and equals
 * 2 * mu * ln 2 at zero.
 *
 * @throws NonPositiveScaleError unless mu > 0.
 */
inline double gumbel_expected_incentive(double delta_v, double mu) {
  if (!(mu > 0.0)) throw NonPositiveScaleError(mu);
  const double x = delta_v / mu;
  if (x >= 0.0) {
    const double t = std::exp(-x);
    return delta_v + mu * (x * t + (1.0 + t) * std::log1p(t));
  }
  const double s = std::exp(x);
  if (s == 0.0) return mu;  // below the underflow horizon the limit is exact
  return mu * (std::log1p(s) + std::log1p(s) / s);
}

/// One alternative as the planner models it, plus the latent noise term the
/// simulated individual privately acts on.
struct StochasticAlternative {
  std::int32_t id = 0;
  /// Deterministic utility estimate v, money units.
  double utility = 0.0;
  double social = 0.0;
  /// Latent Gumbel term e; hidden from the planner.
  double noise = 0.0;
};

struct StochasticIndividual {
  std::int32_t id = 0;
  std::vector<StochasticAlternative> alternatives;
};

struct StochasticInstance {
  std::string money_unit = "EUR";
  std::string welfare_unit = "kgCO2";
  /// Gumbel scale mu of the noise, money units.
  double scale = 1.0;
  std::vector<StochasticIndividual> individuals;
};

/// Index of the alternative the individual actually holds: the argmax of
/// v + e, ties to the larger social indicator then the smaller id. This is
/// the choice the planner observes.
inline std::size_t realized_default(const StochasticIndividual &individual) {
  assert(!individual.alternatives.empty());
  std::size_t best = 0;
  for (std::size_t j = 1; j < individual.alternatives.size(); ++j) {
    const StochasticAlternative &a = individual.alternatives[j];
    const StochasticAlternative &b = individual.alternatives[best];
    if (detail::preferred(a.utility + a.noise, a.social, a.id,
                          b.utility + b.noise, b.social, b.id)) {
      best = j;
    }
  }
  return best;
}

/// Expected offer per alternative, aligned with the instance layout. The
/// observed default gets the dv = 0 value (2 * mu * ln 2), not a forced 0.
inline std::vector<std::vector<double>> stochastic_weights(
    const StochasticInstance &instance) {
  std::vector<std::vector<double>> weights(instance.individuals.size());
  parallel_chunks(instance.individuals.size(), [&](std::size_t begin,
                                                   std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const StochasticIndividual &individual = instance.individuals[i];
      const std::size_t d = realized_default(individual);
      const double v_default = individual.alternatives[d].utility;
      weights[i].reserve(individual.alternatives.size());
      for (const StochasticAlternative &a : individual.alternatives) {
        weights[i].push_back(
            gumbel_expected_incentive(v_default - a.utility, instance.scale));
      }
    }
  });
  return weights;
}

/**
 * @brief Gumbel draws conditioned on @p default_index being the strict
 * argmax of utility + draw, by rejection sampling.
 *
 * Resamples the whole vector until the condition holds, so the accepted
 * draws follow the exact conditional law.
 *
 * @throws ImprobableDefaultError after 1e6 rejected vectors; in particular
 *         when a utility tie makes the strict condition unsatisfiable.
 */
inline std::vector<double> conditional_gumbel_draws(
    const std::vector<double> &utilities, std::size_t default_index, double mu,
    Rng &rng, std::int32_t individual_id = -1) {
  if (!(mu > 0.0)) throw NonPositiveScaleError(mu);
  assert(default_index < utilities.size());
  const std::int64_t kMaxAttempts = 1000000;
  std::vector<double> draws(utilities.size());
  for (std::int64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    for (double &e : draws) e = rng.gumbel(mu);
    const double top = utilities[default_index] + draws[default_index];
    bool is_strict_argmax = true;
    for (std::size_t j = 0; j < utilities.size(); ++j) {
      if (j != default_index && utilities[j] + draws[j] >= top) {
        is_strict_argmax = false;
        break;
      }
    }
    if (is_strict_argmax) return draws;
  }
  throw ImprobableDefaultError(individual_id, kMaxAttempts);
}

/**
 * @brief Planner view of a deterministic instance: utilities become
 * estimates, and latent draws are sampled conditional on each observed
 * default remaining the realized one.
 */
inline StochasticInstance make_stochastic(const Instance &instance, double mu,
                                          std::uint64_t seed) {
  if (!(mu > 0.0)) throw NonPositiveScaleError(mu);
  StochasticInstance out;
  out.money_unit = instance.money_unit;
  out.welfare_unit = instance.welfare_unit;
  out.scale = mu;
  out.individuals.resize(instance.individuals.size());
  parallel_chunks(instance.individuals.size(), [&](std::size_t begin,
                                                   std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Individual &individual = instance.individuals[i];
      Rng rng(substream_seed(seed, static_cast<std::uint64_t>(i)));
      std::vector<double> utilities;
      utilities.reserve(individual.alternatives.size());
      for (const Alternative &a : individual.alternatives) {
        utilities.push_back(a.utility);
      }
      const std::vector<double> draws = conditional_gumbel_draws(
          utilities, default_alternative(individual), mu, rng, individual.id);
      StochasticIndividual &si = out.individuals[i];
      si.id = individual.id;
      si.alternatives.reserve(individual.alternatives.size());
      for (std::size_t j = 0; j < individual.alternatives.size(); ++j) {
        const Alternative &a = individual.alternatives[j];
        si.alternatives.push_back({a.id, a.utility, a.social, draws[j]});
      }
    }
  });
  return out;
}

/// Outcome of one sequential offer simulation.
struct SimulationReport {
  double budget = 0.0;
  /// Sum of the grants finally held; refunds of superseded grants included.
  double budget_spent = 0.0;
  std::int64_t proposals = 0;
  std::int64_t accepted = 0;
  /// accepted / proposals; 0 when nothing was proposed.
  double acceptance_rate = 0.0;
  /// Realized welfare change against the observed defaults.
  double welfare_gain = 0.0;
  /// Alternative id each individual ends up holding, instance order.
  std::vector<std::int32_t> final_choice;
};

/**
 * @brief Play the expected-offer allocation against the latent draws.
 *
 * Chains are built on the expected offers, anchored at each observed
 * default with weight 0, and walked in decreasing incremental efficiency
 * exactly like the deterministic solver. Each selected step proposes the
 * full expected offer of its alternative; the individual accepts iff her
 * latent utility plus the offer is at least her current entitlement (the
 * latent utility of the observed default, updated whenever she accepts).
 * Accepting refunds her previous grant, so the budget carries the
 * difference; the first offer whose net charge exceeds the remaining budget
 * stops the walk, and rejected offers cost nothing. The planner never
 * replans after a rejection.
 */
inline SimulationReport simulate_sequential(const StochasticInstance &instance,
                                            double budget) {
  if (!(budget >= 0.0)) throw NegativeBudgetError(budget);
  if (!(instance.scale > 0.0)) throw NonPositiveScaleError(instance.scale);

  const std::size_t n = instance.individuals.size();
  const std::vector<std::vector<double>> offers = stochastic_weights(instance);

  std::vector<LpExtremeChain> chains(n);
  std::vector<std::size_t> default_index(n);
  parallel_chunks(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const StochasticIndividual &individual = instance.individuals[i];
      const std::size_t d = realized_default(individual);
      default_index[i] = d;
      std::vector<detail::ChainPoint> points;
      points.reserve(individual.alternatives.size() + 1);
      // Anchor: leaving the individual alone costs nothing. The default's
      // own positive offer is dominated by the anchor and drops out.
      points.push_back({0.0, individual.alternatives[d].social,
                        individual.alternatives[d].id});
      for (std::size_t j = 0; j < individual.alternatives.size(); ++j) {
        const StochasticAlternative &a = individual.alternatives[j];
        points.push_back({offers[i][j], a.social, a.id});
      }
      chains[i] = detail::hull_chain(individual.id, std::move(points));
    }
  });

  SimulationReport report;
  report.budget = budget;
  report.final_choice.resize(n);

  std::vector<double> entitlement(n), grant(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const StochasticAlternative &d =
        instance.individuals[i].alternatives[default_index[i]];
    entitlement[i] = d.utility + d.noise;
    report.final_choice[i] = d.id;
  }

  std::priority_queue<detail::HeapEntry, std::vector<detail::HeapEntry>,
                      detail::HeapCompare>
      heap;
  for (std::size_t i = 0; i < n; ++i) {
    if (chains[i].entries.size() > 1) {
      heap.push({chains[i].entries[1].incr_efficiency, i, 1});
    }
  }

  double remaining = budget;
  while (!heap.empty()) {
    const detail::HeapEntry top = heap.top();
    const std::size_t i = top.individual_index;
    const ChainEntry &entry =
        chains[i].entries[static_cast<std::size_t>(top.chain_pos)];

    const double charge = entry.weight - grant[i];
    if (charge > remaining) break;
    heap.pop();

    ++report.proposals;
    const StochasticIndividual &individual = instance.individuals[i];
    const auto alt = std::find_if(
        individual.alternatives.begin(), individual.alternatives.end(),
        [&](const StochasticAlternative &a) { return a.id == entry.alt_id; });
    assert(alt != individual.alternatives.end());
    if (alt->utility + alt->noise + entry.weight >= entitlement[i]) {
      ++report.accepted;
      remaining -= charge;
      report.budget_spent += charge;
      grant[i] = entry.weight;
      entitlement[i] = alt->utility + alt->noise + entry.weight;
      report.final_choice[i] = entry.alt_id;
    }

    const auto next = static_cast<std::size_t>(top.chain_pos) + 1;
    if (next < chains[i].entries.size()) {
      heap.push({chains[i].entries[next].incr_efficiency, i,
                 static_cast<std::int32_t>(next)});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const StochasticIndividual &individual = instance.individuals[i];
    const double s_default =
        individual.alternatives[default_index[i]].social;
    const auto chosen = std::find_if(
        individual.alternatives.begin(), individual.alternatives.end(),
        [&](const StochasticAlternative &a) {
          return a.id == report.final_choice[i];
        });
    assert(chosen != individual.alternatives.end());
    report.welfare_gain += chosen->social - s_default;
  }
  report.acceptance_rate =
      report.proposals > 0
          ? static_cast<double>(report.accepted) /
                static_cast<double>(report.proposals)
          : 0.0;
  return report;
}

}  // namespace incentive
