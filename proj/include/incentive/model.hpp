/**
 * @file model.hpp
 * @brief Choice model: defaults, policy-induced choices and policy accounting.
 *
 * Individuals are utility maximizers. Without intervention each picks the
 * alternative with the highest intrinsic utility (her default); under a
 * policy she picks the highest utility including transfers, with banned
 * alternatives removed. Utility ties go to the larger social indicator and
 * then to the smaller alternative id, so ties resolve in the regulator's
 * favor and deterministically.
 */

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "incentive/errors.hpp"
#include "incentive/types.hpp"

namespace incentive {

namespace detail {

/// True iff (utility a, social a, id a) beats b under the tie-break order.
inline bool preferred(double utility_a, double social_a, std::int32_t id_a,
                      double utility_b, double social_b, std::int32_t id_b) {
  if (utility_a != utility_b) return utility_a > utility_b;
  if (social_a != social_b) return social_a > social_b;
  return id_a < id_b;
}

}  // namespace detail

/// Index (into individual.alternatives) of the default alternative.
inline std::size_t default_alternative(const Individual &individual) {
  assert(!individual.alternatives.empty());
  std::size_t best = 0;
  for (std::size_t j = 1; j < individual.alternatives.size(); ++j) {
    const Alternative &a = individual.alternatives[j];
    const Alternative &b = individual.alternatives[best];
    if (detail::preferred(a.utility, a.social, a.id, b.utility, b.social, b.id))
      best = j;
  }
  return best;
}

/**
 * @brief Incentive weight of one alternative: the transfer that makes the
 * individual indifferent between it and her default.
 *
 * w = u(default) - u(alternative); the default itself has weight exactly 0,
 * and no weight is negative because the default maximizes utility.
 */
inline double weight(const Individual &individual, std::size_t alt_index) {
  assert(alt_index < individual.alternatives.size());
  const std::size_t d = default_alternative(individual);
  if (alt_index == d) return 0.0;
  return individual.alternatives[d].utility -
         individual.alternatives[alt_index].utility;
}

/**
 * @brief Choice of one individual under a policy.
 * @throws AllBannedError when the policy bans the whole choice set.
 */
inline ChoiceOutcome choose(const Individual &individual,
                            const Policy &policy) {
  const double u_default =
      individual.alternatives[default_alternative(individual)].utility;
  bool found = false;
  ChoiceOutcome best;
  double best_score = 0.0;
  double best_social = 0.0;
  std::int32_t best_id = 0;
  for (const Alternative &alt : individual.alternatives) {
    const Transfer t = policy.transfer(individual.id, alt.id);
    if (t.is_banned()) continue;
    // Rank on the advantage over the unassisted default. A transfer built
    // as u(default) - u(alternative) then cancels exactly and the
    // indifference tie-break applies; summing u + t first would round such
    // ties away whenever the values are not representable.
    const double score = (alt.utility - u_default) + t.value();
    if (!found || detail::preferred(score, alt.social, alt.id, //
                                    best_score, best_social, best_id)) {
      best = ChoiceOutcome{alt.id, alt.utility + t.value(), t.value()};
      best_score = score;
      best_social = alt.social;
      best_id = alt.id;
      found = true;
    }
  }
  if (!found) throw AllBannedError(individual.id);
  return best;
}

/**
 * @brief Welfare, expenses, utility change and disutility of a policy.
 *
 * Only the induced choices matter: expenses count the transfer of the chosen
 * alternative, the utility change compares u + t with the default utility,
 * and the disutility is expenses - utility_change. The disutility of any
 * policy is nonnegative, because each individual could keep her default.
 */
inline PolicyEvaluation evaluate(const Instance &instance,
                                 const Policy &policy) {
  PolicyEvaluation out;
  out.choices.reserve(instance.individuals.size());
  for (const Individual &individual : instance.individuals) {
    const std::size_t d = default_alternative(individual);
    const Alternative &def = individual.alternatives[d];
    const ChoiceOutcome chosen = choose(individual, policy);
    const auto it = std::find_if(
        individual.alternatives.begin(), individual.alternatives.end(),
        [&](const Alternative &a) { return a.id == chosen.alternative; });
    assert(it != individual.alternatives.end());
    out.welfare += it->social;
    out.baseline_welfare += def.social;
    out.expenses += chosen.transfer;
    // Same advantage scale as choose(), so an individual paid exactly to
    // indifference contributes exactly zero.
    out.utility_change += (it->utility - def.utility) + chosen.transfer;
    out.choices.push_back(chosen.alternative);
  }
  out.welfare_gain = out.welfare - out.baseline_welfare;
  out.disutility = out.expenses - out.utility_change;
  return out;
}

/**
 * @brief Drop alternatives that no policy of interest would ever induce.
 *
 * j is removed when some j' has social(j') >= social(j) and a strictly
 * larger utility: inducing j' is then at least as good for everyone. The
 * default survives (nothing has strictly larger utility), and optima are
 * unchanged.
 */
inline Instance strip_pareto_dominated(Instance instance) {
  for (Individual &individual : instance.individuals) {
    auto &alts = individual.alternatives;
    std::vector<Alternative> kept;
    kept.reserve(alts.size());
    for (const Alternative &a : alts) {
      const bool dominated = std::any_of(
          alts.begin(), alts.end(), [&](const Alternative &b) {
            return b.social >= a.social && b.utility > a.utility;
          });
      if (!dominated) kept.push_back(a);
    }
    alts = std::move(kept);
  }
  return instance;
}

/// One defect found by validate_instance().
struct ValidationIssue {
  enum class Code {
    kEmptyChoiceSet,
    kDuplicateIndividualId,
    kDuplicateAlternativeId,
    kIdenticalAlternatives,
    kNonFiniteValue,
  };

  Code code;
  std::int32_t individual_id;
  std::int32_t alternative_id;  // -1 when the issue is not about one alternative
  std::string message;
};

/// All structural defects of @p instance; empty means well-formed.
inline std::vector<ValidationIssue> validate_instance(
    const Instance &instance) {
  std::vector<ValidationIssue> issues;
  std::vector<std::int32_t> individual_ids;
  individual_ids.reserve(instance.individuals.size());
  for (const Individual &individual : instance.individuals) {
    individual_ids.push_back(individual.id);
    if (individual.alternatives.empty()) {
      issues.push_back({ValidationIssue::Code::kEmptyChoiceSet, individual.id,
                        -1, "empty choice set"});
    }
    std::vector<std::int32_t> alt_ids;
    alt_ids.reserve(individual.alternatives.size());
    for (const Alternative &a : individual.alternatives) {
      alt_ids.push_back(a.id);
      if (!std::isfinite(a.utility) || !std::isfinite(a.social)) {
        issues.push_back({ValidationIssue::Code::kNonFiniteValue,
                          individual.id, a.id, "non-finite utility or social"});
      }
    }
    std::sort(alt_ids.begin(), alt_ids.end());
    for (std::size_t j = 1; j < alt_ids.size(); ++j) {
      if (alt_ids[j] == alt_ids[j - 1]) {
        issues.push_back({ValidationIssue::Code::kDuplicateAlternativeId,
                          individual.id, alt_ids[j],
                          "duplicate alternative id"});
      }
    }
    const auto &alts = individual.alternatives;
    for (std::size_t a = 0; a < alts.size(); ++a) {
      for (std::size_t b = a + 1; b < alts.size(); ++b) {
        if (alts[a].utility == alts[b].utility &&
            alts[a].social == alts[b].social) {
          issues.push_back({ValidationIssue::Code::kIdenticalAlternatives,
                            individual.id, alts[b].id,
                            "identical utility and social as alternative " +
                                std::to_string(alts[a].id)});
        }
      }
    }
  }
  std::sort(individual_ids.begin(), individual_ids.end());
  for (std::size_t i = 1; i < individual_ids.size(); ++i) {
    if (individual_ids[i] == individual_ids[i - 1]) {
      issues.push_back({ValidationIssue::Code::kDuplicateIndividualId,
                        individual_ids[i], -1, "duplicate individual id"});
    }
  }
  return issues;
}

}  // namespace incentive
