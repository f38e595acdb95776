// Shared test fixtures and small generators.

#pragma once

#include <string>
#include <vector>

#include "incentive/concavize.hpp"
#include "incentive/rng.hpp"
#include "incentive/types.hpp"

namespace fixtures {

/// Two commuters, three options each. Worked through by hand in most test
/// files: chains are {b, c} at efficiencies {2, 2/3} for the first individual
/// and {f} at 4/3 for the second, so every breakpoint is easy to audit.
inline incentive::Instance two_commuters() {
  incentive::Instance instance;
  instance.individuals = {
      {1,
       {
           {1, 10.0, 0.0},  // default
           {2, 8.0, 4.0},   // weight 2
           {3, 5.0, 6.0},   // weight 5
       }},
      {2,
       {
           {1, 10.0, 1.0},  // default
           {2, 9.0, 2.0},   // weight 1, LP-dominated
           {3, 4.0, 9.0},   // weight 6
       }},
  };
  return instance;
}

/// Random instance with integer utilities and socials in [0, hi]. Repeated
/// values are likely on purpose; ties exercise every tie-break rule.
inline incentive::Instance random_integer_instance(incentive::Rng &rng,
                                                   int max_individuals,
                                                   int max_alternatives,
                                                   int hi = 20) {
  incentive::Instance instance;
  const auto n = static_cast<int>(rng.uniform_int(1, max_individuals));
  for (int i = 0; i < n; ++i) {
    incentive::Individual individual;
    individual.id = i + 1;
    const auto m = static_cast<int>(rng.uniform_int(1, max_alternatives));
    for (int j = 0; j < m; ++j) {
      incentive::Alternative a;
      a.id = j + 1;
      a.utility = static_cast<double>(rng.uniform_int(0, hi));
      a.social = static_cast<double>(rng.uniform_int(0, hi));
      individual.alternatives.push_back(a);
    }
    instance.individuals.push_back(std::move(individual));
  }
  return instance;
}

/// Random instance with continuous values: ties have probability zero.
inline incentive::Instance random_real_instance(incentive::Rng &rng,
                                                int max_individuals,
                                                int max_alternatives) {
  incentive::Instance instance;
  const auto n = static_cast<int>(rng.uniform_int(1, max_individuals));
  for (int i = 0; i < n; ++i) {
    incentive::Individual individual;
    individual.id = i + 1;
    const auto m = static_cast<int>(rng.uniform_int(1, max_alternatives));
    for (int j = 0; j < m; ++j) {
      incentive::Alternative a;
      a.id = j + 1;
      a.utility = rng.uniform(0.0, 20.0);
      a.social = rng.uniform(0.0, 20.0);
      individual.alternatives.push_back(a);
    }
    instance.individuals.push_back(std::move(individual));
  }
  return instance;
}

/// Total chain weight: the spend that buys every step of every individual.
inline double total_chain_weight(const incentive::Instance &instance) {
  double total = 0.0;
  for (const incentive::LpExtremeChain &chain :
       incentive::build_chains(instance)) {
    if (!chain.entries.empty()) total += chain.entries.back().weight;
  }
  return total;
}

}  // namespace fixtures
