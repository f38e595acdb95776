// Compare the personalized allocation against enforcement, a proportional
// tax-subsidy rule, and a first-come-first-served subsidy counter, then
// check how much of the planned gain survives imperfect information.

#include <iostream>

#include "incentive/incentive.hpp"

int main() {
  using namespace incentive;

  ScenarioConfig config = default_scenario_config();
  config.n_individuals = 500;
  config.seed = 11;
  const ScenarioOutput scenario = generate(config);

  const double budget = 300.0;
  const GreedyResult run = solve(scenario.instance, budget);
  std::cout << comparison_csv_text(compare(scenario.instance, run));

  const SimulationReport played = simulate_sequential(scenario.stochastic, budget);
  std::cout << "\nsequential offers under imperfect information:\n"
            << "  proposals " << played.proposals << ", accepted "
            << played.accepted << " (rate "
            << format_double(played.acceptance_rate) << ")\n"
            << "  spend " << format_double(played.budget_spent) << " of "
            << format_double(budget) << " " << scenario.instance.money_unit
            << "\n"
            << "  welfare gain " << format_double(played.welfare_gain)
            << " against " << format_double(run.welfare_gain) << " planned "
            << scenario.instance.welfare_unit << "\n";
  return 0;
}
