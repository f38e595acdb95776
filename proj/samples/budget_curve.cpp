// Trace the welfare frontier for a small synthetic population and show how
// a finished run extends in place when more budget arrives.

#include <algorithm>
#include <iostream>

#include "incentive/incentive.hpp"

int main() {
  using namespace incentive;

  ScenarioConfig config = default_scenario_config();
  config.n_individuals = 40;
  config.seed = 7;
  const Instance instance = generate(config).instance;

  const double budget = 200.0;
  const GreedyResult run = solve(instance, budget);
  const WelfareCurve curve = welfare_curve(run);

  std::cout << "welfare curve up to " << format_double(budget) << " "
            << instance.money_unit << ":\n"
            << curve_csv_text(curve);
  std::cout << "welfare at a spend of 100: "
            << format_double(curve_query(curve, 100.0)) << " "
            << instance.welfare_unit << "\n";
  std::cout << "distance to the optimum: at most "
            << format_double(optimality_gap_bound(run)) << " "
            << instance.welfare_unit << "\n";

  const GreedyResult extended = resume(run, instance, 2.0 * budget);
  std::cout << "resumed at " << format_double(2.0 * budget)
            << ": welfare gain " << format_double(extended.welfare_gain)
            << " after " << extended.iterations.size() << " steps\n";
  return 0;
}
