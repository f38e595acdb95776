/**
 * Command-line front end for batch studies: generate synthetic populations,
 * allocate budgets, compare policy families, simulate imperfect information
 * and run the randomized self-check.
 *
 * Exit codes: 0 success, 2 usage or configuration error, 3 I/O error,
 * 4 property-suite failure. All output is deterministic given the inputs
 * and seeds; numbers print in shortest round-trip form.
 */

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "incentive/incentive.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kIoFailure = 3;
constexpr int kVerifyFailure = 4;

int fail_usage(const std::string &message) {
  std::cerr << "error: " << message << "\n";
  return kUsageError;
}

int fail_io(const std::string &message) {
  std::cerr << "error: " << message << "\n";
  return kIoFailure;
}

struct GenerateArgs {
  std::string config_path;
  std::string out_path;
  std::string config_out_path;
  std::optional<std::int64_t> individuals;
  std::optional<std::uint64_t> seed;
};

int run_generate(const GenerateArgs &args) {
  incentive::ScenarioConfig config;
  try {
    config = args.config_path.empty()
                 ? incentive::default_scenario_config()
                 : incentive::load_scenario_config(args.config_path);
  } catch (const incentive::IoError &error) {
    return fail_io(error.what());
  } catch (const incentive::Error &error) {
    return fail_usage(error.what());  // malformed config
  }
  if (args.individuals) config.n_individuals = *args.individuals;
  if (args.seed) config.seed = *args.seed;

  try {
    const incentive::ScenarioOutput out = incentive::generate(config);
    incentive::save_instance(out.instance, args.out_path);
    if (!args.config_out_path.empty()) {
      incentive::save_scenario_config(config, args.config_out_path);
    }
    std::cout << "generated " << out.instance.individuals.size()
              << " individuals\n"
              << "wrote " << args.out_path << "\n";
  } catch (const incentive::IoError &error) {
    return fail_io(error.what());
  } catch (const incentive::Error &error) {
    return fail_usage(error.what());
  }
  return 0;
}

struct SolveArgs {
  std::string instance_path;
  std::optional<double> budget;
  std::optional<double> target_inverse;
  std::string criterion = "overall";
  std::string curve_out;
  std::string policy_out;
  std::string log_out;
  std::string chains_out;
};

int run_solve_like(const SolveArgs &args, bool curve_to_stdout) {
  incentive::Instance instance;
  try {
    instance = incentive::load_instance(args.instance_path);
  } catch (const incentive::Error &error) {
    return fail_io(error.what());
  }

  if (args.budget.has_value() == args.target_inverse.has_value()) {
    return fail_usage(
        "give exactly one of --budget and --target-inverse-efficiency");
  }

  try {
    const incentive::GreedyResult result =
        args.budget
            ? incentive::solve(instance, *args.budget)
            : incentive::solve_until_inverse_efficiency(
                  instance, *args.target_inverse,
                  args.criterion == "incremental"
                      ? incentive::StoppingCriterion::kIncremental
                      : incentive::StoppingCriterion::kOverall);

    if (curve_to_stdout) {
      const incentive::WelfareCurve curve = incentive::welfare_curve(result);
      if (args.curve_out.empty()) {
        std::cout << incentive::curve_csv_text(curve);
      } else {
        incentive::write_curve_csv(curve, args.curve_out);
        std::cout << "wrote " << args.curve_out << "\n";
      }
      return 0;
    }

    std::cout << "individuals: " << instance.individuals.size() << "\n"
              << "budget: " << incentive::format_double(result.budget) << "\n"
              << "budget used: "
              << incentive::format_double(result.budget_used) << "\n"
              << "welfare gain: "
              << incentive::format_double(result.welfare_gain) << "\n"
              << "iterations: " << result.iterations.size() << "\n"
              << "split efficiency: "
              << incentive::format_double(
                     incentive::characteristic_incr_efficiency(result))
              << "\n"
              << "optimality gap bound: "
              << incentive::format_double(
                     incentive::optimality_gap_bound(result))
              << "\n";

    if (!args.curve_out.empty()) {
      incentive::write_curve_csv(incentive::welfare_curve(result),
                                 args.curve_out);
      std::cout << "wrote " << args.curve_out << "\n";
    }
    if (!args.policy_out.empty()) {
      incentive::save_policy(incentive::personalized_incentive_policy(result),
                             args.policy_out);
      std::cout << "wrote " << args.policy_out << "\n";
    }
    if (!args.log_out.empty()) {
      incentive::write_iteration_log_csv(result, args.log_out);
      std::cout << "wrote " << args.log_out << "\n";
    }
    if (!args.chains_out.empty()) {
      incentive::write_chains_csv(incentive::build_chains(instance),
                                  args.chains_out);
      std::cout << "wrote " << args.chains_out << "\n";
    }
  } catch (const incentive::IoError &error) {
    return fail_io(error.what());
  } catch (const incentive::Error &error) {
    return fail_usage(error.what());
  }
  return 0;
}

struct CompareArgs {
  std::string instance_path;
  double budget = 0.0;
  std::string out_path;
};

int run_compare(const CompareArgs &args) {
  incentive::Instance instance;
  try {
    instance = incentive::load_instance(args.instance_path);
  } catch (const incentive::Error &error) {
    return fail_io(error.what());
  }
  try {
    const incentive::GreedyResult result =
        incentive::solve(instance, args.budget);
    const std::vector<incentive::ComparisonRow> rows =
        incentive::compare(instance, result);
    std::cout << incentive::comparison_csv_text(rows);
    if (!args.out_path.empty()) {
      incentive::write_comparison_csv(rows, args.out_path);
    }
  } catch (const incentive::IoError &error) {
    return fail_io(error.what());
  } catch (const incentive::Error &error) {
    return fail_usage(error.what());
  }
  return 0;
}

struct SimulateArgs {
  std::string instance_path;
  std::string config_path;
  std::string out_path;
  double budget = 0.0;
  std::optional<double> mu;
  std::uint64_t seed = 1;
};

/// Planner view with the noise pinned to zero: utilities exactly known.
/// The positive scale only prices the offers; by construction every
/// proposal is accepted at indifference.
incentive::StochasticInstance exact_knowledge_view(
    const incentive::Instance &instance) {
  incentive::StochasticInstance out;
  out.money_unit = instance.money_unit;
  out.welfare_unit = instance.welfare_unit;
  out.scale = 1e-9;
  out.individuals.reserve(instance.individuals.size());
  for (const incentive::Individual &individual : instance.individuals) {
    incentive::StochasticIndividual si;
    si.id = individual.id;
    si.alternatives.reserve(individual.alternatives.size());
    for (const incentive::Alternative &a : individual.alternatives) {
      si.alternatives.push_back({a.id, a.utility, a.social, 0.0});
    }
    out.individuals.push_back(std::move(si));
  }
  return out;
}

int run_simulate(const SimulateArgs &args) {
  incentive::Instance instance;
  incentive::StochasticInstance stochastic;

  if (!args.config_path.empty()) {
    incentive::ScenarioConfig config;
    try {
      config = incentive::load_scenario_config(args.config_path);
    } catch (const incentive::IoError &error) {
      return fail_io(error.what());
    } catch (const incentive::Error &error) {
      return fail_usage(error.what());
    }
    try {
      incentive::ScenarioOutput out = incentive::generate(config);
      instance = std::move(out.instance);
      stochastic = std::move(out.stochastic);
    } catch (const incentive::Error &error) {
      return fail_usage(error.what());
    }
  } else if (!args.instance_path.empty()) {
    try {
      instance = incentive::load_instance(args.instance_path);
    } catch (const incentive::Error &error) {
      return fail_io(error.what());
    }
    if (!args.mu) {
      return fail_usage("--mu is required with --instance");
    }
    try {
      stochastic = *args.mu == 0.0
                       ? exact_knowledge_view(instance)
                       : incentive::make_stochastic(instance, *args.mu,
                                                    args.seed);
    } catch (const incentive::Error &error) {
      return fail_usage(error.what());
    }
  } else {
    return fail_usage("give one of --instance and --config");
  }

  try {
    const incentive::GreedyResult perfect =
        incentive::solve(instance, args.budget);
    const incentive::SimulationReport report =
        incentive::simulate_sequential(stochastic, args.budget);

    std::cout << "budget: " << incentive::format_double(args.budget) << "\n"
              << "perfect: spend "
              << incentive::format_double(perfect.budget_used)
              << ", welfare gain "
              << incentive::format_double(perfect.welfare_gain) << "\n"
              << "imperfect: spend "
              << incentive::format_double(report.budget_spent)
              << ", welfare gain "
              << incentive::format_double(report.welfare_gain)
              << ", proposals " << report.proposals << ", accepted "
              << report.accepted << ", acceptance rate "
              << incentive::format_double(report.acceptance_rate) << "\n";

    if (!args.out_path.empty()) {
      incentive::write_simulation_report(report, args.out_path);
      std::cout << "wrote " << args.out_path << "\n";
    }
  } catch (const incentive::IoError &error) {
    return fail_io(error.what());
  } catch (const incentive::Error &error) {
    return fail_usage(error.what());
  }
  return 0;
}

int run_verify(const incentive::SelfCheckConfig &config) {
  const incentive::SelfCheckReport report = incentive::run_self_check(config);
  for (const incentive::PropertyReport &property : report.properties) {
    std::cout << "property " << property.name << ": " << property.checks
              << " checks, " << property.failures << " failures\n";
    if (property.failures > 0 && !property.first_failure.empty()) {
      std::cout << "  first failure: " << property.first_failure << "\n";
    }
  }
  std::cout << (report.all_passed ? "self-check passed\n"
                                  : "self-check FAILED\n");
  return report.all_passed ? 0 : kVerifyFailure;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Budget-constrained incentive allocation over discrete choices"};
  app.require_subcommand(1);

  GenerateArgs generate_args;
  CLI::App *generate_cmd = app.add_subcommand(
      "generate", "Generate a synthetic commuting instance");
  generate_cmd->add_option("-c,--config", generate_args.config_path,
                           "Scenario config JSON (omit for the built-in one)");
  generate_cmd
      ->add_option("-o,--out", generate_args.out_path, "Instance JSON to write")
      ->required();
  generate_cmd->add_option("-n,--individuals", generate_args.individuals,
                           "Override the config's population size");
  generate_cmd->add_option("-s,--seed", generate_args.seed,
                           "Override the config's seed");
  generate_cmd->add_option("--config-out", generate_args.config_out_path,
                           "Also write the effective config JSON");

  SolveArgs solve_args;
  CLI::App *solve_cmd = app.add_subcommand(
      "solve", "Allocate a budget and print the greedy summary");
  solve_cmd->add_option("instance", solve_args.instance_path, "Instance JSON")
      ->required();
  solve_cmd->add_option("-b,--budget", solve_args.budget, "Incentive budget");
  solve_cmd->add_option("-t,--target-inverse-efficiency",
                        solve_args.target_inverse,
                        "Stop before the inverse efficiency exceeds this");
  solve_cmd
      ->add_option("--criterion", solve_args.criterion,
                   "Which inverse efficiency the target bounds")
      ->check(CLI::IsMember({"overall", "incremental"}));
  solve_cmd->add_option("--curve-out", solve_args.curve_out,
                        "Write the spend-to-welfare curve CSV here");
  solve_cmd->add_option("--policy-out", solve_args.policy_out,
                        "Write the personalized incentive policy JSON here");
  solve_cmd->add_option("--log-out", solve_args.log_out,
                        "Write the per-iteration log CSV here");
  solve_cmd->add_option("--chains-out", solve_args.chains_out,
                        "Write the per-individual chain CSV here");

  SolveArgs curve_args;
  CLI::App *curve_cmd = app.add_subcommand(
      "curve", "Like solve, but emit only the spend-to-welfare curve");
  curve_cmd->add_option("instance", curve_args.instance_path, "Instance JSON")
      ->required();
  curve_cmd->add_option("-b,--budget", curve_args.budget, "Incentive budget");
  curve_cmd->add_option("-t,--target-inverse-efficiency",
                        curve_args.target_inverse,
                        "Stop before the inverse efficiency exceeds this");
  curve_cmd
      ->add_option("--criterion", curve_args.criterion,
                   "Which inverse efficiency the target bounds")
      ->check(CLI::IsMember({"overall", "incremental"}));
  curve_cmd->add_option("-o,--out", curve_args.curve_out,
                        "Curve CSV path (omit to print to stdout)");

  CompareArgs compare_args;
  CLI::App *compare_cmd = app.add_subcommand(
      "compare", "Cost sheets of the four policy families at one budget");
  compare_cmd
      ->add_option("instance", compare_args.instance_path, "Instance JSON")
      ->required();
  compare_cmd->add_option("-b,--budget", compare_args.budget, "Incentive budget")
      ->required();
  compare_cmd->add_option("-o,--out", compare_args.out_path,
                          "Also write the table CSV here");

  SimulateArgs simulate_args;
  CLI::App *simulate_cmd = app.add_subcommand(
      "simulate-imperfect",
      "Play expected-incentive offers against latent utility noise");
  CLI::Option *sim_instance = simulate_cmd->add_option(
      "-i,--instance", simulate_args.instance_path,
      "Instance JSON; utilities are treated as estimates");
  CLI::Option *sim_config = simulate_cmd->add_option(
      "-c,--config", simulate_args.config_path,
      "Scenario config JSON; simulates on its generated population");
  sim_instance->excludes(sim_config);
  sim_config->excludes(sim_instance);
  simulate_cmd
      ->add_option("-b,--budget", simulate_args.budget, "Incentive budget")
      ->required();
  simulate_cmd->add_option(
      "--mu", simulate_args.mu,
      "Gumbel noise scale for --instance; 0 plays exactly known utilities");
  simulate_cmd->add_option("-s,--seed", simulate_args.seed,
                           "Seed for the latent draws");
  simulate_cmd->add_option("-o,--out", simulate_args.out_path,
                           "Simulation report JSON");

  incentive::SelfCheckConfig verify_config;
  CLI::App *verify_cmd =
      app.add_subcommand("verify", "Run the randomized property suite");
  verify_cmd->add_option("--n-instances", verify_config.n_instances,
                         "Number of random instances");
  verify_cmd->add_option("--max-individuals", verify_config.max_individuals,
                         "Largest population size drawn");
  verify_cmd->add_option("--max-alts", verify_config.max_alternatives,
                         "Largest choice-set size drawn");
  verify_cmd->add_option("--seed", verify_config.seed, "Corpus seed");
  verify_cmd->add_flag(
      "--inject-fault", verify_config.inject_fault,
      "Negative control: run the solver with a deliberately wrong item order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &help) {
    return app.exit(help);
  } catch (const CLI::CallForAllHelp &help) {
    return app.exit(help);
  } catch (const CLI::ParseError &error) {
    app.exit(error);
    return kUsageError;
  }

  if (generate_cmd->parsed()) return run_generate(generate_args);
  if (solve_cmd->parsed()) return run_solve_like(solve_args, false);
  if (curve_cmd->parsed()) return run_solve_like(curve_args, true);
  if (compare_cmd->parsed()) return run_compare(compare_args);
  if (simulate_cmd->parsed()) return run_simulate(simulate_args);
  if (verify_cmd->parsed()) return run_verify(verify_config);
  return kUsageError;
}
