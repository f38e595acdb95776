#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <string>

#include "incentive/greedy.hpp"
#include "incentive/io.hpp"
#include "incentive/policies.hpp"
#include "incentive/scenario.hpp"

#include "fixtures.hpp"

using namespace incentive;

namespace {

std::string temp_path(const std::string &name) {
  static const std::filesystem::path dir = [] {
    const auto d = std::filesystem::temp_directory_path() / "incentive_io";
    std::filesystem::create_directories(d);
    return d;
  }();
  return (dir / name).string();
}

std::string slurp(const std::string &path) { return detail::read_file(path); }

}  // namespace

TEST_CASE("instance files round-trip byte for byte") {
  const Instance original = fixtures::two_commuters();
  const std::string first = temp_path("instance_a.json");
  const std::string second = temp_path("instance_b.json");

  save_instance(original, first);
  const Instance loaded = load_instance(first);
  save_instance(loaded, second);
  CHECK(slurp(first) == slurp(second));

  REQUIRE(loaded.individuals.size() == 2);
  CHECK(loaded.money_unit == original.money_unit);
  CHECK(loaded.welfare_unit == original.welfare_unit);
  for (std::size_t i = 0; i < 2; ++i) {
    const Individual &a = original.individuals[i];
    const Individual &b = loaded.individuals[i];
    REQUIRE(a.alternatives.size() == b.alternatives.size());
    CHECK(a.id == b.id);
    for (std::size_t j = 0; j < a.alternatives.size(); ++j) {
      CHECK(a.alternatives[j].id == b.alternatives[j].id);
      CHECK(a.alternatives[j].utility == b.alternatives[j].utility);
      CHECK(a.alternatives[j].social == b.alternatives[j].social);
    }
  }
}

TEST_CASE("policy files round-trip and keep bans distinct") {
  Policy policy;
  policy.set_amount(2, 3, 6.5);
  policy.set_amount(1, 2, 2.0);
  policy.ban(1, 1);

  const std::string first = temp_path("policy_a.json");
  const std::string second = temp_path("policy_b.json");
  save_policy(policy, first);
  const Policy loaded = load_policy(first);
  save_policy(loaded, second);
  CHECK(slurp(first) == slurp(second));

  CHECK(loaded.size() == 3);
  CHECK(loaded.transfer(1, 1).is_banned());
  CHECK(loaded.transfer(1, 2).value() == 2.0);
  CHECK(loaded.transfer(2, 3).value() == 6.5);
  CHECK(loaded.transfer(9, 9).value() == 0.0);

  // Rows are sorted by (individual, alternative), so the ban comes first.
  const std::string text = slurp(first);
  CHECK(text.find("\"banned\": true") < text.find("\"amount\": 2"));
  CHECK(text.find("\"amount\": 2") < text.find("\"amount\": 6.5"));
}

TEST_CASE("syntax errors carry line and column") {
  const std::string path = temp_path("broken.json");
  detail::write_file(path, "{\n  \"x\": }\n");
  try {
    load_instance(path);
    FAIL("expected FileParseError");
  } catch (const FileParseError &error) {
    CHECK(error.line == 2);
    CHECK(error.column == 8);
    CHECK(std::string(error.what()).find(path) != std::string::npos);
  }
}

TEST_CASE("layout violations are schema errors") {
  const std::string path = temp_path("schema.json");

  detail::write_file(
      path, "{\"money_unit\": \"EUR\", \"individuals\": []}\n");
  CHECK_THROWS_AS(load_instance(path), SchemaError);  // welfare_unit missing

  detail::write_file(path,
                     "{\"money_unit\": \"EUR\", \"welfare_unit\": \"kg\","
                     " \"individuals\": [{\"id\": 1, \"alternatives\":"
                     " [{\"id\": 1, \"utility\": \"high\", \"social\": 0}]}]}");
  CHECK_THROWS_AS(load_instance(path), SchemaError);

  detail::write_file(path,
                     "{\"transfers\": [{\"individual\": 1, \"alternative\": 2,"
                     " \"banned\": false}]}");
  CHECK_THROWS_AS(load_policy(path), SchemaError);

  detail::write_file(
      path, "{\"transfers\": [{\"individual\": 1, \"alternative\": 2}]}");
  CHECK_THROWS_AS(load_policy(path), SchemaError);
}

TEST_CASE("missing and unwritable paths are io errors") {
  CHECK_THROWS_AS(load_instance(temp_path("no_such_file.json")), IoError);
  CHECK_THROWS_AS(load_policy(temp_path("no_such_file.json")), IoError);

  const std::string blocker = temp_path("not_a_dir");
  detail::write_file(blocker, "plain file\n");
  CHECK_THROWS_AS(save_instance(fixtures::two_commuters(),
                                blocker + "/instance.json"),
                  IoError);
}

TEST_CASE("curve files round-trip byte for byte") {
  const WelfareCurve curve = welfare_curve(solve(fixtures::two_commuters(), 11));
  const std::string first = temp_path("curve_a.csv");
  const std::string second = temp_path("curve_b.csv");

  write_curve_csv(curve, first);
  CHECK(slurp(first) ==
        "spend,welfare_gain\n0,0\n2,4\n8,12\n11,14\n");

  const WelfareCurve loaded = read_curve_csv(first);
  write_curve_csv(loaded, second);
  CHECK(slurp(first) == slurp(second));
  CHECK(loaded.budget == 11.0);
  REQUIRE(loaded.points.size() == 4);
  CHECK(loaded.points[2].spend == 8.0);
  CHECK(loaded.points[2].welfare_gain == 12.0);
}

TEST_CASE("curve files reject malformed rows") {
  const std::string path = temp_path("curve_bad.csv");

  detail::write_file(path, "spend,gain\n1,2\n");
  CHECK_THROWS_AS(read_curve_csv(path), SchemaError);

  detail::write_file(path, "spend,welfare_gain\n");
  CHECK_THROWS_AS(read_curve_csv(path), SchemaError);  // no rows

  detail::write_file(path, "spend,welfare_gain\n1;2\n");
  try {
    read_curve_csv(path);
    FAIL("expected FileParseError");
  } catch (const FileParseError &error) {
    CHECK(error.line == 2);
    CHECK(error.column == 1);
  }

  detail::write_file(path, "spend,welfare_gain\n1,abc\n");
  try {
    read_curve_csv(path);
    FAIL("expected FileParseError");
  } catch (const FileParseError &error) {
    CHECK(error.line == 2);
    CHECK(error.column == 3);
  }

  detail::write_file(path, "spend,welfare_gain\n0,0\nxyz,1\n");
  try {
    read_curve_csv(path);
    FAIL("expected FileParseError");
  } catch (const FileParseError &error) {
    CHECK(error.line == 3);
    CHECK(error.column == 1);
  }
}

TEST_CASE("iteration log and chain dumps match the worked example") {
  const Instance instance = fixtures::two_commuters();

  const std::string log_path = temp_path("iterations.csv");
  write_iteration_log_csv(solve(instance, 11), log_path);
  CHECK(slurp(log_path) ==
        "k,individual,alternative,incr_weight,incr_social,incr_efficiency,"
        "tot_incentive,welfare_gain\n"
        "1,1,2,2,4,2,2,4\n"
        "2,2,3,6,8,1.3333333333333333,8,12\n"
        "3,1,3,3,2,0.6666666666666666,11,14\n");

  const std::string chains_path = temp_path("chains.csv");
  write_chains_csv(build_chains(instance), chains_path);
  CHECK(slurp(chains_path) ==
        "individual,alternative,weight,social,incr_efficiency\n"
        "1,1,0,0,inf\n"
        "1,2,2,4,2\n"
        "1,3,5,6,0.6666666666666666\n"
        "2,1,0,1,inf\n"
        "2,3,6,9,1.3333333333333333\n");
}

TEST_CASE("comparison tables serialize one row per policy") {
  std::vector<ComparisonRow> rows(2);
  rows[0] = {"personalized", 8.0, 0.0, 8.0, 12.0};
  rows[1] = {"enforcement", 0.0, -8.0, 8.0, 12.0};
  const std::string path = temp_path("comparison.csv");
  write_comparison_csv(rows, path);
  CHECK(slurp(path) ==
        "policy,expenses,utility_change,disutility,welfare_gain\n"
        "personalized,8,0,8,12\n"
        "enforcement,0,-8,8,12\n");
}

TEST_CASE("simulation reports serialize every headline number") {
  SimulationReport report;
  report.budget = 5.0;
  report.budget_spent = 2.5;
  report.proposals = 3;
  report.accepted = 2;
  report.acceptance_rate = 2.0 / 3.0;
  report.welfare_gain = 7.0;

  const std::string path = temp_path("report.json");
  write_simulation_report(report, path);

  const std::string text = slurp(path);
  CHECK(text.back() == '\n');
  const detail::Json doc = detail::Json::parse(text);
  CHECK(doc.at("budget").get<double>() == 5.0);
  CHECK(doc.at("budget_spent").get<double>() == 2.5);
  CHECK(doc.at("proposals").get<std::int64_t>() == 3);
  CHECK(doc.at("accepted").get<std::int64_t>() == 2);
  CHECK(doc.at("acceptance_rate").get<double>() == 2.0 / 3.0);
  CHECK(doc.at("welfare_gain").get<double>() == 7.0);
  CHECK(text.find("\"budget\"") < text.find("\"budget_spent\""));
  CHECK(text.find("\"proposals\"") < text.find("\"accepted\""));
}

TEST_CASE("scenario configs round-trip byte for byte") {
  const ScenarioConfig original = default_scenario_config();
  const std::string first = temp_path("config_a.json");
  const std::string second = temp_path("config_b.json");

  save_scenario_config(original, first);
  const ScenarioConfig loaded = load_scenario_config(first);
  save_scenario_config(loaded, second);
  CHECK(slurp(first) == slurp(second));

  CHECK(loaded.n_individuals == original.n_individuals);
  CHECK(loaded.seed == original.seed);
  CHECK(loaded.scale == original.scale);
  CHECK(loaded.transit_availability == original.transit_availability);
  REQUIRE(loaded.modes.size() == original.modes.size());
  CHECK(loaded.modes[1].name == "transit");
  CHECK(loaded.modes[1].constant == original.modes[1].constant);
  REQUIRE(loaded.occupations.size() == original.occupations.size());
  CHECK(loaded.occupations[3].mode_effects == original.occupations[3].mode_effects);
  CHECK(loaded.population.cars_per_worker_probs ==
        original.population.cars_per_worker_probs);
  CHECK(loaded.population.distance_log_mean ==
        original.population.distance_log_mean);

  // A config that generates must load back into one that generates the
  // same population.
  ScenarioConfig small = loaded;
  small.n_individuals = 50;
  ScenarioConfig small_direct = default_scenario_config();
  small_direct.n_individuals = 50;
  const ScenarioOutput a = generate(small);
  const ScenarioOutput b = generate(small_direct);
  for (std::size_t i = 0; i < 50; ++i) {
    REQUIRE(a.instance.individuals[i].alternatives.size() ==
            b.instance.individuals[i].alternatives.size());
    for (std::size_t j = 0; j < a.instance.individuals[i].alternatives.size();
         ++j) {
      CHECK(a.instance.individuals[i].alternatives[j].utility ==
            b.instance.individuals[i].alternatives[j].utility);
    }
  }
}
