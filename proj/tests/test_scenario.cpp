#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "incentive/model.hpp"
#include "incentive/scenario.hpp"

using namespace incentive;

namespace {

ScenarioConfig small_config(std::int64_t n, std::uint64_t seed = 1) {
  ScenarioConfig config = default_scenario_config();
  config.n_individuals = n;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("generation is reproducible and prefix-stable") {
  const ScenarioOutput a = generate(small_config(300));
  const ScenarioOutput b = generate(small_config(300));
  const ScenarioOutput prefix = generate(small_config(120));

  REQUIRE(a.instance.individuals.size() == 300);
  for (std::size_t i = 0; i < 300; ++i) {
    const Individual &x = a.instance.individuals[i];
    const Individual &y = b.instance.individuals[i];
    REQUIRE(x.alternatives.size() == y.alternatives.size());
    for (std::size_t j = 0; j < x.alternatives.size(); ++j) {
      CHECK(x.alternatives[j].utility == y.alternatives[j].utility);
      CHECK(x.alternatives[j].social == y.alternatives[j].social);
    }
  }
  // Every individual draws from her own substream: a shorter run is a
  // prefix of a longer one, and the thread count can never matter.
  for (std::size_t i = 0; i < 120; ++i) {
    const Individual &x = a.instance.individuals[i];
    const Individual &y = prefix.instance.individuals[i];
    REQUIRE(x.alternatives.size() == y.alternatives.size());
    for (std::size_t j = 0; j < x.alternatives.size(); ++j) {
      CHECK(x.alternatives[j].utility == y.alternatives[j].utility);
    }
  }

  const ScenarioOutput other_seed = generate(small_config(300, 2));
  bool any_difference = false;
  for (std::size_t i = 0; i < 300 && !any_difference; ++i) {
    if (other_seed.instance.individuals[i].alternatives[0].utility !=
        a.instance.individuals[i].alternatives[0].utility) {
      any_difference = true;
    }
  }
  CHECK(any_difference);
}

TEST_CASE("both views agree and defaults sit at social zero") {
  const ScenarioOutput out = generate(small_config(2000));
  CHECK(validate_instance(out.instance).empty());

  for (std::size_t i = 0; i < out.instance.individuals.size(); ++i) {
    const Individual &individual = out.instance.individuals[i];
    const StochasticIndividual &stochastic = out.stochastic.individuals[i];
    REQUIRE(individual.alternatives.size() == stochastic.alternatives.size());
    for (std::size_t j = 0; j < individual.alternatives.size(); ++j) {
      const StochasticAlternative &s = stochastic.alternatives[j];
      CHECK(individual.alternatives[j].utility == s.utility + s.noise);
      CHECK(individual.alternatives[j].social == s.social);
    }
    const std::size_t d = default_alternative(individual);
    CHECK(individual.alternatives[d].social == 0.0);
    CHECK(realized_default(stochastic) == d);
  }
}

TEST_CASE("only one zero-emission mode survives per choice set") {
  const ScenarioOutput out = generate(small_config(3000));
  for (const Individual &individual : out.instance.individuals) {
    bool walking = false, cycling = false;
    for (const Alternative &a : individual.alternatives) {
      if (a.id == 2) walking = true;
      if (a.id == 3) cycling = true;
    }
    // Same emissions, so whichever is less attractive is dominated.
    CHECK(!(walking && cycling));
  }
}

TEST_CASE("transit availability thins choice sets at the configured rate") {
  // Make transit the unique cleanest mode so domination can never remove
  // it; absence then means unavailability alone.
  ScenarioConfig config = small_config(20000);
  config.modes[1].co2_per_km = 0.0;
  config.modes[2].co2_per_km = 0.01;
  config.modes[3].co2_per_km = 0.01;

  const ScenarioOutput out = generate(config);
  std::int64_t with_transit = 0;
  for (const Individual &individual : out.instance.individuals) {
    for (const Alternative &a : individual.alternatives) {
      if (a.id == 1) {
        ++with_transit;
        break;
      }
    }
  }
  const double share =
      static_cast<double>(with_transit) / config.n_individuals;
  CHECK(share == Catch::Approx(0.89).margin(0.008));

  config.transit_availability = 0.0;
  const ScenarioOutput none = generate(config);
  for (const Individual &individual : none.instance.individuals) {
    for (const Alternative &a : individual.alternatives) {
      CHECK(a.id != 1);
    }
  }
}

TEST_CASE("modal split is car-dominated with small active shares") {
  const ScenarioOutput out = generate(small_config(10000));
  std::map<std::int32_t, int> defaults;
  for (const Individual &individual : out.instance.individuals) {
    defaults[individual
                 .alternatives[default_alternative(individual)]
                 .id]++;
  }
  const double n = 10000.0;
  CHECK(defaults[0] / n > 0.5);    // car
  CHECK(defaults[1] / n < 0.45);   // transit
  CHECK(defaults[2] / n < 0.15);   // walking
  CHECK(defaults[3] / n < 0.15);   // cycling
  CHECK(defaults[4] / n < 0.15);   // motorcycle
  CHECK(defaults[0] > 0);
  CHECK(defaults[1] > 0);
}

TEST_CASE("an empty population generates an empty instance") {
  const ScenarioOutput out = generate(small_config(0));
  CHECK(out.instance.individuals.empty());
  CHECK(out.stochastic.individuals.empty());
}

TEST_CASE("config domain violations are rejected") {
  CHECK_THROWS_AS(generate(small_config(-1)), InvalidConfigError);

  ScenarioConfig bad_scale = small_config(1);
  bad_scale.scale = 0.0;
  CHECK_THROWS_AS(generate(bad_scale), InvalidConfigError);

  ScenarioConfig bad_availability = small_config(1);
  bad_availability.transit_availability = 1.5;
  CHECK_THROWS_AS(generate(bad_availability), InvalidConfigError);

  ScenarioConfig bad_effects = small_config(1);
  bad_effects.occupations[0].mode_effects.pop_back();
  CHECK_THROWS_AS(generate(bad_effects), InvalidConfigError);

  ScenarioConfig bad_distance = small_config(1);
  bad_distance.population.distance_min_km = 10.0;
  bad_distance.population.distance_max_km = 1.0;
  CHECK_THROWS_AS(generate(bad_distance), InvalidConfigError);

  ScenarioConfig bad_speed = small_config(1);
  bad_speed.modes[0].speed_kmh = 0.0;
  CHECK_THROWS_AS(generate(bad_speed), InvalidConfigError);
}
