/**
 * @file scenario.hpp
 * @brief Synthetic commuting scenario: a logit population over travel modes.
 *
 * Generates individuals with demographic covariates, draws a commute
 * distance, scores each travel mode with a multinomial-logit utility
 * (deterministic part from the coefficient table in the config, plus a
 * standard Gumbel draw), and converts utilities to money with the
 * configured scale. The social indicator of a mode is the round-trip CO2
 * saved relative to the individual's realized default mode, so defaults sit
 * at social 0 and cleaner modes at positive values.
 *
 * The same draw is exported twice: a deterministic instance (utilities
 * include the noise, as a fully informed regulator would see them) and a
 * stochastic instance (estimates and noise split, as the allocation under
 * imperfect information needs them).
 */

#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "incentive/errors.hpp"
#include "incentive/model.hpp"
#include "incentive/parallel.hpp"
#include "incentive/rng.hpp"
#include "incentive/stochastic.hpp"
#include "incentive/types.hpp"

namespace incentive {

/// One travel mode and its utility coefficients (utility units).
struct ModeSpec {
  std::string name;
  /// kg CO2 per person-km.
  double co2_per_km = 0.0;
  double speed_kmh = 0.0;
  /// Alternative-specific constant (0 for the reference mode).
  double constant = 0.0;
  /// Per year of age.
  double age = 0.0;
  /// Added for women.
  double woman = 0.0;
  /// Per hour of round-trip travel time on this mode.
  double travel_time = 0.0;
  /// Per car per household worker; meaningful for car-like modes only.
  double cars_per_worker = 0.0;
  /// Added when the household owns at least one car.
  double has_car = 0.0;
};

/// One occupation group: population share and utility effects.
struct OccupationSpec {
  std::string name;
  double share = 0.0;
  /// Interaction with round-trip hours, common to all modes.
  double travel_time = 0.0;
  /// Additive effect per mode, aligned with ScenarioConfig::modes.
  std::vector<double> mode_effects;
};

struct PopulationSpec {
  double woman_share = 0.49;
  std::int32_t age_min = 18;
  std::int32_t age_max = 65;
  /// Travel-time interactions (per round-trip hour), common to all modes.
  double travel_time_age = 0.0;
  double travel_time_woman = 0.0;
  /// Discrete distribution of cars per household worker.
  std::vector<double> cars_per_worker_values;
  std::vector<double> cars_per_worker_probs;
  /// Commute distance, one way: lognormal clamped to [min_km, max_km].
  double distance_log_mean = 1.95;
  double distance_log_sd = 0.75;
  double distance_min_km = 0.5;
  double distance_max_km = 50.0;
};

struct ScenarioConfig {
  std::int64_t n_individuals = 10000;
  std::uint64_t seed = 1;
  /// Money per utility unit; also the Gumbel scale of the money-valued noise.
  double scale = 4.88;
  /// Share of individuals whose choice set includes the transit mode.
  double transit_availability = 0.89;
  /// Name of the availability-limited mode; empty disables the mechanism.
  std::string transit_mode = "transit";
  std::string money_unit = "EUR";
  std::string welfare_unit = "kgCO2";
  std::vector<ModeSpec> modes;
  std::vector<OccupationSpec> occupations;
  PopulationSpec population;
};

/// Both views of one generated population.
struct ScenarioOutput {
  Instance instance;
  StochasticInstance stochastic;
};

/**
 * @brief Built-in example configuration.
 *
 * Mode and occupation coefficients follow a published urban mode-choice
 * estimation (car as reference; age, sex and occupation shifters; strongly
 * negative travel-time terms for the active modes); population margins and
 * speeds are synthetic but sized to keep the car share dominant and the
 * active-mode shares small.
 */
inline ScenarioConfig default_scenario_config() {
  ScenarioConfig config;
  config.modes = {
      {"car", 0.193, 34.0, 0.0, 0.0, 0.0, -1.6281, 1.2138, 1.5604},
      {"transit", 0.068, 24.0, 2.7709, -0.0150, 0.5349, -1.1746, 0.0, 0.0},
      {"walking", 0.0, 4.8, 2.8659, -0.0026, 0.4361, -2.1032, 0.0, 0.0},
      {"cycling", 0.0, 14.0, 1.1340, -0.0139, -0.3882, -2.8474, 0.0, 0.0},
      {"motorcycle", 0.165, 32.0, -0.7284, -0.0019, -1.6909, -3.2075, 0.0,
       0.0},
  };
  config.occupations = {
      {"employee", 0.30, 0.0, {0.0, 0.0, 0.0, 0.0, 0.0}},
      {"farmer", 0.02, 1.1027, {0.0, -3.9054, -1.0434, -2.3653, -0.8798}},
      {"artisan", 0.07, -0.0763, {0.0, -1.7023, -1.2153, -0.7848, -0.2261}},
      {"executive", 0.18, -0.3671, {0.0, 0.1522, 0.2031, 1.1710, 0.2986}},
      {"intermediate", 0.26, -0.1986, {0.0, -0.2283, -0.1447, 0.4259, -0.0060}},
      {"blue-collar", 0.17, 0.2623, {0.0, -0.7579, -0.9691, -0.4808, -0.0259}},
  };
  config.population.travel_time_age = -0.0026;
  config.population.travel_time_woman = -0.1134;
  config.population.cars_per_worker_values = {0.0, 0.5, 1.0, 1.5, 2.0};
  config.population.cars_per_worker_probs = {0.16, 0.26, 0.36, 0.14, 0.08};
  return config;
}

namespace detail {

inline void check_scenario_config(const ScenarioConfig &config) {
  if (config.n_individuals < 0) {
    throw InvalidConfigError("n_individuals must be nonnegative");
  }
  if (!(config.scale > 0.0)) {
    throw InvalidConfigError("scale must be positive");
  }
  if (!(config.transit_availability >= 0.0 &&
        config.transit_availability <= 1.0)) {
    throw InvalidConfigError("transit_availability must lie in [0, 1]");
  }
  if (config.modes.empty()) throw InvalidConfigError("no modes configured");
  for (const ModeSpec &mode : config.modes) {
    if (!(mode.speed_kmh > 0.0)) {
      throw InvalidConfigError("mode " + mode.name +
                               " must have positive speed");
    }
    if (mode.co2_per_km < 0.0) {
      throw InvalidConfigError("mode " + mode.name +
                               " must have nonnegative emissions");
    }
  }
  if (config.occupations.empty()) {
    throw InvalidConfigError("no occupations configured");
  }
  double share_total = 0.0;
  for (const OccupationSpec &occ : config.occupations) {
    if (occ.share < 0.0) {
      throw InvalidConfigError("occupation " + occ.name +
                               " has a negative share");
    }
    if (occ.mode_effects.size() != config.modes.size()) {
      throw InvalidConfigError("occupation " + occ.name +
                               " must list one effect per mode");
    }
    share_total += occ.share;
  }
  if (!(share_total > 0.0)) {
    throw InvalidConfigError("occupation shares must not all be zero");
  }
  const PopulationSpec &pop = config.population;
  if (!(pop.woman_share >= 0.0 && pop.woman_share <= 1.0)) {
    throw InvalidConfigError("woman_share must lie in [0, 1]");
  }
  if (pop.age_min > pop.age_max) {
    throw InvalidConfigError("age_min must not exceed age_max");
  }
  if (pop.cars_per_worker_values.empty() ||
      pop.cars_per_worker_values.size() != pop.cars_per_worker_probs.size()) {
    throw InvalidConfigError(
        "cars_per_worker values and probabilities must align");
  }
  for (double p : pop.cars_per_worker_probs) {
    if (p < 0.0) {
      throw InvalidConfigError("cars_per_worker probabilities must be >= 0");
    }
  }
  if (!(pop.distance_log_sd >= 0.0)) {
    throw InvalidConfigError("distance_log_sd must be nonnegative");
  }
  if (!(pop.distance_min_km > 0.0 &&
        pop.distance_min_km <= pop.distance_max_km)) {
    throw InvalidConfigError("distance bounds must satisfy 0 < min <= max");
  }
}

}  // namespace detail

/**
 * @brief Generate a population. Deterministic per seed: every individual
 * draws from her own substream, so the output does not depend on the
 * thread count and any prefix of a larger run equals the smaller run.
 */
inline ScenarioOutput generate(const ScenarioConfig &config) {
  detail::check_scenario_config(config);

  const auto n = static_cast<std::size_t>(config.n_individuals);
  ScenarioOutput out;
  out.instance.money_unit = config.money_unit;
  out.instance.welfare_unit = config.welfare_unit;
  out.instance.individuals.resize(n);
  out.stochastic.money_unit = config.money_unit;
  out.stochastic.welfare_unit = config.welfare_unit;
  out.stochastic.scale = config.scale;
  out.stochastic.individuals.resize(n);

  std::ptrdiff_t transit_index = -1;
  for (std::size_t m = 0; m < config.modes.size(); ++m) {
    if (config.modes[m].name == config.transit_mode) {
      transit_index = static_cast<std::ptrdiff_t>(m);
    }
  }

  std::vector<double> occupation_shares;
  occupation_shares.reserve(config.occupations.size());
  for (const OccupationSpec &occ : config.occupations) {
    occupation_shares.push_back(occ.share);
  }

  parallel_chunks(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(substream_seed(config.seed, static_cast<std::uint64_t>(i)));
      const PopulationSpec &pop = config.population;

      const auto age = static_cast<double>(
          rng.uniform_int(pop.age_min, pop.age_max));
      const bool woman = rng.bernoulli(pop.woman_share);
      const OccupationSpec &occupation =
          config.occupations[rng.categorical(occupation_shares)];
      const double cars =
          pop.cars_per_worker_values[rng.categorical(pop.cars_per_worker_probs)];
      const double distance_km =
          std::clamp(rng.lognormal(pop.distance_log_mean, pop.distance_log_sd),
                     pop.distance_min_km, pop.distance_max_km);
      const bool transit_available =
          transit_index < 0 || rng.bernoulli(config.transit_availability);

      // Deterministic utility of each available mode, then one standard
      // Gumbel draw each; both converted to money with the common scale.
      std::vector<std::int32_t> mode_ids;
      std::vector<double> estimates, noises, emissions;
      for (std::size_t m = 0; m < config.modes.size(); ++m) {
        const double draw = rng.gumbel(1.0);
        if (static_cast<std::ptrdiff_t>(m) == transit_index &&
            !transit_available) {
          continue;  // drawn regardless, to keep substreams aligned
        }
        const ModeSpec &mode = config.modes[m];
        const double hours = 2.0 * distance_km / mode.speed_kmh;
        double v = mode.constant + mode.age * age +
                   (woman ? mode.woman : 0.0) + occupation.mode_effects[m] +
                   mode.cars_per_worker * cars +
                   (cars > 0.0 ? mode.has_car : 0.0);
        v += (mode.travel_time + pop.travel_time_age * age +
              (woman ? pop.travel_time_woman : 0.0) + occupation.travel_time) *
             hours;
        mode_ids.push_back(static_cast<std::int32_t>(m));
        estimates.push_back(config.scale * v);
        noises.push_back(config.scale * draw);
        emissions.push_back(mode.co2_per_km * 2.0 * distance_km);
      }

      // Realized default: best full utility. Socials are CO2 savings
      // against it, so its own social is exactly 0.
      std::size_t best = 0;
      for (std::size_t j = 1; j < estimates.size(); ++j) {
        if (estimates[j] + noises[j] > estimates[best] + noises[best]) {
          best = j;
        }
      }

      Individual &individual = out.instance.individuals[i];
      StochasticIndividual &stochastic = out.stochastic.individuals[i];
      individual.id = static_cast<std::int32_t>(i);
      stochastic.id = individual.id;
      for (std::size_t j = 0; j < mode_ids.size(); ++j) {
        const double social = emissions[best] - emissions[j];
        individual.alternatives.push_back(
            {mode_ids[j], estimates[j] + noises[j], social});
        stochastic.alternatives.push_back(
            {mode_ids[j], estimates[j], social, noises[j]});
      }

      // Alternatives no incentive would use (weakly dirtier and strictly
      // less attractive) are dropped from both views; with two
      // zero-emission modes this collapses walking/cycling to the better
      // one.
      std::vector<std::size_t> kept;
      for (std::size_t a = 0; a < individual.alternatives.size(); ++a) {
        bool dominated = false;
        for (std::size_t b = 0; b < individual.alternatives.size(); ++b) {
          if (individual.alternatives[b].social >=
                  individual.alternatives[a].social &&
              individual.alternatives[b].utility >
                  individual.alternatives[a].utility) {
            dominated = true;
            break;
          }
        }
        if (!dominated) kept.push_back(a);
      }
      if (kept.size() < individual.alternatives.size()) {
        std::vector<Alternative> alts;
        std::vector<StochasticAlternative> salts;
        for (std::size_t k : kept) {
          alts.push_back(individual.alternatives[k]);
          salts.push_back(stochastic.alternatives[k]);
        }
        individual.alternatives = std::move(alts);
        stochastic.alternatives = std::move(salts);
      }
    }
  });
  return out;
}

}  // namespace incentive
