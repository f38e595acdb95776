/**
 * @file io.hpp
 * @brief File formats: instance and policy JSON, curve and log CSV.
 *
 * All writers are deterministic: object keys in fixed order, entries sorted,
 * numbers in shortest round-trip form, LF line endings, '.' decimal point.
 * Loading a saved file and saving it again reproduces it byte for byte.
 */

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "incentive/errors.hpp"
#include "incentive/greedy.hpp"
#include "incentive/policies.hpp"
#include "incentive/scenario.hpp"
#include "incentive/stochastic.hpp"
#include "incentive/types.hpp"

namespace incentive {

/// Shortest decimal form that parses back to exactly @p value.
inline std::string format_double(double value) {
  char buffer[32];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace detail {

using Json = nlohmann::ordered_json;

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path);
  return buffer.str();
}

inline void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("failed writing " + path);
}

/// Parse JSON, translating syntax errors to line/column positions.
inline Json parse_json(const std::string &text, const std::string &path) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error &error) {
    std::int64_t line = 1, column = 1;
    const std::size_t limit =
        std::min<std::size_t>(error.byte > 0 ? error.byte - 1 : 0,
                              text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw FileParseError("invalid JSON in " + path, line, column);
  }
}

inline const Json &field(const Json &object, const std::string &name,
                         const std::string &where) {
  if (!object.is_object() || !object.contains(name)) {
    throw SchemaError("missing field '" + name + "' in " + where);
  }
  return object.at(name);
}

inline double number_field(const Json &object, const std::string &name,
                           const std::string &where) {
  const Json &value = field(object, name, where);
  if (!value.is_number()) {
    throw SchemaError("field '" + name + "' in " + where +
                      " must be a number");
  }
  return value.get<double>();
}

inline std::int64_t int_field(const Json &object, const std::string &name,
                              const std::string &where) {
  const Json &value = field(object, name, where);
  if (!value.is_number_integer()) {
    throw SchemaError("field '" + name + "' in " + where +
                      " must be an integer");
  }
  return value.get<std::int64_t>();
}

inline std::string string_field(const Json &object, const std::string &name,
                                const std::string &where) {
  const Json &value = field(object, name, where);
  if (!value.is_string()) {
    throw SchemaError("field '" + name + "' in " + where +
                      " must be a string");
  }
  return value.get<std::string>();
}

inline const Json &array_field(const Json &object, const std::string &name,
                               const std::string &where) {
  const Json &value = field(object, name, where);
  if (!value.is_array()) {
    throw SchemaError("field '" + name + "' in " + where +
                      " must be an array");
  }
  return value;
}

}  // namespace detail

inline void save_instance(const Instance &instance, const std::string &path) {
  detail::Json doc;
  doc["money_unit"] = instance.money_unit;
  doc["welfare_unit"] = instance.welfare_unit;
  auto &individuals = doc["individuals"] = detail::Json::array();
  for (const Individual &individual : instance.individuals) {
    detail::Json entry;
    entry["id"] = individual.id;
    auto &alternatives = entry["alternatives"] = detail::Json::array();
    for (const Alternative &a : individual.alternatives) {
      alternatives.push_back(
          {{"id", a.id}, {"utility", a.utility}, {"social", a.social}});
    }
    individuals.push_back(std::move(entry));
  }
  detail::write_file(path, doc.dump(2) + "\n");
}

inline Instance load_instance(const std::string &path) {
  const detail::Json doc = detail::parse_json(detail::read_file(path), path);
  Instance instance;
  instance.money_unit = detail::string_field(doc, "money_unit", path);
  instance.welfare_unit = detail::string_field(doc, "welfare_unit", path);
  for (const detail::Json &entry :
       detail::array_field(doc, "individuals", path)) {
    Individual individual;
    individual.id =
        static_cast<std::int32_t>(detail::int_field(entry, "id", "individual"));
    const std::string where = "individual " + std::to_string(individual.id);
    for (const detail::Json &alt :
         detail::array_field(entry, "alternatives", where)) {
      Alternative a;
      a.id = static_cast<std::int32_t>(detail::int_field(alt, "id", where));
      a.utility = detail::number_field(alt, "utility", where);
      a.social = detail::number_field(alt, "social", where);
      individual.alternatives.push_back(a);
    }
    instance.individuals.push_back(std::move(individual));
  }
  return instance;
}

inline void save_policy(const Policy &policy, const std::string &path) {
  struct Row {
    std::int32_t individual;
    std::int32_t alternative;
    Transfer transfer;
  };
  std::vector<Row> rows;
  rows.reserve(policy.size());
  policy.for_each([&](std::int32_t i, std::int32_t j, Transfer t) {
    rows.push_back({i, j, t});
  });
  std::sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
    if (a.individual != b.individual) return a.individual < b.individual;
    return a.alternative < b.alternative;
  });
  detail::Json doc;
  auto &transfers = doc["transfers"] = detail::Json::array();
  for (const Row &row : rows) {
    detail::Json entry;
    entry["individual"] = row.individual;
    entry["alternative"] = row.alternative;
    if (row.transfer.is_banned()) {
      entry["banned"] = true;
    } else {
      entry["amount"] = row.transfer.value();
    }
    transfers.push_back(std::move(entry));
  }
  detail::write_file(path, doc.dump(2) + "\n");
}

inline Policy load_policy(const std::string &path) {
  const detail::Json doc = detail::parse_json(detail::read_file(path), path);
  Policy policy;
  for (const detail::Json &entry :
       detail::array_field(doc, "transfers", path)) {
    const auto individual = static_cast<std::int32_t>(
        detail::int_field(entry, "individual", "transfer"));
    const auto alternative = static_cast<std::int32_t>(
        detail::int_field(entry, "alternative", "transfer"));
    if (entry.contains("banned")) {
      if (!entry.at("banned").is_boolean() ||
          !entry.at("banned").get<bool>()) {
        throw SchemaError("field 'banned' must be true when present");
      }
      policy.ban(individual, alternative);
    } else {
      policy.set_amount(individual, alternative,
                        detail::number_field(entry, "amount", "transfer"));
    }
  }
  return policy;
}

inline std::string curve_csv_text(const WelfareCurve &curve) {
  std::string text = "spend,welfare_gain\n";
  for (const CurvePoint &p : curve.points) {
    text += format_double(p.spend);
    text += ',';
    text += format_double(p.welfare_gain);
    text += '\n';
  }
  return text;
}

inline void write_curve_csv(const WelfareCurve &curve,
                            const std::string &path) {
  detail::write_file(path, curve_csv_text(curve));
}

/// Reads a curve written by write_curve_csv. The solved budget is not part
/// of the format; the last breakpoint's spend is used in its place.
inline WelfareCurve read_curve_csv(const std::string &path) {
  const std::string text = detail::read_file(path);
  WelfareCurve curve;
  std::int64_t line_number = 0;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(begin, end - begin);
    ++line_number;
    begin = end + 1;
    if (line_number == 1) {
      if (line != "spend,welfare_gain") {
        throw SchemaError("unexpected curve header in " + path);
      }
      continue;
    }
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw FileParseError("expected 'spend,welfare_gain' row in " + path,
                           line_number, 1);
    }
    CurvePoint point;
    const char *spend_begin = line.data();
    const char *spend_end = line.data() + comma;
    auto parsed = std::from_chars(spend_begin, spend_end, point.spend);
    if (parsed.ec != std::errc() || parsed.ptr != spend_end) {
      throw FileParseError("invalid number in " + path, line_number, 1);
    }
    const char *gain_begin = line.data() + comma + 1;
    const char *gain_end = line.data() + line.size();
    parsed = std::from_chars(gain_begin, gain_end, point.welfare_gain);
    if (parsed.ec != std::errc() || parsed.ptr != gain_end) {
      throw FileParseError("invalid number in " + path, line_number,
                           static_cast<std::int64_t>(comma) + 2);
    }
    curve.points.push_back(point);
  }
  if (curve.points.empty()) {
    throw SchemaError("curve in " + path + " has no rows");
  }
  curve.budget = curve.points.back().spend;
  return curve;
}

inline void write_iteration_log_csv(const GreedyResult &result,
                                    const std::string &path) {
  std::string text =
      "k,individual,alternative,incr_weight,incr_social,incr_efficiency,"
      "tot_incentive,welfare_gain\n";
  for (const IterationRecord &it : result.iterations) {
    text += std::to_string(it.k);
    text += ',';
    text += std::to_string(it.individual_id);
    text += ',';
    text += std::to_string(it.alt_id);
    text += ',';
    text += format_double(it.incr_weight);
    text += ',';
    text += format_double(it.incr_social);
    text += ',';
    text += format_double(it.incr_efficiency);
    text += ',';
    text += format_double(it.tot_incentive);
    text += ',';
    text += format_double(it.welfare_gain);
    text += '\n';
  }
  detail::write_file(path, text);
}

inline void write_chains_csv(const std::vector<LpExtremeChain> &chains,
                             const std::string &path) {
  std::string text = "individual,alternative,weight,social,incr_efficiency\n";
  for (const LpExtremeChain &chain : chains) {
    for (const ChainEntry &entry : chain.entries) {
      text += std::to_string(chain.individual_id);
      text += ',';
      text += std::to_string(entry.alt_id);
      text += ',';
      text += format_double(entry.weight);
      text += ',';
      text += format_double(entry.social);
      text += ',';
      text += format_double(entry.incr_efficiency);
      text += '\n';
    }
  }
  detail::write_file(path, text);
}

inline std::string comparison_csv_text(const std::vector<ComparisonRow> &rows) {
  std::string text = "policy,expenses,utility_change,disutility,welfare_gain\n";
  for (const ComparisonRow &row : rows) {
    text += row.policy;
    text += ',';
    text += format_double(row.expenses);
    text += ',';
    text += format_double(row.utility_change);
    text += ',';
    text += format_double(row.disutility);
    text += ',';
    text += format_double(row.welfare_gain);
    text += '\n';
  }
  return text;
}

inline void write_comparison_csv(const std::vector<ComparisonRow> &rows,
                                 const std::string &path) {
  detail::write_file(path, comparison_csv_text(rows));
}

inline void write_simulation_report(const SimulationReport &report,
                                    const std::string &path) {
  detail::Json doc;
  doc["budget"] = report.budget;
  doc["budget_spent"] = report.budget_spent;
  doc["proposals"] = report.proposals;
  doc["accepted"] = report.accepted;
  doc["acceptance_rate"] = report.acceptance_rate;
  doc["welfare_gain"] = report.welfare_gain;
  detail::write_file(path, doc.dump(2) + "\n");
}

inline void save_scenario_config(const ScenarioConfig &config,
                                 const std::string &path) {
  detail::Json doc;
  doc["n_individuals"] = config.n_individuals;
  doc["seed"] = config.seed;
  doc["scale"] = config.scale;
  doc["transit_availability"] = config.transit_availability;
  doc["transit_mode"] = config.transit_mode;
  doc["money_unit"] = config.money_unit;
  doc["welfare_unit"] = config.welfare_unit;
  auto &modes = doc["modes"] = detail::Json::array();
  for (const ModeSpec &mode : config.modes) {
    modes.push_back({{"name", mode.name},
                     {"co2_per_km", mode.co2_per_km},
                     {"speed_kmh", mode.speed_kmh},
                     {"constant", mode.constant},
                     {"age", mode.age},
                     {"woman", mode.woman},
                     {"travel_time", mode.travel_time},
                     {"cars_per_worker", mode.cars_per_worker},
                     {"has_car", mode.has_car}});
  }
  auto &occupations = doc["occupations"] = detail::Json::array();
  for (const OccupationSpec &occ : config.occupations) {
    occupations.push_back({{"name", occ.name},
                           {"share", occ.share},
                           {"travel_time", occ.travel_time},
                           {"mode_effects", occ.mode_effects}});
  }
  const PopulationSpec &pop = config.population;
  doc["population"] = {
      {"woman_share", pop.woman_share},
      {"age_min", pop.age_min},
      {"age_max", pop.age_max},
      {"travel_time_age", pop.travel_time_age},
      {"travel_time_woman", pop.travel_time_woman},
      {"cars_per_worker_values", pop.cars_per_worker_values},
      {"cars_per_worker_probs", pop.cars_per_worker_probs},
      {"distance_log_mean", pop.distance_log_mean},
      {"distance_log_sd", pop.distance_log_sd},
      {"distance_min_km", pop.distance_min_km},
      {"distance_max_km", pop.distance_max_km},
  };
  detail::write_file(path, doc.dump(2) + "\n");
}

inline ScenarioConfig load_scenario_config(const std::string &path) {
  const detail::Json doc = detail::parse_json(detail::read_file(path), path);
  ScenarioConfig config;
  config.n_individuals = detail::int_field(doc, "n_individuals", path);
  config.seed = static_cast<std::uint64_t>(detail::int_field(doc, "seed", path));
  config.scale = detail::number_field(doc, "scale", path);
  config.transit_availability =
      detail::number_field(doc, "transit_availability", path);
  config.transit_mode = detail::string_field(doc, "transit_mode", path);
  config.money_unit = detail::string_field(doc, "money_unit", path);
  config.welfare_unit = detail::string_field(doc, "welfare_unit", path);
  config.modes.clear();
  for (const detail::Json &entry : detail::array_field(doc, "modes", path)) {
    ModeSpec mode;
    mode.name = detail::string_field(entry, "name", "mode");
    const std::string where = "mode " + mode.name;
    mode.co2_per_km = detail::number_field(entry, "co2_per_km", where);
    mode.speed_kmh = detail::number_field(entry, "speed_kmh", where);
    mode.constant = detail::number_field(entry, "constant", where);
    mode.age = detail::number_field(entry, "age", where);
    mode.woman = detail::number_field(entry, "woman", where);
    mode.travel_time = detail::number_field(entry, "travel_time", where);
    mode.cars_per_worker =
        detail::number_field(entry, "cars_per_worker", where);
    mode.has_car = detail::number_field(entry, "has_car", where);
    config.modes.push_back(std::move(mode));
  }
  config.occupations.clear();
  for (const detail::Json &entry :
       detail::array_field(doc, "occupations", path)) {
    OccupationSpec occ;
    occ.name = detail::string_field(entry, "name", "occupation");
    const std::string where = "occupation " + occ.name;
    occ.share = detail::number_field(entry, "share", where);
    occ.travel_time = detail::number_field(entry, "travel_time", where);
    for (const detail::Json &effect :
         detail::array_field(entry, "mode_effects", where)) {
      if (!effect.is_number()) {
        throw SchemaError("mode_effects of " + where + " must be numbers");
      }
      occ.mode_effects.push_back(effect.get<double>());
    }
    config.occupations.push_back(std::move(occ));
  }
  const detail::Json &pop = detail::field(doc, "population", path);
  config.population.woman_share =
      detail::number_field(pop, "woman_share", "population");
  config.population.age_min = static_cast<std::int32_t>(
      detail::int_field(pop, "age_min", "population"));
  config.population.age_max = static_cast<std::int32_t>(
      detail::int_field(pop, "age_max", "population"));
  config.population.travel_time_age =
      detail::number_field(pop, "travel_time_age", "population");
  config.population.travel_time_woman =
      detail::number_field(pop, "travel_time_woman", "population");
  config.population.cars_per_worker_values.clear();
  for (const detail::Json &value :
       detail::array_field(pop, "cars_per_worker_values", "population")) {
    config.population.cars_per_worker_values.push_back(value.get<double>());
  }
  config.population.cars_per_worker_probs.clear();
  for (const detail::Json &value :
       detail::array_field(pop, "cars_per_worker_probs", "population")) {
    config.population.cars_per_worker_probs.push_back(value.get<double>());
  }
  config.population.distance_log_mean =
      detail::number_field(pop, "distance_log_mean", "population");
  config.population.distance_log_sd =
      detail::number_field(pop, "distance_log_sd", "population");
  config.population.distance_min_km =
      detail::number_field(pop, "distance_min_km", "population");
  config.population.distance_max_km =
      detail::number_field(pop, "distance_max_km", "population");
  return config;
}

}  // namespace incentive
