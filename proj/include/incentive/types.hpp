/**
 * @file types.hpp
 * @brief Core value types: instances, policies and evaluation results.
 *
 * An instance describes a population of individuals, each with a finite set
 * of alternatives. Every alternative carries an intrinsic utility (money)
 * and a social indicator (welfare units, e.g. kg of avoided CO2). A policy
 * maps (individual, alternative) pairs to monetary transfers or bans; the
 * pairs it does not mention are left untouched.
 */

#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace incentive {

/// One option available to an individual.
struct Alternative {
  std::int32_t id = 0;
  /// Intrinsic utility, in money units.
  double utility = 0.0;
  /// Social indicator contributed when this alternative is chosen.
  double social = 0.0;
};

/// One decision maker and her choice set.
struct Individual {
  std::int32_t id = 0;
  std::vector<Alternative> alternatives;
};

/// A population of individuals with unit labels for reporting.
struct Instance {
  std::string money_unit = "EUR";
  std::string welfare_unit = "kgCO2";
  std::vector<Individual> individuals;
};

/**
 * @brief A monetary transfer or a ban on one alternative.
 *
 * A ban is a distinct state, not a large negative amount, so that banned
 * alternatives can never win a utility comparison through rounding.
 */
class Transfer {
public:
  /// A transfer of @p value (positive = paid to the individual).
  static Transfer amount(double value) { return Transfer(false, value); }

  /// A ban: the alternative is removed from the choice set.
  static Transfer banned() { return Transfer(true, 0.0); }

  bool is_banned() const { return banned_; }

  double value() const {
    assert(!banned_ && "a ban has no transfer amount");
    return amount_;
  }

private:
  Transfer(bool banned, double amount) : banned_(banned), amount_(amount) {}

  bool banned_;
  double amount_;
};

/**
 * @brief A policy: transfers and bans keyed by (individual, alternative).
 *
 * Unmentioned pairs default to a zero transfer, so the empty policy is the
 * do-nothing policy.
 */
class Policy {
public:
  void set_amount(std::int32_t individual_id, std::int32_t alternative_id,
                  double value) {
    transfers_.insert_or_assign(key(individual_id, alternative_id),
                                Transfer::amount(value));
  }

  void ban(std::int32_t individual_id, std::int32_t alternative_id) {
    transfers_.insert_or_assign(key(individual_id, alternative_id),
                                Transfer::banned());
  }

  /// Transfer applied to one pair; zero for pairs the policy does not touch.
  Transfer transfer(std::int32_t individual_id,
                    std::int32_t alternative_id) const {
    auto it = transfers_.find(key(individual_id, alternative_id));
    return it == transfers_.end() ? Transfer::amount(0.0) : it->second;
  }

  std::size_t size() const { return transfers_.size(); }

  void reserve(std::size_t n) { transfers_.reserve(n); }

  /// Entries in unspecified order; use for serialization, not semantics.
  template <typename Fn>
  void for_each(Fn &&fn) const {
    for (const auto &[k, t] : transfers_) {
      fn(static_cast<std::int32_t>(k >> 32),
         static_cast<std::int32_t>(k & 0xffffffffu), t);
    }
  }

  /// True iff no entry is a ban and every amount is nonnegative.
  bool is_incentive_policy() const {
    for (const auto &[k, t] : transfers_) {
      if (t.is_banned() || t.value() < 0.0) return false;
    }
    return true;
  }

private:
  static std::uint64_t key(std::int32_t individual_id,
                           std::int32_t alternative_id) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(
                individual_id))
            << 32) |
           static_cast<std::uint32_t>(alternative_id);
  }

  std::unordered_map<std::uint64_t, Transfer> transfers_;
};

/// The choice one individual makes under a policy.
struct ChoiceOutcome {
  /// Chosen alternative id.
  std::int32_t alternative = 0;
  /// Utility including the transfer, u + t.
  double total_utility = 0.0;
  /// Transfer received (0 if the chosen alternative had none).
  double transfer = 0.0;
};

/// Aggregate effect of a policy on an instance.
struct PolicyEvaluation {
  /// Total social indicator under the policy.
  double welfare = 0.0;
  /// Total social indicator when everyone keeps her default.
  double baseline_welfare = 0.0;
  /// welfare - baseline_welfare.
  double welfare_gain = 0.0;
  /// Sum of transfers actually paid out (negative = net revenue).
  double expenses = 0.0;
  /// Signed change of total individual utility, transfers included.
  double utility_change = 0.0;
  /// Disutility of the policy: expenses - utility_change. Nonnegative.
  double disutility = 0.0;
  /// Chosen alternative id per individual, in instance order.
  std::vector<std::int32_t> choices;
};

}  // namespace incentive
