/**
 * @file concavize.hpp
 * @brief Reduction of a choice set to its LP-extreme chain.
 *
 * Plotting each alternative as a point (weight, social), the only
 * alternatives an efficient incentive scheme ever uses are the vertices of
 * the upper-left convex hull of that point cloud, anchored at the default
 * (0, social(default)). Two filters produce them:
 *
 *  - dominance: j' is dominated when some j has social(j) >= social(j') and
 *    weight(j) <= weight(j') (equivalently, strictly larger utility);
 *  - LP-dominance: a middle point j' of a triple j < j' < j'' (strictly
 *    increasing weights and socials) is LP-dominated when the efficiency of
 *    the step j' -> j'' is at least that of j -> j'. The ">=" removes
 *    collinear middles, so the chain is minimal.
 *
 * Along the surviving chain, weights and socials increase strictly and the
 * incremental efficiency (social step / weight step) decreases strictly.
 */

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <limits>
#include <vector>

#include "incentive/model.hpp"
#include "incentive/parallel.hpp"
#include "incentive/types.hpp"

namespace incentive {

/// One vertex of an LP-extreme chain.
struct ChainEntry {
  std::int32_t alt_id = 0;
  /// Cumulative incentive needed to induce this alternative.
  double weight = 0.0;
  double social = 0.0;
  /// Steps from the previous chain entry. Entry 0 (the default) has zero
  /// steps and infinite efficiency by convention.
  double incr_weight = 0.0;
  double incr_social = 0.0;
  double incr_efficiency = 0.0;
};

/// LP-extreme chain of one individual, default first.
struct LpExtremeChain {
  std::int32_t individual_id = 0;
  std::vector<ChainEntry> entries;
};

namespace detail {

/// (weight, social, id) of one alternative, the geometry the filters act on.
struct ChainPoint {
  double weight;
  double social;
  std::int32_t alt_id;
};

/// Chain entries (cumulative and incremental fields) from hull vertices
/// sorted by weight. Shared packaging step; the vertex selection that feeds
/// it is what lp_extremes and brute_force_lp_extremes implement separately.
inline LpExtremeChain package_chain(std::int32_t individual_id,
                                    const std::vector<ChainPoint> &vertices) {
  LpExtremeChain chain;
  chain.individual_id = individual_id;
  chain.entries.reserve(vertices.size());
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    ChainEntry e;
    e.alt_id = vertices[k].alt_id;
    e.weight = vertices[k].weight;
    e.social = vertices[k].social;
    if (k == 0) {
      e.incr_efficiency = std::numeric_limits<double>::infinity();
    } else {
      e.incr_weight = vertices[k].weight - vertices[k - 1].weight;
      e.incr_social = vertices[k].social - vertices[k - 1].social;
      assert(e.incr_weight > 0.0 && e.incr_social > 0.0);
      e.incr_efficiency = e.incr_social / e.incr_weight;
    }
    chain.entries.push_back(e);
  }
  return chain;
}

inline std::vector<ChainPoint> points_of(const Individual &individual) {
  const std::size_t d = default_alternative(individual);
  const double u_default = individual.alternatives[d].utility;
  std::vector<ChainPoint> points;
  points.reserve(individual.alternatives.size());
  for (const Alternative &a : individual.alternatives) {
    points.push_back({u_default - a.utility, a.social, a.id});
  }
  return points;
}

/**
 * @brief Chain of the upper-left hull vertices of an arbitrary point set,
 * by monotone scan.
 *
 * O(n log n): sort by (weight, -social), sweep off dominated points, then a
 * stack scan keeps exactly the strict hull vertices. Middle points of
 * collinear runs are treated as LP-dominated and removed. The point set
 * must contain an anchor of weight 0 that is not dominated.
 */
inline LpExtremeChain hull_chain(std::int32_t individual_id,
                                 std::vector<ChainPoint> points) {
  std::sort(points.begin(), points.end(),
            [](const ChainPoint &a, const ChainPoint &b) {
              if (a.weight != b.weight) return a.weight < b.weight;
              if (a.social != b.social) return a.social > b.social;
              return a.alt_id < b.alt_id;
            });

  // Dominance sweep: after the sort, a point is dominated exactly when some
  // earlier point has social >= its own.
  std::vector<ChainPoint> rising;
  rising.reserve(points.size());
  for (const ChainPoint &p : points) {
    if (!rising.empty() && rising.back().social >= p.social) continue;
    rising.push_back(p);
  }
  assert(!rising.empty() && rising.front().weight == 0.0);

  // Hull scan. Popping on ">=" drops collinear middle points. Slopes are
  // compared by cross products, so rational-valued inputs are compared
  // exactly, without division rounding.
  std::vector<ChainPoint> hull;
  hull.reserve(rising.size());
  for (const ChainPoint &p : rising) {
    while (hull.size() >= 2) {
      const ChainPoint &a = hull[hull.size() - 2];
      const ChainPoint &b = hull[hull.size() - 1];
      if ((p.social - b.social) * (b.weight - a.weight) >=
          (b.social - a.social) * (p.weight - b.weight)) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  return package_chain(individual_id, hull);
}

}  // namespace detail

/// LP-extreme chain of one individual's choice set.
inline LpExtremeChain lp_extremes(const Individual &individual) {
  return detail::hull_chain(individual.id, detail::points_of(individual));
}

/**
 * @brief Reference implementation of lp_extremes by definition chasing.
 *
 * Removes dominated alternatives by pairwise scan, then LP-dominated ones by
 * triple scan until a fixpoint. O(n^3) per pass; only suitable for small
 * choice sets, kept as an independent check of the hull scan.
 */
inline LpExtremeChain brute_force_lp_extremes(const Individual &individual) {
  std::vector<detail::ChainPoint> points = detail::points_of(individual);

  std::vector<detail::ChainPoint> kept;
  for (const detail::ChainPoint &p : points) {
    const bool dominated = std::any_of(
        points.begin(), points.end(), [&](const detail::ChainPoint &q) {
          if (q.social == p.social && q.weight == p.weight) {
            // Exact duplicates dominate each other; keep the lowest id.
            return q.alt_id < p.alt_id;
          }
          return q.social >= p.social && q.weight <= p.weight;
        });
    if (!dominated) kept.push_back(p);
  }

  bool removed = true;
  while (removed) {
    removed = false;
    std::vector<detail::ChainPoint> survivors;
    for (const detail::ChainPoint &mid : kept) {
      bool lp_dominated = false;
      for (const detail::ChainPoint &lo : kept) {
        for (const detail::ChainPoint &hi : kept) {
          if (!(lo.social < mid.social && mid.social < hi.social)) continue;
          if (!(lo.weight < mid.weight && mid.weight < hi.weight)) continue;
          if ((hi.social - mid.social) * (mid.weight - lo.weight) >=
              (mid.social - lo.social) * (hi.weight - mid.weight)) {
            lp_dominated = true;
            break;
          }
        }
        if (lp_dominated) break;
      }
      if (lp_dominated) {
        removed = true;
      } else {
        survivors.push_back(mid);
      }
    }
    kept = std::move(survivors);
  }

  std::sort(kept.begin(), kept.end(),
            [](const detail::ChainPoint &a, const detail::ChainPoint &b) {
              return a.weight < b.weight;
            });
  return detail::package_chain(individual.id, kept);
}

/// Chains of a whole instance, in instance order. Individuals are
/// independent, so the work is spread across worker threads.
inline std::vector<LpExtremeChain> build_chains(const Instance &instance) {
  std::vector<LpExtremeChain> chains(instance.individuals.size());
  parallel_chunks(instance.individuals.size(),
                  [&](std::size_t begin, std::size_t end) {
                    for (std::size_t i = begin; i < end; ++i) {
                      chains[i] = lp_extremes(instance.individuals[i]);
                    }
                  });
  return chains;
}

}  // namespace incentive
