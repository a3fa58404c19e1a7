// Copyright 2026 The icgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Two-player efficiency analysis on the utility plane: grid sampling, Pareto
// frontier, weighted social optimum and the Nash bargaining solution.

#ifndef ICGAME_EFFICIENCY_HPP
#define ICGAME_EFFICIENCY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "icgame/continuous_game.hpp"
#include "icgame/errors.hpp"
#include "icgame/network.hpp"
#include "icgame/numerics.hpp"

namespace icgame {

using UtilityPair = std::array<double, 2>;

struct UtilityPoint {
  PowerProfile profile;
  UtilityPair utilities{};   // [b/J]
  UtilityPair normalized{};  // sigma^2 u / t

  friend bool operator==(const UtilityPoint&, const UtilityPoint&) = default;
};

struct Weights {
  std::vector<double> w;

  static constexpr double kSumTol = 1e-12;

  void validate(std::size_t num_players) const {
    if (w.size() != num_players) {
      throw ValidationError("weights", "expected " +
                                           std::to_string(num_players) +
                                           " entries");
    }
    double total = 0.0;
    for (double x : w) {
      if (!(x >= 0.0)) throw ValidationError("weights", "must be >= 0");
      total += x;
    }
    if (std::abs(total - 1.0) > kSumTol) {
      throw ValidationError("weights", "must sum to 1");
    }
  }
};

inline constexpr std::size_t kDefaultGrid = 400;
inline constexpr double kRefineTol = 1e-10;

namespace detail {

inline void require_two_players(const NetworkModel& model) {
  if (model.num_players() != 2) {
    throw UnsupportedDimension("utility-plane analysis needs exactly 2 players");
  }
}

// Coordinate-wise golden-section ascent in a box of half-width `radius`
// around the current point, cycling until a pass gains less than `tol`.
// Moves are only accepted when they improve the objective.
template <class Objective>
std::pair<PowerProfile, double> refine_coordinatewise(
    const NetworkModel& model, PowerProfile point, double value,
    const Objective& objective, double radius, double tol) {
  const double p = model.power_cap;
  for (int pass = 0; pass < 1000; ++pass) {
    const double before = value;
    for (std::size_t k = 0; k < point.size(); ++k) {
      const double x = point[k];
      const auto along = [&](double s) { return objective(point.with(k, s)); };
      auto [s, v] = numerics::golden_section_max(
          along, std::max(0.0, x - radius), std::min(p, x + radius),
          1e-3 * tol);
      if (v > value) {
        point[k] = s;
        value = v;
      }
    }
    if (!(value - before >= tol)) break;
  }
  return {std::move(point), value};
}

// Coordinate passes crawl along a diagonal ridge. This maximizes
// g(s_1) = max_{s_2} f(s_1, s_2) instead, one golden search nested in another,
// over a box of half-width `radius` (s_1) and 2 * radius (s_2).
template <class Objective>
std::pair<PowerProfile, double> refine_nested(const NetworkModel& model,
                                              PowerProfile point, double value,
                                              const Objective& objective,
                                              double radius) {
  const double p = model.power_cap;
  const double x1 = point[0];
  const double x2 = point[1];
  const double lo2 = std::max(0.0, x2 - 2 * radius);
  const double hi2 = std::min(p, x2 + 2 * radius);
  const auto inner = [&](double s1) {
    return numerics::golden_section_max(
        [&](double s2) { return objective(PowerProfile{s1, s2}); }, lo2, hi2, 1e-12 * p);
  };
  const auto [s1, v] = numerics::golden_section_max(
      [&](double s) { return inner(s).second; }, std::max(0.0, x1 - radius),
      std::min(p, x1 + radius), 1e-12 * p);
  const auto [s2, v2] = inner(s1);
  if (v2 > value) return {PowerProfile{s1, s2}, v2};
  return {std::move(point), value};
}

template <class Objective>
PowerProfile refine(const NetworkModel& model, PowerProfile point, double value,
                    const Objective& objective, double radius, double tol) {
  auto coord = refine_coordinatewise(model, std::move(point), value, objective,
                                     radius, tol);
  return refine_nested(model, std::move(coord.first), coord.second, objective,
                       radius)
      .first;
}

}  // namespace detail

inline UtilityPoint make_point(const NetworkModel& model, PowerProfile profile) {
  detail::require_two_players(model);
  UtilityPoint out;
  out.utilities = {ee_utility(model, profile, 0), ee_utility(model, profile, 1)};
  const double scale = model.noise_power / model.rate_scale;
  out.normalized = {out.utilities[0] * scale, out.utilities[1] * scale};
  out.profile = std::move(profile);
  return out;
}

/// n x n uniform samples of [0, p]^2 (endpoints included), s_1 outermost.
inline std::vector<UtilityPoint> utility_grid(const NetworkModel& model,
                                              std::size_t n_per_axis) {
  detail::require_two_players(model);
  if (n_per_axis < 2) throw std::invalid_argument("n_per_axis must be >= 2");
  const double p = model.power_cap;
  std::vector<UtilityPoint> out;
  out.reserve(n_per_axis * n_per_axis);
  for (std::size_t i = 0; i < n_per_axis; ++i) {
    for (std::size_t j = 0; j < n_per_axis; ++j) {
      out.push_back(make_point(model, {numerics::linspace_at(0.0, p, n_per_axis, i),
                                       numerics::linspace_at(0.0, p, n_per_axis, j)}));
    }
  }
  return out;
}

/// b Pareto-dominates a: b >= a everywhere and b > a somewhere.
inline bool dominates(const UtilityPair& b, const UtilityPair& a) {
  return b[0] >= a[0] && b[1] >= a[1] && (b[0] > a[0] || b[1] > a[1]);
}

/// Non-dominated subset, sorted by u_1 ascending (u_2 then strictly
/// decreasing). Points with identical utilities collapse to the one with the
/// lexicographically smallest profile.
inline std::vector<UtilityPoint> pareto_frontier(std::vector<UtilityPoint> points) {
  if (points.empty()) throw std::invalid_argument("pareto_frontier: no points");
  std::sort(points.begin(), points.end(),
            [](const UtilityPoint& a, const UtilityPoint& b) {
              if (a.utilities[0] != b.utilities[0]) {
                return a.utilities[0] > b.utilities[0];
              }
              if (a.utilities[1] != b.utilities[1]) {
                return a.utilities[1] > b.utilities[1];
              }
              return a.profile.powers < b.profile.powers;
            });
  std::vector<UtilityPoint> out;
  double best_u2 = -std::numeric_limits<double>::infinity();
  for (auto& pt : points) {
    if (pt.utilities[1] > best_u2) {
      best_u2 = pt.utilities[1];
      out.push_back(std::move(pt));
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

/// Component-wise u(candidate) >= u(baseline).
inline bool in_improvement_region(const UtilityPoint& candidate,
                                  const UtilityPoint& baseline) {
  return candidate.utilities[0] >= baseline.utilities[0] &&
         candidate.utilities[1] >= baseline.utilities[1];
}

/// Maximizer of sum_k w_k u_k over [0, p]^2: best grid sample, then local
/// coordinate-wise refinement.
inline UtilityPoint social_optimum(const NetworkModel& model,
                                   const Weights& weights,
                                   std::size_t n_per_axis = kDefaultGrid,
                                   double refine_tol = kRefineTol) {
  model.validate();
  detail::require_two_players(model);
  weights.validate(2);
  if (n_per_axis < 2) throw std::invalid_argument("n_per_axis must be >= 2");
  const auto welfare = [&](const PowerProfile& s) {
    return weights.w[0] * ee_utility(model, s, 0) +
           weights.w[1] * ee_utility(model, s, 1);
  };
  const double p = model.power_cap;
  PowerProfile best;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_per_axis; ++i) {
    for (std::size_t j = 0; j < n_per_axis; ++j) {
      PowerProfile s{numerics::linspace_at(0.0, p, n_per_axis, i),
                     numerics::linspace_at(0.0, p, n_per_axis, j)};
      const double v = welfare(s);
      if (v > best_v) {
        best_v = v;
        best = std::move(s);
      }
    }
  }
  const double step = p / static_cast<double>(n_per_axis - 1);
  return make_point(model, detail::refine(model, std::move(best), best_v,
                                           welfare, step, refine_tol));
}

/// prod_k (u_k - d_k) on the improvement region, -inf outside it.
inline double nash_product(const UtilityPair& u, const UtilityPair& d) {
  const double g1 = u[0] - d[0];
  const double g2 = u[1] - d[1];
  if (g1 < 0.0 || g2 < 0.0) return -std::numeric_limits<double>::infinity();
  return g1 * g2;
}

/// Nash bargaining solution against `disagreement`: the sampled profile with
/// the largest Nash product, refined locally. Throws EmptyImprovementRegion
/// when no sample weakly improves on the disagreement point.
inline UtilityPoint nash_bargaining(const NetworkModel& model,
                                    const UtilityPoint& disagreement,
                                    std::size_t n_per_axis = kDefaultGrid,
                                    double refine_tol = kRefineTol) {
  model.validate();
  detail::require_two_players(model);
  if (n_per_axis < 2) throw std::invalid_argument("n_per_axis must be >= 2");
  const auto& d = disagreement.utilities;
  const auto objective = [&](const PowerProfile& s) {
    return nash_product({ee_utility(model, s, 0), ee_utility(model, s, 1)}, d);
  };
  const double p = model.power_cap;
  PowerProfile best;
  double best_v = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_per_axis; ++i) {
    for (std::size_t j = 0; j < n_per_axis; ++j) {
      PowerProfile s{numerics::linspace_at(0.0, p, n_per_axis, i),
                     numerics::linspace_at(0.0, p, n_per_axis, j)};
      const double v = objective(s);
      if (v > best_v) {
        best_v = v;
        best = std::move(s);
      }
    }
  }
  if (best_v == -std::numeric_limits<double>::infinity()) {
    throw EmptyImprovementRegion(
        "no sampled profile weakly improves on the disagreement point");
  }
  const double step = p / static_cast<double>(n_per_axis - 1);
  return make_point(model, detail::refine(model, std::move(best), best_v,
                                           objective, step, refine_tol));
}

/// Frontier point in the improvement region of `baseline` closest to the
/// slope-1 line through it (equal gains for both players). Diagnostic only.
inline std::optional<UtilityPoint> fairness_projection(
    const std::vector<UtilityPoint>& frontier, const UtilityPoint& baseline) {
  std::optional<UtilityPoint> best;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const auto& pt : frontier) {
    if (!in_improvement_region(pt, baseline)) continue;
    const double gap =
        std::abs((pt.utilities[0] - baseline.utilities[0]) -
                 (pt.utilities[1] - baseline.utilities[1]));
    if (gap < best_gap) {
      best_gap = gap;
      best = pt;
    }
  }
  return best;
}

}  // namespace icgame

#endif  // ICGAME_EFFICIENCY_HPP
