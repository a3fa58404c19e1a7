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

// Repeated power-control game under a grim trigger: cooperate at a target
// profile until someone deviates, then play the static equilibrium forever.

#ifndef ICGAME_REPEATED_HPP
#define ICGAME_REPEATED_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "icgame/continuous_game.hpp"
#include "icgame/errors.hpp"
#include "icgame/network.hpp"

namespace icgame {

struct TriggerPolicy {
  PowerProfile cooperate_profile;  // played while nobody has deviated
  PowerProfile punish_profile;     // played forever after a deviation

  void validate(const NetworkModel& model) const {
    try {
      cooperate_profile.validate(model);
    } catch (const ValidationError& e) {
      throw ValidationError("cooperate_profile." + e.field(), e.what());
    }
    try {
      punish_profile.validate(model);
    } catch (const ValidationError& e) {
      throw ValidationError("punish_profile." + e.field(), e.what());
    }
  }
};

/// Discount factor and horizon. An empty horizon means an infinite game,
/// evaluated with the (1 - delta) normalization.
struct DiscountSpec {
  double delta = 0.9;
  std::optional<std::size_t> horizon;

  void validate() const {
    if (!(delta >= 0.0 && delta <= 1.0)) {
      throw ValidationError("delta", "must lie in [0, 1]");
    }
  }
};

/// Finite horizon N: sum_{n=0}^{N} delta^n u_n (the stream must cover
/// stages 0..N). Infinite horizon: (1 - delta) sum_n delta^n u_n, where the
/// last entry of the stream repeats forever.
inline double discounted_utility(std::span<const double> stage_utilities,
                                 const DiscountSpec& spec) {
  spec.validate();
  if (stage_utilities.empty()) {
    throw std::invalid_argument("utility stream must be non-empty");
  }
  const double delta = spec.delta;
  if (spec.horizon) {
    const std::size_t n_stages = *spec.horizon + 1;
    if (stage_utilities.size() < n_stages) {
      throw std::invalid_argument("utility stream shorter than the horizon");
    }
    double total = 0.0;
    double weight = 1.0;
    for (std::size_t n = 0; n < n_stages; ++n) {
      total += weight * stage_utilities[n];
      weight *= delta;
    }
    return total;
  }
  if (delta >= 1.0) {
    throw std::domain_error(
        "normalized infinite-horizon utility is undefined for delta = 1");
  }
  // Prefix stages weighted (1 - delta) delta^n, then the constant tail
  // contributes delta^m u_last.
  const std::size_t m = stage_utilities.size() - 1;
  double total = 0.0;
  double weight = 1.0;
  for (std::size_t n = 0; n < m; ++n) {
    total += (1.0 - delta) * weight * stage_utilities[n];
    weight *= delta;
  }
  return total + weight * stage_utilities[m];
}

/// Best one-shot deviation value max_{s_k} u_k([s_k, coop_{-k}]).
inline double deviation_payoff(const NetworkModel& model,
                               const TriggerPolicy& policy, PlayerIndex k) {
  const auto& coop = policy.cooperate_profile;
  const double deviate = best_response_ee(model, coop, k);
  return std::max(ee_utility(model, coop.with(k, deviate), k),
                  ee_utility(model, coop, k));
}

/// Per-player utility levels that fix the trigger threshold.
struct DeviationLevels {
  double deviate;    // best one-shot deviation against cooperation
  double cooperate;  // u_k at the cooperative profile
  double punish;     // u_k at the punishment profile
};

inline std::vector<DeviationLevels> deviation_levels(const NetworkModel& model,
                                                     const TriggerPolicy& policy) {
  model.validate();
  policy.validate(model);
  std::vector<DeviationLevels> out;
  for (std::size_t k = 0; k < model.num_players(); ++k) {
    out.push_back({deviation_payoff(model, policy, k),
                   ee_utility(model, policy.cooperate_profile, k),
                   ee_utility(model, policy.punish_profile, k)});
  }
  return out;
}

/// Smallest delta at which no one-shot deviation pays:
///   max_k (dev_k - coop_k) / (dev_k - punish_k).
/// Throws NotIndividuallyRational unless coop_k > punish_k for all k.
inline double min_discount(std::span<const DeviationLevels> levels) {
  double out = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& l = levels[k];
    if (!(l.cooperate > l.punish)) {
      throw NotIndividuallyRational(
          "player " + std::to_string(k + 1) +
          " does not gain from cooperation over punishment");
    }
    const double gain = std::max(0.0, l.deviate - l.cooperate);
    out = std::max(out, gain / (gain + (l.cooperate - l.punish)));
  }
  return out;
}

inline double min_discount(const NetworkModel& model,
                           const TriggerPolicy& policy) {
  const auto levels = deviation_levels(model, policy);
  return min_discount(levels);
}

/// One stage of a trigger path.
struct TriggerStage {
  std::size_t stage;
  PowerProfile profile;
  std::vector<double> utilities;
};

/// Profiles played along the trigger path: cooperation until `deviate_at`,
/// the deviant's one-shot best response at that stage, punishment after.
/// Without a deviant every stage cooperates.
inline std::vector<TriggerStage> trigger_path(
    const NetworkModel& model, const TriggerPolicy& policy,
    std::optional<PlayerIndex> deviant, std::size_t deviate_at,
    std::size_t num_stages) {
  model.validate();
  policy.validate(model);
  if (deviant && *deviant >= model.num_players()) {
    throw std::out_of_range("deviant player index out of range");
  }
  std::optional<PowerProfile> deviation;
  if (deviant) {
    const auto& coop = policy.cooperate_profile;
    deviation = coop.with(*deviant, best_response_ee(model, coop, *deviant));
  }
  std::vector<TriggerStage> out;
  for (std::size_t n = 0; n < num_stages; ++n) {
    PowerProfile s = !deviant || n < deviate_at ? policy.cooperate_profile
                     : n == deviate_at         ? *deviation
                                               : policy.punish_profile;
    auto u = ee_utilities(model, s);
    out.push_back({n, std::move(s), std::move(u)});
  }
  return out;
}

/// Each player's discounted utility along the trigger path. With an infinite
/// horizon the value is normalized by (1 - delta) and requires delta < 1.
inline std::vector<double> simulate_trigger(const NetworkModel& model,
                                            const TriggerPolicy& policy,
                                            const DiscountSpec& spec,
                                            std::optional<PlayerIndex> deviant,
                                            std::size_t deviate_at = 0) {
  spec.validate();
  if (!spec.horizon && spec.delta >= 1.0) {
    throw std::domain_error("trigger simulation needs delta < 1");
  }
  // Infinite horizon: past deviate_at + 1 the path is constant, so that many
  // stages plus one representative of the tail determine the value.
  const std::size_t stages =
      spec.horizon ? *spec.horizon + 1 : deviate_at + 2;
  const auto path = trigger_path(model, policy, deviant, deviate_at, stages);
  std::vector<double> out;
  for (std::size_t k = 0; k < model.num_players(); ++k) {
    std::vector<double> stream;
    for (const auto& st : path) stream.push_back(st.utilities[k]);
    out.push_back(discounted_utility(stream, spec));
  }
  return out;
}

/// True when some player gains by deviating at stage 0 instead of
/// conforming, with infinite-horizon utilities at `delta`.
inline bool deviation_profitable(const NetworkModel& model,
                                 const TriggerPolicy& policy, double delta) {
  const DiscountSpec spec{delta, std::nullopt};
  const auto conform = simulate_trigger(model, policy, spec, std::nullopt);
  for (std::size_t k = 0; k < model.num_players(); ++k) {
    if (simulate_trigger(model, policy, spec, k)[k] > conform[k]) return true;
  }
  return false;
}

/// Cooperation threshold located by bisecting `deviation_profitable` over
/// delta in [0, 1). Independent of the closed form in `min_discount`.
inline double min_discount_by_simulation(const NetworkModel& model,
                                         const TriggerPolicy& policy,
                                         double tol = 1e-12) {
  if (!deviation_profitable(model, policy, 0.0)) return 0.0;
  double lo = 0.0;
  double hi = 1.0 - 1e-15;
  if (deviation_profitable(model, policy, hi)) {
    throw NotIndividuallyRational("deviation stays profitable as delta -> 1");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (deviation_profitable(model, policy, mid) ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace icgame

#endif  // ICGAME_REPEATED_HPP
