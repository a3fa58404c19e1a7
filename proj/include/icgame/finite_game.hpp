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

// Finite strategic-form games over discrete power levels: the on/off
// near-far and symmetric interference games, strict dominance, best
// responses, pure Nash equilibria and correlated-equilibrium checks.

#ifndef ICGAME_FINITE_GAME_HPP
#define ICGAME_FINITE_GAME_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "icgame/errors.hpp"
#include "icgame/network.hpp"

namespace icgame {

/// One strategy index per player.
using JointProfile = std::vector<std::size_t>;

/// Calls `fn(joint)` for every joint profile of the given shape in row-major
/// order (player 0 outermost, last player fastest).
template <class Fn>
void for_each_profile(const std::vector<std::size_t>& shape, Fn&& fn) {
  if (shape.empty()) return;
  for (std::size_t n : shape) {
    if (n == 0) return;
  }
  JointProfile joint(shape.size(), 0);
  while (true) {
    fn(std::as_const(joint));
    std::size_t k = shape.size();
    while (k > 0) {
      --k;
      if (++joint[k] < shape[k]) break;
      joint[k] = 0;
      if (k == 0) return;
    }
  }
}

/// Dense strategic-form game. Strategy values are power levels [W]; payoffs
/// hold one utility vector per joint profile in row-major order.
class FiniteGame {
 public:
  FiniteGame() = default;
  FiniteGame(std::vector<std::vector<double>> strategies,
             std::vector<std::vector<double>> payoffs)
      : strategies_(std::move(strategies)), payoffs_(std::move(payoffs)) {
    validate();
  }

  std::size_t num_players() const noexcept { return strategies_.size(); }
  std::size_t num_strategies(PlayerIndex k) const {
    return strategies_.at(k).size();
  }
  const std::vector<std::vector<double>>& strategies() const noexcept {
    return strategies_;
  }
  const std::vector<std::vector<double>>& payoffs() const noexcept {
    return payoffs_;
  }
  std::vector<std::size_t> shape() const {
    std::vector<std::size_t> out;
    for (const auto& s : strategies_) out.push_back(s.size());
    return out;
  }
  std::size_t num_profiles() const { return payoffs_.size(); }

  std::size_t flat_index(const JointProfile& joint) const {
    if (joint.size() != num_players()) {
      throw std::out_of_range("joint profile has wrong number of players");
    }
    std::size_t flat = 0;
    for (std::size_t k = 0; k < joint.size(); ++k) {
      if (joint[k] >= strategies_[k].size()) {
        throw std::out_of_range("strategy index " + std::to_string(joint[k]) +
                                " out of range for player " +
                                std::to_string(k));
      }
      flat = flat * strategies_[k].size() + joint[k];
    }
    return flat;
  }

  /// Utility vector at a joint profile.
  const std::vector<double>& payoff(const JointProfile& joint) const {
    return payoffs_[flat_index(joint)];
  }
  double payoff(const JointProfile& joint, PlayerIndex k) const {
    if (k >= num_players()) throw std::out_of_range("player index");
    return payoff(joint)[k];
  }

  void validate() const {
    if (strategies_.empty()) {
      throw ValidationError("strategies", "game needs at least one player");
    }
    std::size_t expected = 1;
    for (std::size_t k = 0; k < strategies_.size(); ++k) {
      const std::string path = "strategies[" + std::to_string(k) + "]";
      if (strategies_[k].empty()) {
        throw ValidationError(path, "strategy list must be non-empty");
      }
      for (double s : strategies_[k]) {
        if (!(s >= 0.0) || !std::isfinite(s)) {
          throw ValidationError(path, "power levels must be finite and >= 0");
        }
      }
      expected *= strategies_[k].size();
    }
    if (payoffs_.size() != expected) {
      throw ValidationError("payoffs", "expected " + std::to_string(expected) +
                                           " joint profiles, got " +
                                           std::to_string(payoffs_.size()));
    }
    for (std::size_t i = 0; i < payoffs_.size(); ++i) {
      if (payoffs_[i].size() != strategies_.size()) {
        throw ValidationError("payoffs[" + std::to_string(i) + "]",
                              "need one utility per player");
      }
    }
  }

 private:
  std::vector<std::vector<double>> strategies_;
  std::vector<std::vector<double>> payoffs_;
};

/// Reward/cost parameters of the on/off games. A link earns
/// `throughput_reward` when its SINR reaches `sinr_threshold` and pays
/// `power_cost * s / p` for transmitting at s.
struct FiniteGameParams {
  double throughput_reward = 1.0;  // t
  double power_cost = 0.01;        // c
  double sinr_threshold = 4.0;     // gamma_req

  void validate() const {
    if (!(power_cost > 0.0)) throw ValidationError("power_cost", "must be > 0");
    if (!(throughput_reward > power_cost)) {
      throw ValidationError("throughput_reward", "must exceed power_cost");
    }
    if (!(sinr_threshold > 0.0)) {
      throw ValidationError("sinr_threshold", "must be > 0");
    }
  }
};

namespace detail {

// The threshold power is chosen so the lone transmitter lands exactly on
// gamma_req; compare with a relative slack so rounding does not flip it.
inline constexpr double kThresholdRelTol = 1e-12;

// Builds the 2x2 on/off game for a channel where receiver j sees
// transmitter k with gain link_gains[j][k].
inline FiniteGame build_on_off_game(const FiniteGameParams& params,
                                    std::vector<std::vector<double>> link_gains,
                                    double noise, double processing_gain,
                                    double power) {
  NetworkModel model;
  model.gains = std::move(link_gains);
  model.noise_power = noise;
  model.processing_gain = processing_gain;
  model.power_cap = power;
  model.validate();

  const std::vector<double> levels{0.0, power};
  std::vector<std::vector<double>> payoffs;
  for_each_profile({2, 2}, [&](const JointProfile& joint) {
    const PowerProfile s{levels[joint[0]], levels[joint[1]]};
    std::vector<double> u(2);
    for (PlayerIndex k = 0; k < 2; ++k) {
      const bool decoded =
          s[k] > 0.0 && sinr(model, s, k) >=
                            params.sinr_threshold * (1.0 - kThresholdRelTol);
      u[k] = (decoded ? params.throughput_reward : 0.0) -
             params.power_cost * s[k] / power;
    }
    payoffs.push_back(std::move(u));
  });
  return FiniteGame({levels, levels}, std::move(payoffs));
}

}  // namespace detail

/// Near-far game: transmitter k reaches both receivers with gain h_k and
/// p = sigma^2 gamma_req / (h1 Gamma). Requires h1/h2 < 1/(1 + gamma_req/Gamma).
inline FiniteGame build_nfe_game(const FiniteGameParams& params, double h1,
                                 double h2, double noise,
                                 double processing_gain) {
  params.validate();
  if (!(h1 > 0.0) || !(h2 > 0.0)) {
    throw PreconditionError("near-far game needs h1 > 0 and h2 > 0");
  }
  if (!(processing_gain >= 1.0)) {
    throw PreconditionError("processing gain must be >= 1");
  }
  if (!(noise > 0.0)) throw PreconditionError("noise power must be > 0");
  const double bound = 1.0 / (1.0 + params.sinr_threshold / processing_gain);
  if (!(h1 / h2 < bound)) {
    throw PreconditionError(
        "near-far assumption violated: need h1/h2 < 1/(1 + gamma_req/Gamma), "
        "got h1/h2 = " +
        std::to_string(h1 / h2) + " >= " + std::to_string(bound));
  }
  const double power = noise * params.sinr_threshold / (h1 * processing_gain);
  return detail::build_on_off_game(params, {{h1, h2}, {h1, h2}}, noise,
                                   processing_gain, power);
}

/// Symmetric interference game: every link has gain h and
/// p = sigma^2 gamma_req / (h Gamma).
inline FiniteGame build_ic_game(const FiniteGameParams& params, double h,
                                double noise, double processing_gain) {
  params.validate();
  if (!(h > 0.0)) throw PreconditionError("interference game needs h > 0");
  if (!(processing_gain >= 1.0)) {
    throw PreconditionError("processing gain must be >= 1");
  }
  if (!(noise > 0.0)) throw PreconditionError("noise power must be > 0");
  const double power = noise * params.sinr_threshold / (h * processing_gain);
  return detail::build_on_off_game(params, {{h, h}, {h, h}}, noise,
                                   processing_gain, power);
}

namespace detail {

inline void check_strategy(const FiniteGame& game, PlayerIndex k,
                           std::size_t idx) {
  if (k >= game.num_players()) throw std::out_of_range("player index");
  if (idx >= game.num_strategies(k)) throw std::out_of_range("strategy index");
}

// Opponent profiles of player k: the full shape with player k pinned to a
// single slot.
inline std::vector<std::size_t> opponent_shape(const FiniteGame& game,
                                               PlayerIndex k) {
  auto shape = game.shape();
  shape[k] = 1;
  return shape;
}

}  // namespace detail

/// Strategy `idx` of player k is strictly dominated when a single alternative
/// does strictly better against every opponent profile. Returns the index of
/// the first such alternative.
inline std::optional<std::size_t> strictly_dominated(const FiniteGame& game,
                                                     PlayerIndex k,
                                                     std::size_t idx) {
  detail::check_strategy(game, k, idx);
  const auto opp_shape = detail::opponent_shape(game, k);
  for (std::size_t alt = 0; alt < game.num_strategies(k); ++alt) {
    if (alt == idx) continue;
    bool dominates = true;
    for_each_profile(opp_shape, [&](const JointProfile& opp) {
      if (!dominates) return;
      JointProfile a = opp;
      JointProfile b = opp;
      a[k] = idx;
      b[k] = alt;
      if (!(game.payoff(a, k) < game.payoff(b, k))) dominates = false;
    });
    if (dominates) return alt;
  }
  return std::nullopt;
}

/// A subgame of some original game, remembering where each surviving
/// strategy came from.
struct ReducedGame {
  FiniteGame game;
  std::vector<std::vector<std::size_t>> original_index;

  static ReducedGame from(const FiniteGame& game) {
    ReducedGame out{game, {}};
    for (std::size_t k = 0; k < game.num_players(); ++k) {
      std::vector<std::size_t> ids(game.num_strategies(k));
      for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = i;
      out.original_index.push_back(std::move(ids));
    }
    return out;
  }
};

/// Drops strategy `idx` of player k. The player must keep at least one
/// strategy.
inline ReducedGame remove_strategy(const ReducedGame& in, PlayerIndex k,
                                   std::size_t idx) {
  detail::check_strategy(in.game, k, idx);
  if (in.game.num_strategies(k) < 2) {
    throw std::invalid_argument("cannot remove a player's last strategy");
  }
  auto strategies = in.game.strategies();
  strategies[k].erase(strategies[k].begin() + static_cast<std::ptrdiff_t>(idx));
  auto shape = in.game.shape();
  shape[k] -= 1;
  std::vector<std::vector<double>> payoffs;
  for_each_profile(shape, [&](const JointProfile& joint) {
    JointProfile src = joint;
    if (src[k] >= idx) ++src[k];
    payoffs.push_back(in.game.payoff(src));
  });
  ReducedGame out{FiniteGame(std::move(strategies), std::move(payoffs)),
                  in.original_index};
  out.original_index[k].erase(out.original_index[k].begin() +
                              static_cast<std::ptrdiff_t>(idx));
  return out;
}

struct Elimination {
  std::size_t round;
  PlayerIndex player;
  std::size_t removed;    // index in the original game
  std::size_t dominator;  // index in the original game
};

struct DominanceResult {
  ReducedGame reduced;
  std::vector<Elimination> log;
};

/// Iterated elimination of strictly dominated strategies. Each round sweeps
/// the players in order and removes one dominated strategy at a time until
/// the player has none left; rounds repeat until a full sweep removes
/// nothing. For strict dominance the survivor set does not depend on order.
inline DominanceResult iterated_dominance(const FiniteGame& game) {
  DominanceResult result{ReducedGame::from(game), {}};
  for (std::size_t round = 1;; ++round) {
    bool removed_any = false;
    for (PlayerIndex k = 0; k < game.num_players(); ++k) {
      bool removed = true;
      while (removed && result.reduced.game.num_strategies(k) > 1) {
        removed = false;
        for (std::size_t i = 0; i < result.reduced.game.num_strategies(k);
             ++i) {
          const auto dom = strictly_dominated(result.reduced.game, k, i);
          if (!dom) continue;
          const auto& ids = result.reduced.original_index[k];
          result.log.push_back({round, k, ids[i], ids[*dom]});
          result.reduced = remove_strategy(result.reduced, k, i);
          removed = removed_any = true;
          break;
        }
      }
    }
    if (!removed_any) break;
  }
  return result;
}

/// All maximizers of u_k against the opponents in `joint` (entry k ignored).
/// Ties are kept.
inline std::vector<std::size_t> best_responses_finite(const FiniteGame& game,
                                                      PlayerIndex k,
                                                      JointProfile joint) {
  if (k >= game.num_players()) throw std::out_of_range("player index");
  joint.at(k) = 0;
  game.flat_index(joint);  // range-checks opponents
  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < game.num_strategies(k); ++i) {
    joint[k] = i;
    const double u = game.payoff(joint, k);
    if (u > best) {
      best = u;
      out.assign(1, i);
    } else if (u == best) {
      out.push_back(i);
    }
  }
  return out;
}

/// Joint profiles in which every player's strategy is a best response.
inline std::vector<JointProfile> pure_nash(const FiniteGame& game) {
  std::vector<JointProfile> out;
  for_each_profile(game.shape(), [&](const JointProfile& joint) {
    for (PlayerIndex k = 0; k < game.num_players(); ++k) {
      const auto br = best_responses_finite(game, k, joint);
      if (std::find(br.begin(), br.end(), joint[k]) == br.end()) return;
    }
    out.push_back(joint);
  });
  return out;
}

/// Probability over joint profiles, in the game's row-major order.
struct JointDistribution {
  std::vector<double> probabilities;

  static constexpr double kNormTol = 1e-12;

  void validate(const FiniteGame& game) const {
    if (probabilities.size() != game.num_profiles()) {
      throw ValidationError("probabilities",
                            "size must equal the number of joint profiles");
    }
    double total = 0.0;
    for (double q : probabilities) {
      if (!(q >= 0.0)) throw ValidationError("probabilities", "must be >= 0");
      total += q;
    }
    if (std::abs(total - 1.0) > kNormTol) {
      throw ValidationError("probabilities", "must sum to 1");
    }
  }

  static JointDistribution point_mass(const FiniteGame& game,
                                      const JointProfile& joint) {
    JointDistribution d{std::vector<double>(game.num_profiles(), 0.0)};
    d.probabilities[game.flat_index(joint)] = 1.0;
    return d;
  }

  static JointDistribution uniform_over(const FiniteGame& game,
                                        const std::vector<JointProfile>& support) {
    if (support.empty()) {
      throw std::invalid_argument("uniform_over needs a non-empty support");
    }
    JointDistribution d{std::vector<double>(game.num_profiles(), 0.0)};
    for (const auto& joint : support) {
      d.probabilities[game.flat_index(joint)] +=
          1.0 / static_cast<double>(support.size());
    }
    return d;
  }
};

struct CeCheck {
  bool holds = false;
  double worst_slack = 0.0;  // min over all obedience constraints
};

inline constexpr double kDefaultCeTol = 1e-9;

/// Checks the obedience constraints
///   sum_{opp} q(s_k, opp) [u_k(s_k, opp) - u_k(s_k', opp)] >= -tol
/// for every player k and every pair s_k != s_k'.
inline CeCheck is_correlated_equilibrium(const FiniteGame& game,
                                         const JointDistribution& dist,
                                         double tol = kDefaultCeTol) {
  dist.validate(game);
  bool any = false;
  double worst = std::numeric_limits<double>::infinity();
  for (PlayerIndex k = 0; k < game.num_players(); ++k) {
    const auto opp_shape = detail::opponent_shape(game, k);
    const std::size_t n = game.num_strategies(k);
    for (std::size_t rec = 0; rec < n; ++rec) {
      for (std::size_t dev = 0; dev < n; ++dev) {
        if (dev == rec) continue;
        double gain = 0.0;
        for_each_profile(opp_shape, [&](const JointProfile& opp) {
          JointProfile a = opp;
          JointProfile b = opp;
          a[k] = rec;
          b[k] = dev;
          gain += dist.probabilities[game.flat_index(a)] *
                  (game.payoff(a, k) - game.payoff(b, k));
        });
        worst = std::min(worst, gain);
        any = true;
      }
    }
  }
  if (!any) worst = 0.0;
  return {worst >= -tol, worst};
}

}  // namespace icgame

#endif  // ICGAME_FINITE_GAME_HPP
