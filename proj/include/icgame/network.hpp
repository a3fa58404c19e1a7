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

// Physical layer of the K-transmitter interference channel: gains, noise,
// SINR and the per-player effective gain.

#ifndef ICGAME_NETWORK_HPP
#define ICGAME_NETWORK_HPP

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "icgame/errors.hpp"

namespace icgame {

using PlayerIndex = std::size_t;

/// Channel and link-level parameters shared by every game. All quantities
/// are linear (W, not dB). `gains[j][k]` is the power gain from transmitter
/// k to receiver j.
struct NetworkModel {
  std::vector<std::vector<double>> gains;
  double noise_power = 1.0;      // sigma^2 [W]
  double processing_gain = 1.0;  // Gamma >= 1
  double power_cap = 1.0;        // p [W]
  int packet_bits = 1;           // L
  double rate_scale = 1.0;       // t [b/s]

  std::size_t num_players() const noexcept { return gains.size(); }
  double gain(PlayerIndex receiver, PlayerIndex transmitter) const {
    return gains[receiver][transmitter];
  }

  /// Throws ValidationError naming the first broken invariant.
  void validate() const {
    const std::size_t k = gains.size();
    if (k < 2) throw ValidationError("gains", "need at least 2 players");
    for (std::size_t j = 0; j < k; ++j) {
      if (gains[j].size() != k) {
        throw ValidationError("gains[" + std::to_string(j) + "]",
                              "gain matrix must be square");
      }
      for (std::size_t i = 0; i < k; ++i) {
        const std::string path =
            "gains[" + std::to_string(j) + "][" + std::to_string(i) + "]";
        if (!(gains[j][i] >= 0.0)) throw ValidationError(path, "must be >= 0");
        if (i == j && !(gains[j][i] > 0.0)) {
          throw ValidationError(path, "direct gain must be > 0");
        }
      }
    }
    if (!(noise_power > 0.0)) throw ValidationError("noise_power", "must be > 0");
    if (!(processing_gain >= 1.0)) {
      throw ValidationError("processing_gain", "must be >= 1");
    }
    if (!(power_cap > 0.0)) throw ValidationError("power_cap", "must be > 0");
    if (packet_bits < 1) throw ValidationError("packet_bits", "must be >= 1");
    if (!(rate_scale > 0.0)) throw ValidationError("rate_scale", "must be > 0");
  }

  /// Two-link example network: h11 = 0.75, h21 = 0.25, h12 = 0.5, h22 = 1,
  /// Gamma = 4, p / sigma^2 = 5, L = 20, with sigma^2 = t = 1.
  static NetworkModel reference() {
    NetworkModel m;
    m.gains = {{0.75, 0.5}, {0.25, 1.0}};
    m.noise_power = 1.0;
    m.processing_gain = 4.0;
    m.power_cap = 5.0;
    m.packet_bits = 20;
    m.rate_scale = 1.0;
    return m;
  }
};

/// Transmit powers, one per player [W].
struct PowerProfile {
  std::vector<double> powers;

  PowerProfile() = default;
  explicit PowerProfile(std::vector<double> p) : powers(std::move(p)) {}
  PowerProfile(std::initializer_list<double> p) : powers(p) {}

  std::size_t size() const noexcept { return powers.size(); }
  double operator[](PlayerIndex k) const { return powers[k]; }
  double& operator[](PlayerIndex k) { return powers[k]; }

  /// Copy with player k's power replaced.
  PowerProfile with(PlayerIndex k, double power) const {
    PowerProfile out = *this;
    out.powers.at(k) = power;
    return out;
  }

  /// Powers divided by sigma^2, the dimensionless reporting convention.
  std::vector<double> normalized(const NetworkModel& model) const {
    std::vector<double> out(powers);
    for (double& s : out) s /= model.noise_power;
    return out;
  }

  void validate(const NetworkModel& model) const {
    if (powers.size() != model.num_players()) {
      throw ValidationError("powers", "expected " +
                                          std::to_string(model.num_players()) +
                                          " entries");
    }
    for (std::size_t k = 0; k < powers.size(); ++k) {
      if (!(powers[k] >= 0.0 && powers[k] <= model.power_cap)) {
        throw ValidationError("powers[" + std::to_string(k) + "]",
                              "must lie in [0, power_cap]");
      }
    }
  }

  friend bool operator==(const PowerProfile&, const PowerProfile&) = default;
};

namespace detail {

inline void check_player(const NetworkModel& model, const PowerProfile& profile,
                         PlayerIndex k) {
  if (k >= model.num_players()) {
    throw std::out_of_range("player index " + std::to_string(k) +
                            " out of range for " +
                            std::to_string(model.num_players()) + " players");
  }
  if (profile.size() != model.num_players()) {
    throw std::invalid_argument("profile size does not match player count");
  }
}

}  // namespace detail

/// Gamma h_kk / (sigma^2 + sum_{j != k} h_kj s_j). Does not read s_k.
inline double effective_gain(const NetworkModel& model,
                             const PowerProfile& profile, PlayerIndex k) {
  detail::check_player(model, profile, k);
  double interference = model.noise_power;
  for (std::size_t j = 0; j < model.num_players(); ++j) {
    if (j != k) interference += model.gain(k, j) * profile[j];
  }
  return model.processing_gain * model.gain(k, k) / interference;
}

inline double sinr(const NetworkModel& model, const PowerProfile& profile,
                   PlayerIndex k) {
  return effective_gain(model, profile, k) * profile[k];
}

inline std::vector<double> sinrs(const NetworkModel& model,
                                 const PowerProfile& profile) {
  std::vector<double> out(model.num_players());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = sinr(model, profile, k);
  return out;
}

}  // namespace icgame

#endif  // ICGAME_NETWORK_HPP
