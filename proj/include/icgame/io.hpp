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

// JSON and CSV encodings of the library types.
//
// JSON follows nlohmann's ADL convention, so `json j = report;` and
// `j.get<SolveReport>()` work directly. Decoding validates: a decoded value
// satisfies the same invariants as one produced by the solvers.
//
// CSV output uses 17 significant digits so files are exact and
// byte-reproducible.

#ifndef ICGAME_IO_HPP
#define ICGAME_IO_HPP

#include <cstddef>
#include <iomanip>
#include <ios>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "icgame/continuous_game.hpp"
#include "icgame/efficiency.hpp"
#include "icgame/errors.hpp"
#include "icgame/finite_game.hpp"
#include "icgame/network.hpp"
#include "icgame/repeated.hpp"
#include "json.hpp"

namespace icgame {

using nlohmann::json;

namespace detail {

template <class T>
T require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(where + "." + key, "missing");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(where + "." + key, e.what());
  }
}

}  // namespace detail

// PowerProfile is encoded as a bare array of powers.
inline void to_json(json& j, const PowerProfile& p) { j = p.powers; }
inline void from_json(const json& j, PowerProfile& p) {
  p.powers = j.get<std::vector<double>>();
}

inline void to_json(json& j, const NetworkModel& m) {
  j = json{{"gains", m.gains},
           {"noise_power", m.noise_power},
           {"processing_gain", m.processing_gain},
           {"power_cap", m.power_cap},
           {"packet_bits", m.packet_bits},
           {"rate_scale", m.rate_scale}};
}
inline void from_json(const json& j, NetworkModel& m) {
  m.gains = detail::require<std::vector<std::vector<double>>>(j, "gains", "network");
  m.noise_power = detail::require<double>(j, "noise_power", "network");
  m.processing_gain = detail::require<double>(j, "processing_gain", "network");
  m.power_cap = detail::require<double>(j, "power_cap", "network");
  m.packet_bits = detail::require<int>(j, "packet_bits", "network");
  m.rate_scale = detail::require<double>(j, "rate_scale", "network");
  m.validate();
}

/// {"strategies": [[...], ...], "payoffs": [[u1, u2], ...]}, payoffs in
/// row-major order with player 1 outermost.
inline void to_json(json& j, const FiniteGame& g) {
  j = json{{"strategies", g.strategies()}, {"payoffs", g.payoffs()}};
}
inline void from_json(const json& j, FiniteGame& g) {
  g = FiniteGame(
      detail::require<std::vector<std::vector<double>>>(j, "strategies", "game"),
      detail::require<std::vector<std::vector<double>>>(j, "payoffs", "game"));
}

inline void to_json(json& j, const Elimination& e) {
  j = json{{"round", e.round},
           {"player", e.player + 1},
           {"removed", e.removed},
           {"dominator", e.dominator}};
}

inline void to_json(json& j, const SolveReport& r) {
  j = json{{"solution", r.solution},
           {"utilities", r.utilities},
           {"normalized_utilities", r.normalized_utilities},
           {"sinrs", r.sinrs},
           {"iterations", r.iterations},
           {"converged", r.converged},
           {"residual", r.residual},
           {"trace", r.trace}};
}
inline void from_json(const json& j, SolveReport& r) {
  const std::string where = "report";
  r.solution = detail::require<PowerProfile>(j, "solution", where);
  r.utilities = detail::require<std::vector<double>>(j, "utilities", where);
  r.normalized_utilities =
      detail::require<std::vector<double>>(j, "normalized_utilities", where);
  r.sinrs = detail::require<std::vector<double>>(j, "sinrs", where);
  r.iterations = detail::require<std::size_t>(j, "iterations", where);
  r.converged = detail::require<bool>(j, "converged", where);
  r.residual = detail::require<double>(j, "residual", where);
  r.trace = detail::require<std::vector<PowerProfile>>(j, "trace", where);
  const std::size_t k = r.solution.size();
  if (r.utilities.size() != k || r.normalized_utilities.size() != k ||
      r.sinrs.size() != k) {
    throw ValidationError(where, "per-player vectors differ in length");
  }
  if (!r.trace.empty() && r.trace.size() != r.iterations + 1) {
    throw ValidationError(where + ".trace", "length must be iterations + 1");
  }
  if (!(r.residual >= 0.0)) {
    throw ValidationError(where + ".residual", "must be >= 0");
  }
}

inline void to_json(json& j, const UtilityPoint& p) {
  j = json{{"profile", p.profile},
           {"utilities", p.utilities},
           {"normalized", p.normalized}};
}
inline void from_json(const json& j, UtilityPoint& p) {
  p.profile = detail::require<PowerProfile>(j, "profile", "point");
  p.utilities = detail::require<UtilityPair>(j, "utilities", "point");
  p.normalized = detail::require<UtilityPair>(j, "normalized", "point");
  if (p.profile.size() != 2) {
    throw ValidationError("point.profile", "expected 2 powers");
  }
}

inline void to_json(json& j, const DeviationLevels& l) {
  j = json{{"deviate", l.deviate},
           {"cooperate", l.cooperate},
           {"punish", l.punish}};
}
inline void from_json(const json& j, DeviationLevels& l) {
  l.deviate = detail::require<double>(j, "deviate", "levels");
  l.cooperate = detail::require<double>(j, "cooperate", "levels");
  l.punish = detail::require<double>(j, "punish", "levels");
}

// ---------------------------------------------------------------------------
// CSV

/// Scoped 17-significant-digit formatting on a stream.
class CsvPrecision {
 public:
  explicit CsvPrecision(std::ostream& os)
      : os_(os), flags_(os.flags()), precision_(os.precision()) {
    os_.unsetf(std::ios::floatfield);
    os_.precision(17);
  }
  ~CsvPrecision() {
    os_.flags(flags_);
    os_.precision(precision_);
  }
  CsvPrecision(const CsvPrecision&) = delete;
  CsvPrecision& operator=(const CsvPrecision&) = delete;

 private:
  std::ostream& os_;
  std::ios::fmtflags flags_;
  std::streamsize precision_;
};

/// iter, s_1..s_K, u_1..u_K, gamma_1..gamma_K for every profile in the trace.
inline void write_trace_csv(std::ostream& os, const NetworkModel& model,
                            const SolveReport& report) {
  CsvPrecision guard(os);
  const std::size_t k = model.num_players();
  os << "iter";
  for (const char* col : {"s_", "u_", "gamma_"}) {
    for (std::size_t i = 1; i <= k; ++i) os << ',' << col << i;
  }
  os << '\n';
  for (std::size_t n = 0; n < report.trace.size(); ++n) {
    const auto& s = report.trace[n];
    os << n;
    for (double x : s.powers) os << ',' << x;
    for (double x : ee_utilities(model, s)) os << ',' << x;
    for (double x : sinrs(model, s)) os << ',' << x;
    os << '\n';
  }
}

/// s1, s2, u1, u2, u1_norm, u2_norm, on_frontier.
inline void write_grid_csv(std::ostream& os,
                           const std::vector<UtilityPoint>& grid,
                           const std::vector<UtilityPoint>& frontier) {
  CsvPrecision guard(os);
  std::set<std::vector<double>> on;
  for (const auto& p : frontier) on.insert(p.profile.powers);
  os << "s1,s2,u1,u2,u1_norm,u2_norm,on_frontier\n";
  for (const auto& p : grid) {
    os << p.profile[0] << ',' << p.profile[1] << ',' << p.utilities[0] << ','
       << p.utilities[1] << ',' << p.normalized[0] << ',' << p.normalized[1]
       << ',' << (on.count(p.profile.powers) ? 1 : 0) << '\n';
  }
}

/// label, s1, s2, u1, u2, u1_norm, u2_norm for a handful of named points.
inline void write_points_csv(
    std::ostream& os,
    const std::vector<std::pair<std::string, UtilityPoint>>& points) {
  CsvPrecision guard(os);
  os << "label,s1,s2,u1,u2,u1_norm,u2_norm\n";
  for (const auto& [label, p] : points) {
    os << label << ',' << p.profile[0] << ',' << p.profile[1] << ','
       << p.utilities[0] << ',' << p.utilities[1] << ',' << p.normalized[0]
       << ',' << p.normalized[1] << '\n';
  }
}

/// stage, s_1, s_2, u_1, u_2, cum_u1, cum_u2. The cumulative columns are the
/// (1 - delta)-normalized discounted sums up to and including the stage.
inline void write_trigger_csv(std::ostream& os,
                              const std::vector<TriggerStage>& path,
                              double delta) {
  CsvPrecision guard(os);
  os << "stage,s_1,s_2,u_1,u_2,cum_u1,cum_u2\n";
  double weight = 1.0;
  double cum[2] = {0.0, 0.0};
  for (const auto& st : path) {
    for (int k = 0; k < 2; ++k) cum[k] += (1.0 - delta) * weight * st.utilities[k];
    weight *= delta;
    os << st.stage << ',' << st.profile[0] << ',' << st.profile[1] << ','
       << st.utilities[0] << ',' << st.utilities[1] << ',' << cum[0] << ','
       << cum[1] << '\n';
  }
}

}  // namespace icgame

#endif  // ICGAME_IO_HPP
