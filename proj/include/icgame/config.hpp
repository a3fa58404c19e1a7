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

// Run configuration: a single JSON file describing the network, the finite
// game scenario, pricing, welfare weights, search settings and output.
//
//   {
//     "network": {"gains": [[0.75, 0.5], [0.25, 1.0]], "noise_power": 1,
//                 "processing_gain": 4, "power_cap": 5, "packet_bits": 20,
//                 "rate_scale": 1},
//     "finite":  {"scenario": "nfe", "throughput_reward": 1,
//                 "power_cost": 0.01, "sinr_threshold": 4,
//                 "noise_power": 1, "processing_gain": 4,
//                 "nfe": {"h1": 0.1, "h2": 1}, "ic": {"h": 1}},
//     "pricing": {"alpha": 0.12},
//     "weights": [0.5, 0.5],
//     "search":  {"n_per_axis": 400, "br_tol": 1e-10, "max_iter": 10000,
//                 "refine_tol": 1e-10, "priced_tol": 1e-10},
//     "output":  {"dir": "results", "json": true, "csv": true}
//   }
//
// Every section except "network" is optional. Unknown keys are rejected.

#ifndef ICGAME_CONFIG_HPP
#define ICGAME_CONFIG_HPP

#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "icgame/continuous_game.hpp"
#include "icgame/efficiency.hpp"
#include "icgame/errors.hpp"
#include "icgame/finite_game.hpp"
#include "icgame/io.hpp"
#include "icgame/network.hpp"

namespace icgame {

/// Config file could not be opened or read.
class ConfigIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed JSON, with the 1-based position of the failure.
class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("parse error at line " + std::to_string(line) +
                           ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

enum class FiniteScenario { kNearFar, kInterference };

struct FiniteConfig {
  FiniteGameParams params;
  FiniteScenario scenario = FiniteScenario::kNearFar;
  double noise_power = 1.0;
  double processing_gain = 4.0;
  double nfe_h1 = 0.1;
  double nfe_h2 = 1.0;
  double ic_h = 1.0;
};

struct SearchConfig {
  std::size_t n_per_axis = kDefaultGrid;
  double br_tol = 1e-10;
  std::size_t max_iter = 10'000;
  double refine_tol = kRefineTol;
  double priced_tol = kPricedBrTol;
};

struct OutputConfig {
  std::string dir = ".";
  bool json = true;
  bool csv = true;
};

struct RunConfig {
  NetworkModel network = NetworkModel::reference();
  std::optional<FiniteConfig> finite;
  std::optional<PricingConfig> pricing;
  Weights weights{{0.5, 0.5}};
  SearchConfig search;
  OutputConfig output;

  BrOptions br_options() const { return {search.br_tol, search.max_iter}; }
};

namespace detail {

// Walks a JSON object, tracking the dotted path for error messages.
class ConfigReader {
 public:
  ConfigReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ValidationError(path_, "must be an object");
  }

  void allow_only(std::initializer_list<const char*> keys) const {
    for (const auto& [key, _] : j_.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) throw ValidationError(at(key), "unknown key");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }

  ConfigReader child(const char* key) const { return {j_.at(key), at(key)}; }

  double number(const char* key, double fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number()) throw ValidationError(at(key), "must be a number");
    return v.get<double>();
  }

  std::size_t count(const char* key, std::size_t fallback) const {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ValidationError(at(key), "must be a non-negative integer");
    }
    return v.get<std::size_t>();
  }

  bool flag(const char* key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) throw ValidationError(at(key), "must be a boolean");
    return j_.at(key).get<bool>();
  }

  std::string text(const char* key, const std::string& fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_string()) throw ValidationError(at(key), "must be a string");
    return j_.at(key).get<std::string>();
  }

  std::vector<double> numbers(const char* key) const {
    const auto& v = j_.at(key);
    if (!v.is_array()) throw ValidationError(at(key), "must be an array");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ValidationError(at(key) + "[" + std::to_string(i) + "]",
                              "must be a number");
      }
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  std::string at(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }
  const std::string& path() const noexcept { return path_; }
  const json& raw() const noexcept { return j_; }

 private:
  const json& j_;
  std::string path_;
};

// Re-raises a ValidationError with `prefix` prepended to its field path.
template <class Fn>
void with_prefix(const std::string& prefix, Fn&& fn) {
  try {
    fn();
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    throw ValidationError(prefix + "." + e.field(),
                          colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
}

inline NetworkModel read_network(const ConfigReader& r) {
  r.allow_only({"gains", "noise_power", "processing_gain", "power_cap",
                "packet_bits", "rate_scale"});
  NetworkModel m;
  if (!r.has("gains")) throw ValidationError(r.at("gains"), "missing");
  const auto& g = r.raw().at("gains");
  if (!g.is_array()) throw ValidationError(r.at("gains"), "must be a nested array");
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (!g[j].is_array()) {
      throw ValidationError(r.at("gains") + "[" + std::to_string(j) + "]",
                            "must be an array");
    }
    std::vector<double> row;
    for (std::size_t k = 0; k < g[j].size(); ++k) {
      if (!g[j][k].is_number()) {
        throw ValidationError(r.at("gains") + "[" + std::to_string(j) + "][" +
                                  std::to_string(k) + "]",
                              "must be a number");
      }
      row.push_back(g[j][k].get<double>());
    }
    m.gains.push_back(std::move(row));
  }
  const auto need = [&](const char* key) {
    if (!r.has(key)) throw ValidationError(r.at(key), "missing");
    return r.number(key, 0.0);
  };
  m.noise_power = need("noise_power");
  m.processing_gain = need("processing_gain");
  m.power_cap = need("power_cap");
  if (!r.has("packet_bits")) throw ValidationError(r.at("packet_bits"), "missing");
  m.packet_bits = static_cast<int>(r.count("packet_bits", 0));
  m.rate_scale = need("rate_scale");
  with_prefix(r.path(), [&] { m.validate(); });
  return m;
}

inline FiniteConfig read_finite(const ConfigReader& r) {
  r.allow_only({"scenario", "throughput_reward", "power_cost", "sinr_threshold",
                "noise_power", "processing_gain", "nfe", "ic"});
  FiniteConfig f;
  const std::string scenario = r.text("scenario", "nfe");
  if (scenario == "nfe") {
    f.scenario = FiniteScenario::kNearFar;
  } else if (scenario == "ic") {
    f.scenario = FiniteScenario::kInterference;
  } else {
    throw ValidationError(r.at("scenario"), "must be \"nfe\" or \"ic\"");
  }
  f.params.throughput_reward = r.number("throughput_reward", f.params.throughput_reward);
  f.params.power_cost = r.number("power_cost", f.params.power_cost);
  f.params.sinr_threshold = r.number("sinr_threshold", f.params.sinr_threshold);
  f.noise_power = r.number("noise_power", f.noise_power);
  f.processing_gain = r.number("processing_gain", f.processing_gain);
  if (r.has("nfe")) {
    const auto nfe = r.child("nfe");
    nfe.allow_only({"h1", "h2"});
    f.nfe_h1 = nfe.number("h1", f.nfe_h1);
    f.nfe_h2 = nfe.number("h2", f.nfe_h2);
  }
  if (r.has("ic")) {
    const auto ic = r.child("ic");
    ic.allow_only({"h"});
    f.ic_h = ic.number("h", f.ic_h);
  }
  with_prefix(r.path(), [&] { f.params.validate(); });
  if (!(f.noise_power > 0.0)) throw ValidationError(r.at("noise_power"), "must be > 0");
  if (!(f.processing_gain >= 1.0)) {
    throw ValidationError(r.at("processing_gain"), "must be >= 1");
  }
  for (auto [path, v] : {std::pair{"nfe.h1", f.nfe_h1}, std::pair{"nfe.h2", f.nfe_h2},
                         std::pair{"ic.h", f.ic_h}}) {
    if (!(v > 0.0)) throw ValidationError(r.at(path), "must be > 0");
  }
  return f;
}

inline std::size_t line_of(const std::string& text, std::size_t byte,
                           std::size_t& column) {
  std::size_t line = 1;
  column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return line;
}

}  // namespace detail

/// Parses and validates a config document. Omitted optional sections take
/// their defaults; a missing "pricing" section leaves alpha unset.
inline RunConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t column = 0;
    const std::size_t line = detail::line_of(text, e.byte, column);
    throw ConfigParseError(line, column, e.what());
  }
  const detail::ConfigReader root(doc, "");
  root.allow_only({"network", "finite", "pricing", "weights", "search", "output"});

  RunConfig cfg;
  if (!root.has("network")) throw ValidationError("network", "missing");
  cfg.network = detail::read_network(root.child("network"));

  if (root.has("finite")) cfg.finite = detail::read_finite(root.child("finite"));

  if (root.has("pricing")) {
    const auto pr = root.child("pricing");
    pr.allow_only({"alpha"});
    if (!pr.has("alpha")) throw ValidationError("pricing.alpha", "missing");
    PricingConfig pricing{pr.number("alpha", 0.0)};
    detail::with_prefix("pricing", [&] { pricing.validate(); });
    cfg.pricing = pricing;
  }

  if (root.has("weights")) {
    cfg.weights.w = root.numbers("weights");
    cfg.weights.validate(cfg.network.num_players());
  }

  if (root.has("search")) {
    const auto s = root.child("search");
    s.allow_only({"n_per_axis", "br_tol", "max_iter", "refine_tol", "priced_tol"});
    cfg.search.n_per_axis = s.count("n_per_axis", cfg.search.n_per_axis);
    cfg.search.br_tol = s.number("br_tol", cfg.search.br_tol);
    cfg.search.max_iter = s.count("max_iter", cfg.search.max_iter);
    cfg.search.refine_tol = s.number("refine_tol", cfg.search.refine_tol);
    cfg.search.priced_tol = s.number("priced_tol", cfg.search.priced_tol);
    if (cfg.search.n_per_axis < 2) {
      throw ValidationError("search.n_per_axis", "must be >= 2");
    }
    if (cfg.search.max_iter < 1) throw ValidationError("search.max_iter", "must be >= 1");
    for (auto [path, v] : {std::pair{"search.br_tol", cfg.search.br_tol},
                           std::pair{"search.refine_tol", cfg.search.refine_tol},
                           std::pair{"search.priced_tol", cfg.search.priced_tol}}) {
      if (!(v > 0.0)) throw ValidationError(path, "must be > 0");
    }
  }

  if (root.has("output")) {
    const auto o = root.child("output");
    o.allow_only({"dir", "json", "csv"});
    cfg.output.dir = o.text("dir", cfg.output.dir);
    cfg.output.json = o.flag("json", cfg.output.json);
    cfg.output.csv = o.flag("csv", cfg.output.csv);
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigIoError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw ConfigIoError("cannot read config file: " + path);
  return parse_config(buf.str());
}

}  // namespace icgame

#endif  // ICGAME_CONFIG_HPP
