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

// Command implementations behind the `icgame` executable. Each command
// prints a console summary and writes `<name>.json` / `<name>.csv` into the
// output directory. They return process exit codes:
//   0 success, 2 validation error, 3 solver failure, 4 I/O error.

#ifndef ICGAME_COMMANDS_HPP
#define ICGAME_COMMANDS_HPP

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "icgame/config.hpp"
#include "icgame/continuous_game.hpp"
#include "icgame/efficiency.hpp"
#include "icgame/errors.hpp"
#include "icgame/finite_game.hpp"
#include "icgame/io.hpp"
#include "icgame/repeated.hpp"

namespace icgame::cli {

enum ExitCode : int {
  kOk = 0,
  kValidation = 2,
  kSolverFailure = 3,
  kIo = 4,
};

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver finished without meeting its convergence criterion. Artifacts
/// are written before this is raised.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Context {
  RunConfig config;
  std::filesystem::path out_dir;
  bool json_stdout = false;  // print the JSON artifact instead of a summary
  bool quiet = false;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;

  std::ostream& console() const { return *out; }
  bool talk() const { return !quiet && !json_stdout; }
};

namespace detail {

inline std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

inline std::string vec(const std::vector<double>& xs, int digits) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ", ";
    s += fixed(xs[i], digits);
  }
  return s + "]";
}

inline std::string vec(const UtilityPair& xs, int digits) {
  return vec(std::vector<double>(xs.begin(), xs.end()), digits);
}

inline void write_file(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& body) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw OutputError("cannot write " + path.string());
  body(f);
  f.flush();
  if (!f) throw OutputError("failed writing " + path.string());
}

inline void emit_json(const Context& ctx, const std::string& name,
                      const json& doc) {
  if (ctx.config.output.json) {
    write_file(ctx.out_dir / (name + ".json"),
               [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
  }
  if (ctx.json_stdout && !ctx.quiet) ctx.console() << doc.dump(2) << '\n';
}

inline void emit_csv(const Context& ctx, const std::string& name,
                     const std::function<void(std::ostream&)>& body) {
  if (ctx.config.output.csv) write_file(ctx.out_dir / (name + ".csv"), body);
}

inline std::string level_name(double s, double p) {
  if (s == 0.0) return "0";
  if (s == p) return "p";
  return fixed(s, 3);
}

inline std::string profile_name(const FiniteGame& g, const JointProfile& joint,
                                double p) {
  std::string s = "[";
  for (std::size_t k = 0; k < joint.size(); ++k) {
    if (k) s += ", ";
    s += level_name(g.strategies()[k][joint[k]], p);
  }
  return s + "]";
}

inline void print_payoff_matrix(std::ostream& os, const FiniteGame& g,
                                double p) {
  const auto cell = [](const std::vector<double>& u) {
    return "(" + fixed(u[0], 3) + ", " + fixed(u[1], 3) + ")";
  };
  os << std::left << std::setw(10) << "";
  for (double s2 : g.strategies()[1]) {
    os << std::setw(18) << ("s2 = " + level_name(s2, p));
  }
  os << '\n';
  for (std::size_t i = 0; i < g.num_strategies(0); ++i) {
    os << std::setw(10) << ("s1 = " + level_name(g.strategies()[0][i], p));
    for (std::size_t j = 0; j < g.num_strategies(1); ++j) {
      os << std::setw(18) << cell(g.payoff({i, j}));
    }
    os << '\n';
  }
  os << std::right;
}

inline SolveReport solve_ne(const Context& ctx) {
  return ne_continuous(ctx.config.network, ctx.config.br_options());
}

inline void require_converged(const SolveReport& r, const std::string& what) {
  if (!r.converged) {
    throw NonConvergence(what + " did not converge (residual " +
                         std::to_string(r.residual) + " after " +
                         std::to_string(r.iterations) + " iterations)");
  }
}

}  // namespace detail

/// Finite on/off game: payoff matrix, iterated dominance, pure NE and (for
/// the interference scenario) the correlated-equilibrium check of the
/// uniform mixture over pure equilibria.
inline int cmd_finite(const Context& ctx,
                      std::optional<FiniteScenario> scenario_override,
                      bool ce_uniform) {
  if (!ctx.config.finite) {
    throw ValidationError("finite", "section required by the finite command");
  }
  const FiniteConfig& fc = *ctx.config.finite;
  const FiniteScenario scenario = scenario_override.value_or(fc.scenario);
  const bool nfe = scenario == FiniteScenario::kNearFar;
  const FiniteGame game =
      nfe ? build_nfe_game(fc.params, fc.nfe_h1, fc.nfe_h2, fc.noise_power,
                           fc.processing_gain)
          : build_ic_game(fc.params, fc.ic_h, fc.noise_power, fc.processing_gain);
  const double p = game.strategies()[0].back();
  const auto dominance = iterated_dominance(game);
  const auto equilibria = pure_nash(game);

  json doc{{"scenario", nfe ? "nfe" : "ic"},
           {"power", p},
           {"game", game},
           {"eliminations", dominance.log},
           {"survivors", dominance.reduced.original_index},
           {"pure_nash", equilibria}};

  std::optional<CeCheck> ce;
  if ((ce_uniform || !nfe) && !equilibria.empty()) {
    ce = is_correlated_equilibrium(
        game, JointDistribution::uniform_over(game, equilibria));
    doc["ce_uniform_over_nash"] = {{"holds", ce->holds},
                                   {"worst_slack", ce->worst_slack}};
  }

  if (ctx.talk()) {
    auto& os = ctx.console();
    os << (nfe ? "Near-far game" : "Interference game") << " (p = "
       << detail::fixed(p, 3) << " W)\n";
    detail::print_payoff_matrix(os, game, p);
    os << "Iterated dominance:";
    if (dominance.log.empty()) os << " no strictly dominated strategies";
    os << '\n';
    for (const auto& e : dominance.log) {
      const auto& levels = game.strategies()[e.player];
      const std::string who = "s" + std::to_string(e.player + 1);
      os << "  round " << e.round << ": player " << e.player + 1 << " drops "
         << who << " = " << detail::level_name(levels[e.removed], p)
         << " (dominated by " << who << " = "
         << detail::level_name(levels[e.dominator], p) << ")\n";
    }
    os << "Pure Nash equilibria:";
    for (const auto& ne : equilibria) {
      os << ' ' << detail::profile_name(game, ne, p);
    }
    os << '\n';
    if (ce) {
      os << "Correlated equilibrium (uniform over pure NE): "
         << (ce->holds ? "pass" : "fail") << ", worst slack "
         << detail::fixed(ce->worst_slack, 6) << '\n';
    }
  }
  detail::emit_json(ctx, "finite", doc);
  return kOk;
}

inline int cmd_ne(const Context& ctx) {
  const auto& model = ctx.config.network;
  const auto report = detail::solve_ne(ctx);
  const double gstar = gamma_star(model.packet_bits);
  json doc{{"network", model},
           {"gamma_star", gstar},
           {"normalized_solution", report.solution.normalized(model)},
           {"report", report}};
  if (ctx.talk()) {
    auto& os = ctx.console();
    os << "Nash equilibrium (" << report.iterations << " best-response rounds, "
       << (report.converged ? "converged" : "NOT converged") << ")\n"
       << "  s*/σ² = " << detail::vec(report.solution.normalized(model), 2) << '\n'
       << "  σ²u/t = " << detail::vec(report.normalized_utilities, 3) << '\n'
       << "  SINR  = " << detail::vec(report.sinrs, 3) << "  (γ* = "
       << detail::fixed(gstar, 3) << ")\n";
  }
  detail::emit_json(ctx, "ne", doc);
  detail::emit_csv(ctx, "ne", [&](std::ostream& os) {
    write_trace_csv(os, model, report);
  });
  detail::require_converged(report, "best-response dynamics");
  return kOk;
}

/// Parses "lo:hi:steps".
inline std::tuple<double, double, std::size_t> parse_sweep(const std::string& s) {
  double lo = 0.0;
  double hi = 0.0;
  long long steps = 0;
  char c1 = 0;
  char c2 = 0;
  std::istringstream in(s);
  if (!(in >> lo >> c1 >> hi >> c2 >> steps) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof() || steps < 1 || !(lo >= 0.0) || !(hi >= lo)) {
    throw ValidationError("--sweep", "expected lo:hi:steps with 0 <= lo <= hi, steps >= 1");
  }
  return {lo, hi, static_cast<std::size_t>(steps)};
}

/// Priced equilibrium at one alpha, or a sweep over alpha.
inline int cmd_pricing(const Context& ctx, std::optional<double> alpha_flag,
                       std::optional<std::string> sweep) {
  const auto& model = ctx.config.network;
  const auto& search = ctx.config.search;
  if (sweep) {
    const auto [lo, hi, steps] = parse_sweep(*sweep);
    json rows = json::array();
    bool all_converged = true;
    std::vector<std::pair<double, SolveReport>> results;
    for (std::size_t i = 0; i < steps; ++i) {
      const double alpha = steps == 1 ? lo : numerics::linspace_at(lo, hi, steps, i);
      auto r = priced_ne(model, {alpha}, ctx.config.br_options(), search.priced_tol);
      all_converged = all_converged && r.converged;
      rows.push_back({{"alpha", alpha}, {"report", r}});
      results.emplace_back(alpha, std::move(r));
    }
    if (ctx.talk()) {
      auto& os = ctx.console();
      os << "Priced equilibria, alpha sweep " << *sweep << '\n'
         << "  alpha        s~*/σ²           σ²u/t (unpriced)\n";
      for (const auto& [alpha, r] : results) {
        os << "  " << std::setw(9) << detail::fixed(alpha, 4) << "  "
           << detail::vec(r.solution.normalized(model), 2) << "  "
           << detail::vec(r.normalized_utilities, 3)
           << (r.converged ? "" : "  (not converged)") << '\n';
      }
    }
    detail::emit_json(ctx, "pricing", json{{"network", model}, {"sweep", rows}});
    detail::emit_csv(ctx, "pricing", [&](std::ostream& os) {
      CsvPrecision guard(os);
      os << "alpha,s_1,s_2,u_1,u_2,u1_norm,u2_norm,converged\n";
      for (const auto& [alpha, r] : results) {
        os << alpha << ',' << r.solution[0] << ',' << r.solution[1] << ','
           << r.utilities[0] << ',' << r.utilities[1] << ','
           << r.normalized_utilities[0] << ',' << r.normalized_utilities[1]
           << ',' << (r.converged ? 1 : 0) << '\n';
      }
    });
    if (!all_converged) throw NonConvergence("some priced equilibria did not converge");
    return kOk;
  }

  std::optional<double> alpha = alpha_flag;
  if (!alpha && ctx.config.pricing) alpha = ctx.config.pricing->alpha;
  if (!alpha) {
    throw ValidationError("pricing.alpha",
                          "not set in the config; pass --alpha or --sweep");
  }
  const PricingConfig pricing{*alpha};
  pricing.validate();
  const auto report = priced_ne(model, pricing, ctx.config.br_options(), search.priced_tol);
  std::vector<double> priced(model.num_players());
  for (std::size_t k = 0; k < priced.size(); ++k) {
    priced[k] = priced_utility(model, report.solution, k, pricing);
  }
  json doc{{"network", model},
           {"alpha", pricing.alpha},
           {"normalized_solution", report.solution.normalized(model)},
           {"priced_utilities", priced},
           {"report", report}};
  if (ctx.talk()) {
    auto& os = ctx.console();
    os << "Priced Nash equilibrium, alpha = " << pricing.alpha << " ("
       << report.iterations << " rounds, "
       << (report.converged ? "converged" : "NOT converged") << ")\n"
       << "  s~*/σ² = " << detail::vec(report.solution.normalized(model), 2) << '\n'
       << "  σ²u/t  = " << detail::vec(report.normalized_utilities, 3)
       << "  (unpriced utility)\n";
  }
  detail::emit_json(ctx, "pricing", doc);
  detail::emit_csv(ctx, "pricing", [&](std::ostream& os) {
    write_trace_csv(os, model, report);
  });
  detail::require_converged(report, "priced best-response dynamics");
  return kOk;
}

/// Utility-plane sample and its Pareto frontier.
inline int cmd_pareto(const Context& ctx) {
  const auto& model = ctx.config.network;
  const auto grid = utility_grid(model, ctx.config.search.n_per_axis);
  const auto frontier = pareto_frontier(grid);
  const auto ne = detail::solve_ne(ctx);
  const auto ne_point = make_point(model, ne.solution);
  const auto fair = fairness_projection(frontier, ne_point);

  json doc{{"network", model},
           {"n_per_axis", ctx.config.search.n_per_axis},
           {"ne", ne_point},
           {"frontier", frontier}};
  if (fair) doc["fairness_projection"] = *fair;
  if (ctx.talk()) {
    auto& os = ctx.console();
    os << "Utility plane: " << grid.size() << " samples, " << frontier.size()
       << " on the Pareto frontier\n"
       << "  NE σ²u/t = " << detail::vec(ne_point.normalized, 3) << '\n';
    if (fair) {
      os << "  fairness projection of NE: σ²u/t = "
         << detail::vec(fair->normalized, 3) << '\n';
    }
  }
  detail::emit_json(ctx, "pareto", doc);
  detail::emit_csv(ctx, "pareto", [&](std::ostream& os) {
    write_grid_csv(os, grid, frontier);
  });
  detail::require_converged(ne, "best-response dynamics");
  return kOk;
}

inline int cmd_social(const Context& ctx) {
  const auto& model = ctx.config.network;
  const auto& search = ctx.config.search;
  const auto ne = detail::solve_ne(ctx);
  detail::require_converged(ne, "best-response dynamics");
  const auto ne_point = make_point(model, ne.solution);
  const auto so = social_optimum(model, ctx.config.weights, search.n_per_axis,
                                 search.refine_tol);
  const bool improves = in_improvement_region(so, ne_point);
  json doc{{"network", model},
           {"weights", ctx.config.weights.w},
           {"social_optimum", so},
           {"ne", ne_point},
           {"in_improvement_region", improves}};
  if (ctx.talk()) {
    ctx.console() << "Social optimum, weights "
                  << detail::vec(ctx.config.weights.w, 2) << '\n'
                  << "  š/σ²  = " << detail::vec(so.profile.normalized(model), 2) << '\n'
                  << "  σ²u/t = " << detail::vec(so.normalized, 3) << '\n'
                  << "  Pareto improvement over NE: " << (improves ? "yes" : "no")
                  << '\n';
  }
  detail::emit_json(ctx, "social", doc);
  detail::emit_csv(ctx, "social", [&](std::ostream& os) {
    write_points_csv(os, {{"ne", ne_point}, {"social", so}});
  });
  return kOk;
}

inline int cmd_nbs(const Context& ctx) {
  const auto& model = ctx.config.network;
  const auto& search = ctx.config.search;
  const auto ne = detail::solve_ne(ctx);
  detail::require_converged(ne, "best-response dynamics");
  const auto ne_point = make_point(model, ne.solution);
  const auto nbs = nash_bargaining(model, ne_point, search.n_per_axis, search.refine_tol);
  json doc{{"network", model},
           {"disagreement", ne_point},
           {"nash_bargaining", nbs},
           {"nash_product", nash_product(nbs.utilities, ne_point.utilities)}};
  if (ctx.talk()) {
    ctx.console() << "Nash bargaining solution (disagreement = NE)\n"
                  << "  ṡ/σ²  = " << detail::vec(nbs.profile.normalized(model), 2) << '\n'
                  << "  σ²u/t = " << detail::vec(nbs.normalized, 3) << '\n';
  }
  detail::emit_json(ctx, "nbs", doc);
  detail::emit_csv(ctx, "nbs", [&](std::ostream& os) {
    write_points_csv(os, {{"ne", ne_point}, {"nbs", nbs}});
  });
  return kOk;
}

struct RepeatedFlags {
  std::optional<double> delta;             // defaults to the threshold itself
  std::optional<std::size_t> deviant;      // 1-based; defaults to the binding player
  std::size_t deviate_at = 1;
  std::size_t stages = 20;
};

/// Grim trigger between the social optimum and the static NE.
inline int cmd_repeated(const Context& ctx, const RepeatedFlags& flags) {
  const auto& model = ctx.config.network;
  const auto& search = ctx.config.search;
  const auto ne = detail::solve_ne(ctx);
  detail::require_converged(ne, "best-response dynamics");
  const auto so = social_optimum(model, ctx.config.weights, search.n_per_axis,
                                 search.refine_tol);
  const TriggerPolicy policy{so.profile, ne.solution};
  const auto levels = deviation_levels(model, policy);
  const double threshold = min_discount(levels);
  const double check = min_discount_by_simulation(model, policy);

  std::size_t binding = 0;
  double worst = -1.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const auto& l = levels[k];
    const double d = (l.deviate - l.cooperate) / (l.deviate - l.punish);
    if (d > worst) {
      worst = d;
      binding = k;
    }
  }
  if (flags.deviant && (*flags.deviant < 1 || *flags.deviant > model.num_players())) {
    throw ValidationError("--deviant", "must be a player number in 1.." +
                                           std::to_string(model.num_players()));
  }
  const double delta = flags.delta.value_or(threshold);
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw ValidationError("--delta", "must lie in [0, 1)");
  }
  const std::size_t deviant = flags.deviant ? *flags.deviant - 1 : binding;
  const DiscountSpec spec{delta, std::nullopt};
  const auto conform = simulate_trigger(model, policy, spec, std::nullopt);
  std::vector<bool> profitable;
  json per_player = json::array();
  for (std::size_t k = 0; k < model.num_players(); ++k) {
    const double dev = simulate_trigger(model, policy, spec, k)[k];
    profitable.push_back(dev > conform[k]);
    per_player.push_back({{"player", k + 1},
                          {"levels", levels[k]},
                          {"conform_value", conform[k]},
                          {"deviate_value", dev},
                          {"deviation_profitable", dev > conform[k]}});
  }
  const auto path = trigger_path(model, policy, deviant, flags.deviate_at, flags.stages);

  json doc{{"network", model},
           {"cooperate_profile", policy.cooperate_profile},
           {"punish_profile", policy.punish_profile},
           {"min_discount", threshold},
           {"min_discount_by_simulation", check},
           {"binding_player", binding + 1},
           {"delta", delta},
           {"players", per_player}};
  if (ctx.talk()) {
    const double scale = model.noise_power / model.rate_scale;
    auto& os = ctx.console();
    os << "Repeated game, grim trigger (cooperate at SO, punish with NE)\n";
    for (std::size_t k = 0; k < levels.size(); ++k) {
      os << "  player " << k + 1 << ": σ²u/t deviate "
         << detail::fixed(levels[k].deviate * scale, 3) << ", cooperate "
         << detail::fixed(levels[k].cooperate * scale, 3) << ", punish "
         << detail::fixed(levels[k].punish * scale, 3) << '\n';
    }
    os << "  δ_min = " << detail::fixed(threshold, 6) << " (player " << binding + 1
       << " binds; simulation bisection " << detail::fixed(check, 6) << ")\n"
       << "  at δ = " << detail::fixed(delta, 6) << ":";
    for (std::size_t k = 0; k < profitable.size(); ++k) {
      os << " player " << k + 1 << (profitable[k] ? " gains" : " does not gain")
         << (k + 1 < profitable.size() ? "," : "");
    }
    os << " by deviating\n";
  }
  detail::emit_json(ctx, "repeated", doc);
  detail::emit_csv(ctx, "repeated", [&](std::ostream& os) {
    write_trigger_csv(os, path, delta);
  });
  return kOk;
}

/// Runs `fn`, mapping exceptions to exit codes and printing diagnostics.
inline int run_guarded(std::ostream& err, const std::function<int()>& fn) {
  try {
    return fn();
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const EmptyImprovementRegion& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const NotIndividuallyRational& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const ConfigIoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ConfigParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const PreconditionError& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const DegeneratePacketLength& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::invalid_argument& e) {
    err << "validation error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace icgame::cli

#endif  // ICGAME_COMMANDS_HPP
