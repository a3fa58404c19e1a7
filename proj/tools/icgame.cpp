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

// icgame: power-control games on the two-link interference channel.
//
//   icgame [--config FILE] [--out DIR] [--json] [--quiet] <command> [flags]
//
// Commands: finite, ne, pricing, pareto, social, nbs, repeated.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "icgame/commands.hpp"
#include "icgame/config.hpp"

int main(int argc, char** argv) {
  using namespace icgame;

  CLI::App app{"Game-theoretic power control for the interference channel"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool json_stdout = false;
  bool quiet = false;
  app.add_option("--config", config_path,
                 "JSON run configuration (defaults to the built-in two-link network)");
  app.add_option("--out", out_dir, "Output directory (overrides output.dir)");
  app.add_flag("--json", json_stdout, "Print the JSON artifact instead of a summary");
  app.add_flag("--quiet", quiet, "Suppress console output");

  auto* finite = app.add_subcommand("finite", "Solve the finite on/off game");
  std::string scenario;
  bool ce_uniform = false;
  finite->add_option("--scenario", scenario, "nfe or ic (overrides finite.scenario)")
      ->check(CLI::IsMember({"nfe", "ic"}));
  finite->add_flag("--ce-uniform", ce_uniform,
                   "Check the uniform mixture over pure equilibria for a correlated equilibrium");

  auto* ne = app.add_subcommand("ne", "Nash equilibrium of the energy-efficiency game");

  auto* pricing = app.add_subcommand("pricing", "Nash equilibrium with linear power pricing");
  std::optional<double> alpha;
  std::optional<std::string> sweep;
  pricing->add_option("--alpha", alpha, "Pricing factor [b/J per W] (overrides pricing.alpha)");
  pricing->add_option("--sweep", sweep, "Sweep alpha over lo:hi:steps");

  auto* pareto = app.add_subcommand("pareto", "Sample the utility plane and its Pareto frontier");
  auto* social = app.add_subcommand("social", "Weighted social-welfare optimum");
  auto* nbs = app.add_subcommand("nbs", "Nash bargaining solution against the NE");

  auto* repeated = app.add_subcommand("repeated", "Grim-trigger cooperation threshold");
  cli::RepeatedFlags rflags;
  std::optional<double> delta;
  std::optional<std::size_t> deviant;
  repeated->add_option("--delta", delta, "Discount factor to evaluate (default: threshold)");
  repeated->add_option("--deviant", deviant, "Deviating player for the trace (1-based)");
  repeated->add_option("--deviate-at", rflags.deviate_at, "Stage of the deviation");
  repeated->add_option("--stages", rflags.stages, "Number of stages in the trace");

  for (auto* sub : {finite, ne, pricing, pareto, social, nbs, repeated}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  return cli::run_guarded(std::cerr, [&]() -> int {
    cli::Context ctx;
    if (config_path.empty()) {
      ctx.config.finite = FiniteConfig{};
    } else {
      ctx.config = load_config(config_path);
    }
    ctx.out_dir = out_dir.empty() ? ctx.config.output.dir : out_dir;
    ctx.json_stdout = json_stdout;
    ctx.quiet = quiet;
    ctx.out = &std::cout;
    ctx.err = &std::cerr;

    if (finite->parsed()) {
      std::optional<FiniteScenario> override;
      if (scenario == "nfe") override = FiniteScenario::kNearFar;
      if (scenario == "ic") override = FiniteScenario::kInterference;
      return cli::cmd_finite(ctx, override, ce_uniform);
    }
    if (ne->parsed()) return cli::cmd_ne(ctx);
    if (pricing->parsed()) return cli::cmd_pricing(ctx, alpha, sweep);
    if (pareto->parsed()) return cli::cmd_pareto(ctx);
    if (social->parsed()) return cli::cmd_social(ctx);
    if (nbs->parsed()) return cli::cmd_nbs(ctx);
    rflags.delta = delta;
    rflags.deviant = deviant;
    return cli::cmd_repeated(ctx, rflags);
  });
}
