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

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "icgame/efficiency.hpp"
#include "oracles.hpp"

namespace icgame {
namespace {

const NetworkModel kRef = NetworkModel::reference();

UtilityPoint NePoint(const NetworkModel& m) {
  return make_point(m, ne_continuous(m).solution);
}

double SingleUserBound(const NetworkModel& m, std::size_t k) {
  const double mu = m.processing_gain * m.gains[k][k] / m.noise_power;
  const double s = oracle::grid_argmax(
      [&](double x) { return x > 0 ? std::pow(1 - std::exp(-mu * x), m.packet_bits) / x : 0.0; },
      0.0, m.power_cap, 200'000);
  // Refine past the grid and allow one grid cell of slack.
  const double h = m.power_cap / 200'000;
  double best = 0.0;
  for (double x = std::max(1e-12, s - h); x <= s + h; x += h / 1000) {
    best = std::max(best, std::pow(1 - std::exp(-mu * x), m.packet_bits) / x);
  }
  return best * m.noise_power / m.rate_scale;
}

TEST(GridTest, Corners) {
  const auto g = utility_grid(kRef, 2);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_EQ(g[0].profile, (PowerProfile{0.0, 0.0}));
  EXPECT_EQ(g[0].utilities, (UtilityPair{0.0, 0.0}));
  EXPECT_EQ(g[3].profile, (PowerProfile{5.0, 5.0}));
  EXPECT_THROW(utility_grid(kRef, 1), std::invalid_argument);
}

TEST(GridTest, OnlyTwoPlayers) {
  NetworkModel three = kRef;
  three.gains = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  EXPECT_THROW(utility_grid(three, 4), UnsupportedDimension);
  EXPECT_THROW(social_optimum(three, {{0.3, 0.3, 0.4}}), UnsupportedDimension);
}

TEST(GridTest, BoundedBySingleUserOptimum) {
  const auto grid = utility_grid(kRef, 120);
  const double b1 = SingleUserBound(kRef, 0);
  const double b2 = SingleUserBound(kRef, 1);
  for (const auto& p : grid) {
    EXPECT_LE(p.normalized[0], b1 + 1e-12);
    EXPECT_LE(p.normalized[1], b2 + 1e-12);
    // Utilities recompute from the profile.
    EXPECT_EQ(p.utilities[0], ee_utility(kRef, p.profile, 0));
  }
}

TEST(FrontierTest, SmallCases) {
  const UtilityPoint a{{1.0, 1.0}, {1.0, 2.0}, {1.0, 2.0}};
  EXPECT_EQ(pareto_frontier({a}), std::vector<UtilityPoint>{a});
  const UtilityPoint b{{2.0, 1.0}, {1.5, 2.0}, {1.5, 2.0}};
  EXPECT_EQ(pareto_frontier({a, b}), std::vector<UtilityPoint>{b});
  // Equal utilities: the lexicographically smaller profile stays.
  const UtilityPoint c{{0.5, 3.0}, {1.5, 2.0}, {1.5, 2.0}};
  EXPECT_EQ(pareto_frontier({b, c}), std::vector<UtilityPoint>{c});
  EXPECT_THROW(pareto_frontier({}), std::invalid_argument);
}

TEST(FrontierTest, MatchesBruteForceOracle) {
  for (const auto& model : {kRef, [] {
                              NetworkModel m = NetworkModel::reference();
                              m.gains = {{1.0, 0.2}, {0.2, 1.0}};
                              return m;
                            }()}) {
    const auto grid = utility_grid(model, 50);
    std::vector<std::array<double, 2>> u;
    for (const auto& p : grid) u.push_back(p.utilities);
    std::vector<PowerProfile> expected;
    for (std::size_t i : oracle::brute_force_nondominated(u)) expected.push_back(grid[i].profile);
    std::sort(expected.begin(), expected.end(), [](const PowerProfile& x, const PowerProfile& y) {
      return x.powers < y.powers;
    });

    const auto frontier = pareto_frontier(grid);
    std::vector<PowerProfile> got;
    for (const auto& p : frontier) got.push_back(p.profile);
    std::sort(got.begin(), got.end(), [](const PowerProfile& x, const PowerProfile& y) {
      return x.powers < y.powers;
    });
    EXPECT_EQ(got, expected);
  }
}

TEST(FrontierTest, MonotoneAndUndominated) {
  const auto grid = utility_grid(kRef, 200);
  const auto frontier = pareto_frontier(grid);
  ASSERT_GT(frontier.size(), 10u);
  for (std::size_t i = 1; i < frontier.size(); ++i) {
    EXPECT_GT(frontier[i].utilities[0], frontier[i - 1].utilities[0]);
    EXPECT_LT(frontier[i].utilities[1], frontier[i - 1].utilities[1]);
  }
  // Every grid point is on or below the frontier staircase.
  for (const auto& p : grid) {
    const bool covered = std::any_of(frontier.begin(), frontier.end(), [&](const UtilityPoint& f) {
      return f.utilities[0] >= p.utilities[0] && f.utilities[1] >= p.utilities[1];
    });
    EXPECT_TRUE(covered);
  }
}

TEST(ImprovementRegionTest, Basics) {
  const auto ne = NePoint(kRef);
  EXPECT_TRUE(in_improvement_region(ne, ne));
  UtilityPoint worse = ne;
  worse.utilities[0] -= 1e-6;
  EXPECT_FALSE(in_improvement_region(worse, ne));
}

TEST(SocialOptimumTest, ReferenceNetwork) {
  const auto so = social_optimum(kRef, {{0.5, 0.5}});
  EXPECT_NEAR(so.profile[0], oracle::kSocial[0], 1e-5);
  EXPECT_NEAR(so.profile[1], oracle::kSocial[1], 1e-5);
  EXPECT_NEAR(so.normalized[0], oracle::kSocialUtility[0], 1e-5);
  EXPECT_NEAR(so.normalized[1], oracle::kSocialUtility[1], 1e-5);
  EXPECT_TRUE(in_improvement_region(so, NePoint(kRef)));
}

TEST(SocialOptimumTest, DominatesEverySample) {
  for (const Weights& w : {Weights{{0.5, 0.5}}, Weights{{0.2, 0.8}}, Weights{{0.9, 0.1}}}) {
    const auto so = social_optimum(kRef, w, 100);
    const double best = w.w[0] * so.utilities[0] + w.w[1] * so.utilities[1];
    for (const auto& p : utility_grid(kRef, 100)) {
      EXPECT_GE(best, w.w[0] * p.utilities[0] + w.w[1] * p.utilities[1]);
      EXPECT_FALSE(dominates(p.utilities, so.utilities));
    }
  }
}

TEST(SocialOptimumTest, SingleWeightReducesToSingleUser) {
  const auto so = social_optimum(kRef, {{1.0, 0.0}}, 100);
  EXPECT_EQ(so.profile[1], 0.0);
  const double mu = kRef.processing_gain * kRef.gains[0][0] / kRef.noise_power;
  const double expected = gamma_star(kRef.packet_bits) / mu;
  EXPECT_NEAR(so.profile[0], expected, 1e-4);
  EXPECT_NEAR(so.normalized[0], SingleUserBound(kRef, 0), 1e-9);
}

TEST(SocialOptimumTest, SymmetricNetwork) {
  NetworkModel m = kRef;
  m.gains = {{0.8, 0.3}, {0.3, 0.8}};
  const auto so = social_optimum(m, {{0.5, 0.5}});
  EXPECT_NEAR(so.profile[0], so.profile[1], 1e-4);
}

TEST(SocialOptimumTest, RejectsBadWeights) {
  EXPECT_THROW(social_optimum(kRef, {{0.5, 0.6}}), ValidationError);
  EXPECT_THROW(social_optimum(kRef, {{1.5, -0.5}}), ValidationError);
  EXPECT_THROW(social_optimum(kRef, {{1.0}}), ValidationError);
}

TEST(BargainingTest, ReferenceNetwork) {
  const auto ne = NePoint(kRef);
  const auto nbs = nash_bargaining(kRef, ne);
  EXPECT_NEAR(nbs.profile[0], oracle::kNbs[0], 1e-5);
  EXPECT_NEAR(nbs.profile[1], oracle::kNbs[1], 1e-5);
  EXPECT_NEAR(nbs.normalized[0], oracle::kNbsUtility[0], 1e-5);
  EXPECT_NEAR(nbs.normalized[1], oracle::kNbsUtility[1], 1e-5);
  EXPECT_TRUE(in_improvement_region(nbs, ne));

  // Disagreement < social optimum < bargaining in player 1's utility.
  const auto so = social_optimum(kRef, {{0.5, 0.5}});
  EXPECT_LT(ne.normalized[0], so.normalized[0]);
  EXPECT_LT(so.normalized[0], nbs.normalized[0]);
}

TEST(BargainingTest, BeatsEverySampledImprovement) {
  const auto ne = NePoint(kRef);
  const auto nbs = nash_bargaining(kRef, ne, 80);
  const double best = nash_product(nbs.utilities, ne.utilities);
  int in_region = 0;
  for (const auto& p : utility_grid(kRef, 80)) {
    if (!in_improvement_region(p, ne)) continue;
    ++in_region;
    EXPECT_GE(best, (p.utilities[0] - ne.utilities[0]) * (p.utilities[1] - ne.utilities[1]));
  }
  EXPECT_GT(in_region, 0);
}

TEST(BargainingTest, SymmetricNetwork) {
  NetworkModel m = kRef;
  m.gains = {{0.8, 0.3}, {0.3, 0.8}};
  const auto nbs = nash_bargaining(m, NePoint(m));
  EXPECT_NEAR(nbs.utilities[0], nbs.utilities[1], 1e-6);
}

TEST(BargainingTest, EmptyRegion) {
  UtilityPoint impossible = NePoint(kRef);
  impossible.utilities = {10.0, 10.0};
  EXPECT_THROW(nash_bargaining(kRef, impossible, 20), EmptyImprovementRegion);
}

TEST(BargainingTest, RefinementNeverWorsens) {
  const auto ne = NePoint(kRef);
  for (std::size_t n : {40u, 61u, 90u}) {
    double coarse = -1.0;
    for (const auto& p : utility_grid(kRef, n)) {
      coarse = std::max(coarse, nash_product(p.utilities, ne.utilities));
    }
    EXPECT_GE(nash_product(nash_bargaining(kRef, ne, n).utilities, ne.utilities), coarse);
  }
}

TEST(FairnessTest, ProjectionLiesInRegion) {
  const auto ne = NePoint(kRef);
  const auto frontier = pareto_frontier(utility_grid(kRef, 200));
  const auto fair = fairness_projection(frontier, ne);
  ASSERT_TRUE(fair.has_value());
  EXPECT_TRUE(in_improvement_region(*fair, ne));
  EXPECT_NE(std::find(frontier.begin(), frontier.end(), *fair), frontier.end());
}

}  // namespace
}  // namespace icgame
