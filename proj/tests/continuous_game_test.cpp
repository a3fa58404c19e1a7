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

#include <cmath>
#include <random>
#include <stdexcept>

#include "gtest/gtest.h"
#include "icgame/continuous_game.hpp"
#include "oracles.hpp"

namespace icgame {
namespace {

const NetworkModel kRef = NetworkModel::reference();

TEST(ThroughputTest, Values) {
  EXPECT_EQ(packet_throughput(0.0, kRef), 0.0);
  EXPECT_NEAR(packet_throughput(4.5, kRef), 0.80, 0.01);
  NetworkModel one = kRef;
  one.packet_bits = 1;
  one.rate_scale = 3.0;
  EXPECT_NEAR(packet_throughput(1.0, one), 3.0 * (1.0 - std::exp(-1.0)), 1e-15);
  EXPECT_THROW(packet_throughput(-0.1, kRef), std::domain_error);
  double prev = 0.0;
  for (double g = 0.1; g < 60.0; g += 0.1) {
    const double t = packet_throughput(g, kRef);
    EXPECT_LE(t, kRef.rate_scale);
    EXPECT_GE(t, prev);
    prev = t;
  }
}

TEST(UtilityTest, EnergyEfficiency) {
  EXPECT_EQ(ee_utility(kRef, {0.0, 2.0}, 0), 0.0);
  const PowerProfile ne{2.99, 1.97};
  EXPECT_NEAR(ee_utility(kRef, ne, 0), 0.269, 0.002);
  EXPECT_NEAR(ee_utility(kRef, ne, 1), 0.407, 0.002);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_DOUBLE_EQ(ee_utility(kRef, ne, k),
                     packet_throughput(sinr(kRef, ne, k), kRef) / ne[k]);
  }
}

TEST(UtilityTest, Homogeneity) {
  const PowerProfile s{1.3, 2.2};
  for (double c : {0.01, 0.5, 3.0, 1e3}) {
    NetworkModel m = kRef;
    m.noise_power *= c;
    m.power_cap *= c;
    const PowerProfile sc{c * s[0], c * s[1]};
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(ee_utility(m, sc, k) * c, ee_utility(kRef, s, k), 1e-13);
      EXPECT_NEAR(normalize_utilities(m, ee_utilities(m, sc))[k],
                  normalize_utilities(kRef, ee_utilities(kRef, s))[k], 1e-13);
    }
  }
}

TEST(UtilityTest, Priced) {
  const PowerProfile s{1.3, 2.2};
  EXPECT_EQ(priced_utility(kRef, s, 0, {0.0}), ee_utility(kRef, s, 0));
  EXPECT_DOUBLE_EQ(priced_utility(kRef, s, 1, {0.2}), ee_utility(kRef, s, 1) - 0.2 * 2.2);
  EXPECT_EQ(priced_utility(kRef, {0.0, 2.2}, 0, {5.0}), 0.0);
  EXPECT_LT(priced_utility(kRef, {5.0, 0.0}, 0, {1.0}), 0.0);
}

// --- optimal SINR -------------------------------------------------------------

TEST(GammaStarTest, ReferenceValues) {
  EXPECT_NEAR(gamma_star(20), oracle::kGammaStarL20, 1e-10);
  EXPECT_NEAR(gamma_star(20), 4.5, 0.09);
  EXPECT_NEAR(gamma_star(2), oracle::kGammaStarL2, 1e-10);
  EXPECT_NEAR(gamma_star(2), 1.26, 0.005);
}

TEST(GammaStarTest, MatchesDirectMaximization) {
  for (int L : {2, 3, 5, 10, 20, 50, 100, 500}) {
    EXPECT_NEAR(gamma_star(L), oracle::gamma_star_by_maximization(L), 1e-6) << "L=" << L;
  }
}

TEST(GammaStarTest, ResidualWithinTolerance) {
  for (int L = 2; L <= 200; ++L) {
    const double g = gamma_star(L);
    EXPECT_LE(std::abs(L * g * std::exp(-g) - (1.0 - std::exp(-g))), 1e-12) << L;
  }
  const double loose = gamma_star(20, 1e-4);
  EXPECT_LE(std::abs(20 * loose * std::exp(-loose) - (1.0 - std::exp(-loose))), 1e-4);
}

TEST(GammaStarTest, SlopeChangesSignOnceAtRoot) {
  for (int L : {2, 4, 20, 64}) {
    const auto f = [L](double g) { return std::pow(1.0 - std::exp(-g), L) / g; };
    const double h = 1e-5;
    int changes = 0;
    double crossing = 0.0;
    double prev = f(0.01 + h) - f(0.01 - h);
    for (double g = 0.02; g < 50.0; g += 0.01) {
      const double d = f(g + h) - f(g - h);
      if ((d > 0) != (prev > 0)) {
        ++changes;
        crossing = g;
      }
      prev = d;
    }
    EXPECT_EQ(changes, 1) << L;
    EXPECT_NEAR(crossing, gamma_star(L), 0.011) << L;
  }
}

TEST(GammaStarTest, SingleBitPacketIsDegenerate) {
  EXPECT_THROW(gamma_star(1), DegeneratePacketLength);
  EXPECT_THROW(gamma_star(0), DegeneratePacketLength);
}

// --- best responses -----------------------------------------------------------

TEST(BestResponseTest, ClosedFormBranches) {
  NetworkModel strong = kRef;
  strong.gains[0][0] = 100.0;
  const double interior = best_response_ee(strong, {0.0, 1.0}, 0);
  EXPECT_LT(interior, strong.power_cap);
  EXPECT_NEAR(sinr(strong, {interior, 1.0}, 0), gamma_star(20), 1e-12);

  NetworkModel weak = kRef;
  weak.gains[0][0] = 1e-4;
  EXPECT_EQ(best_response_ee(weak, {0.0, 1.0}, 0), weak.power_cap);

  NetworkModel deg = kRef;
  deg.packet_bits = 1;
  EXPECT_THROW(best_response_ee(deg, {1.0, 1.0}, 0), DegeneratePacketLength);
}

TEST(BestResponseTest, ReferenceNetwork) {
  EXPECT_NEAR(best_response_ee(kRef, {0.0, 1.97}, 0), 2.99, 0.02);
}

TEST(BestResponseTest, MaximizesUtilityOnGrid) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const PowerProfile s{u(rng), u(rng)};
    for (std::size_t k = 0; k < 2; ++k) {
      const double br = best_response_ee(kRef, s, k);
      EXPECT_GE(br, 0.0);
      EXPECT_LE(br, kRef.power_cap);
      const double grid = oracle::grid_argmax(
          [&](double x) { return ee_utility(kRef, s.with(k, x), k); }, 0.0,
          kRef.power_cap, 1000);
      EXPECT_NEAR(br, grid, kRef.power_cap / 1000.0);
    }
  }
}

TEST(BestResponseTest, InteriorResponseGrowsWithInterference) {
  double prev = 0.0;
  for (double opp = 0.0; opp <= 5.0; opp += 0.25) {
    const double uncapped = gamma_star(20) / effective_gain(kRef, {0.0, opp}, 0);
    EXPECT_GE(uncapped, prev);
    prev = uncapped;
  }
}

TEST(PricedBestResponseTest, ZeroPriceMatchesClosedForm) {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const PowerProfile s{u(rng), u(rng)};
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(best_response_priced(kRef, s, k, {0.0}), best_response_ee(kRef, s, k), 1e-9);
    }
  }
}

TEST(PricedBestResponseTest, HeavyPriceSilences) {
  EXPECT_EQ(best_response_priced(kRef, {0.0, 1.0}, 0, {1e6}), 0.0);
  EXPECT_EQ(best_response_priced(kRef, {1.0, 0.0}, 1, {10.0}), 0.0);
}

TEST(PricedBestResponseTest, ReferenceNetwork) {
  EXPECT_NEAR(best_response_priced(kRef, {0.0, 1.57}, 0, {0.12}), 2.17, 0.02);
}

TEST(PricedBestResponseTest, MatchesFineGridArgmax) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::uniform_real_distribution<double> a(0.0, 0.4);
  constexpr std::size_t kPoints = 100'000;
  for (int trial = 0; trial < 30; ++trial) {
    const PowerProfile s{u(rng), u(rng)};
    const PricingConfig pricing{a(rng)};
    for (std::size_t k = 0; k < 2; ++k) {
      const double br = best_response_priced(kRef, s, k, pricing);
      const double grid = oracle::grid_argmax(
          [&](double x) { return priced_utility(kRef, s.with(k, x), k, pricing); },
          0.0, kRef.power_cap, kPoints);
      EXPECT_NEAR(br, grid, kRef.power_cap / kPoints);
    }
  }
}

// --- best-response dynamics -----------------------------------------------------

TEST(DynamicsTest, ReferenceEquilibrium) {
  const auto r = ne_continuous(kRef);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.solution[0], oracle::kNe[0], 1e-6);
  EXPECT_NEAR(r.solution[1], oracle::kNe[1], 1e-6);
  EXPECT_NEAR(r.normalized_utilities[0], oracle::kNeUtility[0], 1e-7);
  EXPECT_NEAR(r.normalized_utilities[1], oracle::kNeUtility[1], 1e-7);
  EXPECT_NEAR(r.solution[0] / r.solution[1], 1.52, 0.01);
  for (double g : r.sinrs) EXPECT_NEAR(g, gamma_star(20), 1e-8);
  EXPECT_EQ(r.trace.size(), r.iterations + 1);
  EXPECT_LE(r.residual, 1e-10);
}

TEST(DynamicsTest, UncoupledPlayersConvergeInOneStep) {
  NetworkModel m = kRef;
  m.gains[0][1] = m.gains[1][0] = 0.0;
  m.gains[1][1] = 1e-3;  // cap binds for player 2
  const auto r = br_dynamics(m, EeResponder(m), {5.0, 5.0}, {1e-10, 10});
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.solution[0], gamma_star(20) * m.noise_power / (4.0 * 0.75), 1e-12);
  EXPECT_EQ(r.solution[1], m.power_cap);
  // One productive step plus the confirming step.
  EXPECT_LE(r.iterations, 2u);
}

TEST(DynamicsTest, InitializationIndependence) {
  const BrOptions opt{1e-10, 10'000};
  const auto hi = br_dynamics(kRef, EeResponder(kRef), {5.0, 5.0}, opt);
  const auto lo = br_dynamics(kRef, EeResponder(kRef), {0.0, 0.0}, opt);
  ASSERT_TRUE(hi.converged && lo.converged);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_NEAR(hi.solution[k], lo.solution[k], 10 * opt.tol);
  }
}

TEST(DynamicsTest, ReportsNonConvergence) {
  const auto r = br_dynamics(kRef, EeResponder(kRef), {5.0, 5.0}, {1e-14, 2});
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 2u);
  EXPECT_EQ(r.trace.size(), 3u);
  EXPECT_THROW(br_dynamics(kRef, EeResponder(kRef), {5.0, 5.0}, {1e-10, 0}),
               std::invalid_argument);
}

TEST(DynamicsTest, HomogeneityOfEquilibrium) {
  const auto base = ne_continuous(kRef);
  for (double c : {0.01, 7.0, 250.0}) {
    NetworkModel m = kRef;
    m.noise_power *= c;
    m.power_cap *= c;
    const auto r = ne_continuous(m);
    ASSERT_TRUE(r.converged);
    for (std::size_t k = 0; k < 2; ++k) {
      EXPECT_NEAR(r.solution[k] / c, base.solution[k], 1e-8);
      EXPECT_NEAR(r.normalized_utilities[k], base.normalized_utilities[k], 1e-9);
      EXPECT_NEAR(r.sinrs[k], base.sinrs[k], 1e-8);
    }
  }
}

TEST(DynamicsTest, SymmetricNetworkGivesSymmetricEquilibrium) {
  NetworkModel m = kRef;
  m.gains = {{0.8, 0.3}, {0.3, 0.8}};
  const auto r = ne_continuous(m);
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.solution[0], r.solution[1], 1e-10);
}

TEST(DynamicsTest, PricedEquilibrium) {
  const auto r = priced_ne(kRef, {0.12});
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(r.solution[0], oracle::kPricedNe[0], 1e-5);
  EXPECT_NEAR(r.solution[1], oracle::kPricedNe[1], 1e-5);
  // Each component maximizes its own priced utility against the other.
  const PricedResponder br({0.12});
  EXPECT_LE(fixed_point_residual(kRef, br, r.solution), 1e-10);

  const auto zero = priced_ne(kRef, {0.0});
  const auto ne = ne_continuous(kRef);
  ASSERT_TRUE(zero.converged);
  EXPECT_NEAR(zero.solution[0], ne.solution[0], 1e-8);
  EXPECT_NEAR(zero.solution[1], ne.solution[1], 1e-8);
}

TEST(DynamicsTest, ResidualInvariantOnRandomNetworks) {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> g(0.05, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    NetworkModel m = kRef;
    m.gains = {{g(rng), 0.5 * g(rng)}, {0.5 * g(rng), g(rng)}};
    const auto r = ne_continuous(m);
    if (!r.converged) continue;
    EXPECT_LE(fixed_point_residual(m, EeResponder(m), r.solution), 1e-10);
    for (double s : r.solution.powers) {
      EXPECT_GE(s, 0.0);
      EXPECT_LE(s, m.power_cap);
    }
  }
}

}  // namespace
}  // namespace icgame
