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

// Continuous-power energy-efficiency game. Each link picks s_k in [0, p] and
// earns u_k = t (1 - exp(-gamma_k))^L / s_k bits per joule, optionally minus
// a linear price alpha * s_k.

#ifndef ICGAME_CONTINUOUS_GAME_HPP
#define ICGAME_CONTINUOUS_GAME_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "icgame/errors.hpp"
#include "icgame/network.hpp"
#include "icgame/numerics.hpp"

namespace icgame {

/// Linear power price alpha [b/J per W].
struct PricingConfig {
  double alpha = 0.0;

  void validate() const {
    if (!(alpha >= 0.0)) throw ValidationError("alpha", "must be >= 0");
  }
};

/// Output of a best-response solver.
struct SolveReport {
  PowerProfile solution;
  std::vector<double> utilities;             // energy efficiency u_k [b/J]
  std::vector<double> normalized_utilities;  // sigma^2 u_k / t
  std::vector<double> sinrs;
  std::size_t iterations = 0;
  std::vector<PowerProfile> trace;  // init followed by every iterate
  bool converged = false;
  double residual = 0.0;  // max_k |s_k - b_k(s_{-k})| at the solution
};

/// Effective throughput t (1 - e^{-gamma})^L [b/s].
inline double packet_throughput(double gamma, const NetworkModel& model) {
  if (!(gamma >= 0.0)) throw std::domain_error("SINR must be >= 0");
  return model.rate_scale * std::pow(-std::expm1(-gamma), model.packet_bits);
}

/// u_k = t_k(s) / s_k, with u_k := 0 at s_k = 0.
inline double ee_utility(const NetworkModel& model, const PowerProfile& profile,
                         PlayerIndex k) {
  const double gamma = sinr(model, profile, k);
  if (profile[k] <= 0.0) return 0.0;
  return packet_throughput(gamma, model) / profile[k];
}

inline std::vector<double> ee_utilities(const NetworkModel& model,
                                        const PowerProfile& profile) {
  std::vector<double> out(model.num_players());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = ee_utility(model, profile, k);
  }
  return out;
}

/// sigma^2 u / t, the dimensionless utility used in reports.
inline std::vector<double> normalize_utilities(const NetworkModel& model,
                                               std::vector<double> utilities) {
  for (double& u : utilities) u *= model.noise_power / model.rate_scale;
  return utilities;
}

inline double priced_utility(const NetworkModel& model,
                             const PowerProfile& profile, PlayerIndex k,
                             const PricingConfig& pricing) {
  return ee_utility(model, profile, k) - pricing.alpha * profile[k];
}

/// Default residual target for gamma_star.
inline constexpr double kGammaStarTol = 1e-12;

/// The SINR maximizing (1 - e^{-g})^L / g: the unique positive root of
/// L g e^{-g} = 1 - e^{-g}. Bisection on [1e-6, 50] until the residual drops
/// to `tol` or the bracket collapses. Throws DegeneratePacketLength for L < 2.
inline double gamma_star(int packet_bits, double tol = kGammaStarTol) {
  if (packet_bits < 2) throw DegeneratePacketLength();
  const double L = packet_bits;
  const auto residual = [L](double g) {
    return L * g * std::exp(-g) + std::expm1(-g);
  };
  double lo = 1e-6;
  double hi = 50.0;
  if (!(residual(lo) > 0.0 && residual(hi) < 0.0)) {
    throw std::domain_error("optimal SINR not bracketed by [1e-6, 50]");
  }
  double mid = 0.5 * (lo + hi);
  for (int i = 0; i < 200; ++i) {
    mid = 0.5 * (lo + hi);
    const double r = residual(mid);
    if (std::abs(r) <= tol || mid <= lo || mid >= hi) break;
    (r > 0.0 ? lo : hi) = mid;
  }
  return mid;
}

/// Closed-form best response min{p, gamma* / mu_k(s_{-k})}. Reads only the
/// opponents' powers from `profile`.
inline double best_response_ee(const NetworkModel& model,
                               const PowerProfile& profile, PlayerIndex k,
                               double optimal_sinr) {
  return std::min(model.power_cap,
                  optimal_sinr / effective_gain(model, profile, k));
}

inline double best_response_ee(const NetworkModel& model,
                               const PowerProfile& profile, PlayerIndex k) {
  return best_response_ee(model, profile, k, gamma_star(model.packet_bits));
}

inline constexpr double kPricedBrTol = 1e-10;

namespace detail {

// d/ds [T(mu s) / s - alpha s] with T(g) = t (1 - e^{-g})^L.
inline double priced_utility_slope(const NetworkModel& model, double mu,
                                   double s, double alpha) {
  const double g = mu * s;
  const double L = model.packet_bits;
  const double q = -std::expm1(-g);
  const double throughput = model.rate_scale * std::pow(q, L);
  const double dthroughput =
      model.rate_scale * L * std::exp(-g) * std::pow(q, L - 1.0);
  return (g * dthroughput - throughput) / (s * s) - alpha;
}

}  // namespace detail

/// Maximizer of the priced utility over [0, p] for fixed opponents.
///
/// A 64-point scan locates the bracket of the best sample, golden-section
/// search narrows it, and bisection on the analytic slope polishes the
/// interior stationary point past the sqrt(eps) limit of value comparisons.
/// The result is compared against both endpoints.
inline double best_response_priced(const NetworkModel& model,
                                   const PowerProfile& profile, PlayerIndex k,
                                   const PricingConfig& pricing,
                                   double tol = kPricedBrTol) {
  pricing.validate();
  const double mu = effective_gain(model, profile, k);
  const double p = model.power_cap;
  const double alpha = pricing.alpha;
  const auto value = [&](double s) {
    if (s <= 0.0) return 0.0;
    return packet_throughput(mu * s, model) / s - alpha * s;
  };

  constexpr std::size_t kScan = 64;
  std::size_t best_i = 0;
  double best_v = value(0.0);
  for (std::size_t i = 1; i < kScan; ++i) {
    const double v = value(numerics::linspace_at(0.0, p, kScan, i));
    if (v > best_v) {
      best_v = v;
      best_i = i;
    }
  }
  double best_s = numerics::linspace_at(0.0, p, kScan, best_i);

  const double lo = numerics::linspace_at(0.0, p, kScan, best_i == 0 ? 0 : best_i - 1);
  const double hi = numerics::linspace_at(0.0, p, kScan, std::min(best_i + 1, kScan - 1));
  auto [gs, gv] = numerics::golden_section_max(value, lo, hi, tol);
  if (gv > best_v) {
    best_s = gs;
    best_v = gv;
  }

  // Near the maximum the value is flat to rounding, so a bracketed slope
  // root replaces the golden point without a value comparison.
  const double w = 1e-6 * p + tol;
  const double a = std::max(lo, gs - w);
  const double b = std::min(hi, gs + w);
  if (a > 0.0 && best_s == gs) {
    const auto slope = [&](double s) {
      return detail::priced_utility_slope(model, mu, s, alpha);
    };
    if (slope(a) > 0.0 && slope(b) < 0.0) {
      best_s = numerics::bisect(slope, a, b, 0.0);
      best_v = value(best_s);
    }
  }
  if (value(0.0) > best_v) {
    best_s = 0.0;
    best_v = 0.0;
  }
  if (value(p) > best_v) best_s = p;
  return best_s;
}

/// Best response of the unpriced game with gamma* computed once.
class EeResponder {
 public:
  explicit EeResponder(const NetworkModel& model)
      : optimal_sinr_(gamma_star(model.packet_bits)) {}

  double operator()(const NetworkModel& model, const PowerProfile& profile,
                    PlayerIndex k) const {
    return best_response_ee(model, profile, k, optimal_sinr_);
  }

  double optimal_sinr() const noexcept { return optimal_sinr_; }

 private:
  double optimal_sinr_;
};

class PricedResponder {
 public:
  explicit PricedResponder(PricingConfig pricing, double tol = kPricedBrTol)
      : pricing_(pricing), tol_(tol) {
    pricing_.validate();
  }

  double operator()(const NetworkModel& model, const PowerProfile& profile,
                    PlayerIndex k) const {
    return best_response_priced(model, profile, k, pricing_, tol_);
  }

 private:
  PricingConfig pricing_;
  double tol_;
};

struct BrOptions {
  double tol = 1e-10;
  std::size_t max_iter = 10'000;
};

/// Energy-efficiency utilities, SINRs and normalized values at `profile`.
inline SolveReport describe_profile(const NetworkModel& model,
                                    const PowerProfile& profile) {
  SolveReport r;
  r.solution = profile;
  r.utilities = ee_utilities(model, profile);
  r.normalized_utilities = normalize_utilities(model, r.utilities);
  r.sinrs = sinrs(model, profile);
  return r;
}

/// max_k |s_k - b_k(s_{-k})|.
template <class Responder>
double fixed_point_residual(const NetworkModel& model, const Responder& br,
                            const PowerProfile& profile) {
  double out = 0.0;
  for (std::size_t k = 0; k < model.num_players(); ++k) {
    out = std::max(out, std::abs(profile[k] - br(model, profile, k)));
  }
  return out;
}

/// Synchronous best-response iteration s(n+1)_k = b_k(s(n)_{-k}), stopped
/// once the max-norm step is <= tol. Non-convergence is reported through
/// `converged`, not thrown. Reported utilities are the unpriced ones.
template <class Responder>
SolveReport br_dynamics(const NetworkModel& model, const Responder& br,
                        PowerProfile init, const BrOptions& options = {}) {
  model.validate();
  init.validate(model);
  if (options.max_iter < 1) {
    throw std::invalid_argument("max_iter must be >= 1");
  }
  std::vector<PowerProfile> trace{init};
  PowerProfile current = std::move(init);
  bool step_small = false;
  std::size_t it = 0;
  while (it < options.max_iter) {
    PowerProfile next = current;
    double step = 0.0;
    for (std::size_t k = 0; k < model.num_players(); ++k) {
      next[k] = br(model, current, k);
      step = std::max(step, std::abs(next[k] - current[k]));
    }
    current = std::move(next);
    trace.push_back(current);
    ++it;
    if (step <= options.tol) {
      step_small = true;
      break;
    }
  }
  SolveReport report = describe_profile(model, current);
  report.iterations = it;
  report.trace = std::move(trace);
  report.residual = fixed_point_residual(model, br, current);
  report.converged = step_small && report.residual <= options.tol;
  return report;
}

/// The unpriced Nash equilibrium, iterating from [p, ..., p].
inline SolveReport ne_continuous(const NetworkModel& model,
                                 const BrOptions& options = {}) {
  model.validate();
  return br_dynamics(model, EeResponder(model),
                     PowerProfile(std::vector<double>(model.num_players(),
                                                      model.power_cap)),
                     options);
}

/// Nash equilibrium of the priced game, iterating from [p, ..., p].
inline SolveReport priced_ne(const NetworkModel& model,
                             const PricingConfig& pricing,
                             const BrOptions& options = {},
                             double br_tol = kPricedBrTol) {
  model.validate();
  return br_dynamics(model, PricedResponder(pricing, br_tol),
                     PowerProfile(std::vector<double>(model.num_players(),
                                                      model.power_cap)),
                     options);
}

}  // namespace icgame

#endif  // ICGAME_CONTINUOUS_GAME_HPP
