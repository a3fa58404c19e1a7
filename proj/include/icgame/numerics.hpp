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

#ifndef ICGAME_NUMERICS_HPP
#define ICGAME_NUMERICS_HPP

#include <cmath>
#include <cstddef>
#include <utility>

namespace icgame::numerics {

inline constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

/// Root of `f` on [lo, hi] by bisection. Requires f(lo) and f(hi) to have
/// opposite signs (or one of them to be zero). Stops once the bracket is
/// narrower than `x_tol` or stops shrinking in floating point.
template <class F>
double bisect(F&& f, double lo, double hi, double x_tol) {
  double f_lo = f(lo);
  if (f_lo == 0.0) return lo;
  if (f(hi) == 0.0) return hi;
  for (int i = 0; i < 400 && hi - lo > x_tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Golden-section search for the maximum of a unimodal `f` on [lo, hi].
/// Returns (argmax, max). Resolution is bounded by sqrt(machine epsilon)
/// relative to the curvature scale, regardless of `x_tol`.
template <class F>
std::pair<double, double> golden_section_max(F&& f, double lo, double hi,
                                             double x_tol) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < 300 && b - a > x_tol; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

/// `n` evenly spaced points on [lo, hi], endpoints included.
inline double linspace_at(double lo, double hi, std::size_t n, std::size_t i) {
  if (n < 2) return lo;
  if (i + 1 == n) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace icgame::numerics

#endif  // ICGAME_NUMERICS_HPP
