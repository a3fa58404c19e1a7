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

#ifndef ICGAME_ERRORS_HPP
#define ICGAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace icgame {

// Out-of-range player or strategy indices raise std::out_of_range; arithmetic
// domain violations raise std::domain_error. The types below cover the
// failure modes callers are expected to tell apart.

/// A model, profile or config value breaks one of its invariants. `field()`
/// names the offending value as a dotted path, e.g. "network.gains[0][1]".
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// An operation's modelling assumption does not hold for the given inputs.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Packet length L = 1: the energy-efficiency utility is monotone in the
/// SINR and there is no interior optimum.
class DegeneratePacketLength : public std::domain_error {
 public:
  DegeneratePacketLength()
      : std::domain_error(
            "packet_bits must be >= 2 for an interior optimal SINR to exist") {}
};

/// Utility-plane operations are only defined for two players.
class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No sampled profile weakly improves on the disagreement point.
class EmptyImprovementRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cooperation does not strictly beat punishment for some player, so a
/// trigger strategy cannot sustain it.
class NotIndividuallyRational : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace icgame

#endif  // ICGAME_ERRORS_HPP
