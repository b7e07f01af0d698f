// Copyright 2026 The bangbang Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bangbang/controls.hpp"
#include "bangbang/error.hpp"

namespace bangbang {

/// Constant field `amplitude` (rad/time, hbar = 1) on one channel for
/// `duration` time units.
struct Pulse {
  ControlChannel channel;
  double amplitude = 0.0;
  double duration = 0.0;

  double area() const { return amplitude * duration; }
};

/// Pulses that run simultaneously for a common duration. More than one pulse
/// is only allowed when all are Z pulses on distinct levels.
struct Step {
  std::vector<Pulse> pulses;

  double duration() const { return pulses.empty() ? 0.0 : pulses.front().duration; }
};

enum class Family { YZ, XZ };

inline std::string to_string(Family f) { return f == Family::YZ ? "yz" : "xz"; }

inline Family parse_family(std::string_view text) {
  if (text == "yz" || text == "YZ") return Family::YZ;
  if (text == "xz" || text == "XZ") return Family::XZ;
  throw Error(ErrorCode::ParseError, "unknown family '" + std::string(text) + "'");
}

/// How pulse amplitudes are chosen: either a fixed L, or the time-energy
/// optimum L = sqrt(lambda).
class AmplitudeRule {
 public:
  static AmplitudeRule uniform(double amplitude) {
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
      throw Error(ErrorCode::NonpositiveAmplitude, "amplitude must be positive, got " + std::to_string(amplitude));
    }
    return AmplitudeRule(amplitude, std::nullopt);
  }

  static AmplitudeRule time_energy_optimal(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
      throw Error(ErrorCode::NonpositiveLambda, "lambda must be positive, got " + std::to_string(lambda));
    }
    return AmplitudeRule(std::sqrt(lambda), lambda);
  }

  double amplitude() const { return amplitude_; }
  const std::optional<double>& lambda() const { return lambda_; }
  std::string name() const { return lambda_ ? "time_energy_optimal" : "uniform"; }

 private:
  AmplitudeRule(double amplitude, std::optional<double> lambda) : amplitude_(amplitude), lambda_(lambda) {}

  double amplitude_;
  std::optional<double> lambda_;
};

struct ScheduleMeta {
  std::string family = "yz";
  std::string source = "transfer";  // "transfer" or "unitary"
  std::string amplitude_rule = "uniform";
  std::optional<double> lambda;
  double amplitude = 1.0;  // nominal L used to build the schedule
  bool concurrent = false;
  bool nonnegative_time = false;
};

struct Schedule {
  int dim = 0;
  std::vector<Step> steps;
  ScheduleMeta meta;

  double total_time() const {
    double t = 0.0;
    for (const auto& s : steps) t += s.duration();
    return t;
  }
};

/// Enforces the step invariants: finite nonnegative equal durations, valid
/// channels, and commuting (all-Z, distinct) pulses when concurrent.
inline void check_step(const Step& step, int dim) {
  for (const auto& p : step.pulses) {
    check_channel(p.channel, dim);
    if (!std::isfinite(p.duration) || p.duration < 0.0 || !std::isfinite(p.amplitude)) {
      throw Error(ErrorCode::InvalidSchedule, "pulse on " + to_string(p.channel) + " has invalid duration or amplitude");
    }
    const double t0 = step.pulses.front().duration;
    if (std::abs(p.duration - t0) > 1e-12 * std::max(1.0, t0)) {
      throw Error(ErrorCode::InvalidSchedule, "pulses within one step must share a duration");
    }
  }
  if (step.pulses.size() > 1) {
    std::set<int> seen;
    for (const auto& p : step.pulses) {
      if (p.channel.kind != ChannelKind::Z || !seen.insert(p.channel.index).second) {
        throw Error(ErrorCode::NonCommutingStep, "concurrent pulses must be Z pulses on distinct levels");
      }
    }
  }
}

inline void check_schedule(const Schedule& s) {
  if (s.dim < 1) throw Error(ErrorCode::InvalidSchedule, "schedule dimension must be positive");
  for (const auto& step : s.steps) check_step(step, s.dim);
}

/// Turns groups of rotations into timed steps at amplitude L.
///
/// A single rotation by g becomes one pulse of amplitude sign(g) L and
/// duration |g|/L. A group of commuting Z rotations runs for the common
/// duration max|g|/L with per-channel amplitude g/t. With nonnegative_time,
/// negative angles are first replaced by g + 2pi.
inline std::vector<Step> steps_from_groups(const std::vector<std::vector<Rotation>>& groups, double amplitude,
                                           bool nonnegative_time) {
  if (!(amplitude > 0.0)) throw Error(ErrorCode::NonpositiveAmplitude, "amplitude must be positive");
  std::vector<Step> steps;
  steps.reserve(groups.size());
  for (const auto& group : groups) {
    Step step;
    double largest = 0.0;
    std::vector<double> angles;
    angles.reserve(group.size());
    for (const auto& r : group) {
      double g = r.angle;
      if (nonnegative_time && g < 0.0) g += kTwoPi;
      angles.push_back(g);
      largest = std::max(largest, std::abs(g));
    }
    const double t = largest / amplitude;
    for (std::size_t i = 0; i < group.size(); ++i) {
      const double amp = t > 0.0 ? angles[i] / t : 0.0;
      step.pulses.push_back({group[i].channel, amp, t});
    }
    steps.push_back(std::move(step));
  }
  return steps;
}

/// Rescales every step so that its largest |amplitude| becomes `amplitude`,
/// preserving each pulse area.
inline Schedule rescale_schedule(const Schedule& s, double amplitude) {
  if (!(amplitude > 0.0)) throw Error(ErrorCode::NonpositiveAmplitude, "amplitude must be positive");
  Schedule out = s;
  for (auto& step : out.steps) {
    double largest = 0.0;
    for (const auto& p : step.pulses) largest = std::max(largest, std::abs(p.amplitude));
    if (largest == 0.0 || step.duration() == 0.0) continue;
    const double scale = amplitude / largest;
    for (auto& p : step.pulses) {
      p.amplitude *= scale;
      p.duration /= scale;
    }
  }
  out.meta.amplitude = amplitude;
  return out;
}

/// The schedule that undoes s: steps in reverse order with negated amplitudes.
inline Schedule inverse_schedule(const Schedule& s) {
  Schedule out = s;
  std::reverse(out.steps.begin(), out.steps.end());
  for (auto& step : out.steps) {
    for (auto& p : step.pulses) p.amplitude = -p.amplitude;
  }
  return out;
}

inline Schedule concat(const Schedule& first, const Schedule& second) {
  if (first.dim != second.dim) throw Error(ErrorCode::DimMismatch, "cannot concatenate schedules of different dimension");
  Schedule out = first;
  out.steps.insert(out.steps.end(), second.steps.begin(), second.steps.end());
  return out;
}

}  // namespace bangbang
