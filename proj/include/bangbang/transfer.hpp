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

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "bangbang/controls.hpp"
#include "bangbang/error.hpp"
#include "bangbang/hypersphere.hpp"
#include "bangbang/numerics.hpp"
#include "bangbang/schedule.hpp"
#include "bangbang/simulator.hpp"

namespace bangbang {

/// Rotations with |angle| below this are dropped by pruning.
inline constexpr double kPruneTol = 1e-12;

/// Fidelity threshold every synthesized transfer must reach.
inline constexpr double kTransferFidelityTol = 1e-10;

/// Ordered rotations steering `initial` to `target`; rotations[0] acts first.
struct RotationSequence {
  int dim = 0;
  Family family = Family::YZ;
  std::vector<Rotation> rotations;
  bool pruned = false;
  bool phase_corrected = false;
  std::string correction_variant;  // which X-family phase correction validated
  ComplexVector initial;
  ComplexVector target;
};

/// Rotations grouped into steps; each step is a single rotation or a set of
/// commuting Z rotations on distinct levels.
struct GroupedSequence {
  int dim = 0;
  Family family = Family::YZ;
  std::vector<std::vector<Rotation>> steps;
  bool concurrent = false;
};

inline ComplexVector apply_sequence(const RotationSequence& seq, const ComplexVector& psi) {
  if (psi.size() != seq.dim) throw Error(ErrorCode::DimMismatch, "state does not match sequence dimension");
  ComplexVector out = psi;
  for (const auto& r : seq.rotations) apply_rotation(r, out);
  return out;
}

inline ComplexMatrix sequence_unitary(const RotationSequence& seq) {
  ComplexMatrix u = ComplexMatrix::Identity(seq.dim, seq.dim);
  for (const auto& r : seq.rotations) apply_rotation(r, u);
  return u;
}

inline RotationSequence prune(RotationSequence seq) {
  std::erase_if(seq.rotations, [](const Rotation& r) { return std::abs(r.angle) < kPruneTol; });
  seq.pruned = true;
  return seq;
}

inline ComplexVector uniform_superposition(int n) {
  return ComplexVector::Constant(n, Complex(1.0 / std::sqrt(static_cast<double>(n)), 0.0));
}

namespace detail {

inline void check_unit(const ComplexVector& v, const char* what) {
  const double err = std::abs(v.norm() - 1.0);
  if (!(err <= kTransferFidelityTol)) {
    throw Error(ErrorCode::NotUnit, std::string(what) + " state is not normalized (| |v| - 1 | = " + std::to_string(err) + ")");
  }
}

/// True if any X or Y rotation has a non-negligible angle. Without one the
/// X and Y families coincide and no frame correction is needed.
inline bool has_population_rotation(const std::vector<Rotation>& rotations) {
  for (const auto& r : rotations)
    if (!is_phase_channel(r.channel) && std::abs(r.angle) >= kPruneTol) return true;
  return false;
}

/// True if a and b differ by a global phase only, to kNegligible per entry.
inline bool same_ray(const ComplexVector& a, const ComplexVector& b) {
  const Complex overlap = b.dot(a);
  if (std::abs(overlap) < 0.5) return false;
  const Complex phase = overlap / std::abs(overlap);
  return (a - phase * b).cwiseAbs().maxCoeff() <= kNegligible;
}

/// Index range [first, size) of the trailing run of Z rotations.
inline std::size_t trailing_phase_block(const std::vector<Rotation>& rotations) {
  std::size_t first = rotations.size();
  while (first > 0 && is_phase_channel(rotations[first - 1].channel)) --first;
  return first;
}

/// Adds `angle` to the Z_level rotation of the trailing phase block, or
/// appends a new one.
inline void merge_into_tail(std::vector<Rotation>& rotations, int level, double angle) {
  const std::size_t first = trailing_phase_block(rotations);
  for (std::size_t i = first; i < rotations.size(); ++i) {
    if (rotations[i].channel.index == level) {
      rotations[i].angle = wrap_phase(rotations[i].angle + angle);
      return;
    }
  }
  rotations.push_back({Z(level), wrap_phase(angle)});
}

}  // namespace detail

/// The raw transfer sequence, 4N - 5 rotations before pruning:
///
///   Z_{n+1}(phi0_n)         n = N-1 .. 1     remove the initial phases
///   P_n(-theta0_n)          n = N-1 .. 2     fold population onto |1>,|2>
///   P_1(theta1_s - theta1_0)
///   P_n(thetas_n)           n = 2 .. N-1     unfold into the target pattern
///   Z_{n+1}(-phis_n)        n = 1 .. N-1     imprint the target phases
///
/// where P is Y for the YZ family and X for the XZ family. X_n equals
/// D^dag Y_n D with D = diag(i^(k-1)), so for the XZ family the head phase
/// block additionally applies D^dag (a quarter turn per level on every
/// populated level) whenever some population angle is nonzero. Without the
/// tail correction the XZ result is then D^dag |target>: right magnitudes,
/// level k off by (-i)^(k-1).
inline RotationSequence synthesize_transfer_uncorrected(const ComplexVector& c0, const ComplexVector& cs,
                                                        Family family = Family::YZ, bool prune_zero = false) {
  if (c0.size() != cs.size()) throw Error(ErrorCode::DimMismatch, "initial and target dimensions differ");
  const auto n = static_cast<int>(c0.size());
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "state transfer needs dim >= 2");
  detail::check_unit(c0, "initial");
  detail::check_unit(cs, "target");

  const HypersphericalCoords from = to_hyperspherical(c0);
  const HypersphericalCoords to = to_hyperspherical(cs);
  auto pop = [family](int k) { return family == Family::YZ ? Y(k) : X(k); };

  RotationSequence seq;
  seq.dim = n;
  seq.family = family;
  seq.initial = c0;
  seq.target = cs;
  auto& rs = seq.rotations;
  rs.reserve(static_cast<std::size_t>(4 * n - 5));

  for (int k = n - 1; k >= 1; --k) rs.push_back({Z(k + 1), from.phi[k - 1]});
  for (int k = n - 1; k >= 2; --k) rs.push_back({pop(k), -from.theta[k - 1]});
  rs.push_back({pop(1), to.theta[0] - from.theta[0]});
  for (int k = 2; k <= n - 1; ++k) rs.push_back({pop(k), to.theta[k - 1]});
  for (int k = 1; k <= n - 1; ++k) rs.push_back({Z(k + 1), -to.phi[k - 1]});

  // Folding and unfolding the same coordinates cancels; keep the channel
  // layout but make the no-op explicit.
  if (detail::same_ray(c0, cs)) {
    for (auto& r : rs) r.angle = 0.0;
  }

  if (family == Family::XZ && detail::has_population_rotation(rs)) {
    for (int k = 1; k <= n - 1; ++k) {
      if (std::abs(c0(k)) > kNegligible) rs[n - 1 - k].angle = wrap_phase(rs[n - 1 - k].angle + 0.5 * kPi * k);
    }
  }

  for (auto& r : rs) r.angle = normalize_angle(r.angle);
  return prune_zero ? prune(std::move(seq)) : seq;
}

/// Cancels the per-level phase error of an XZ sequence by Z rotations merged
/// into its final phase block.
///
/// The quarter-turn correction Z_k(-pi/2 ((k-1) mod 4)) is tried first and
/// checked by propagation when the endpoints are known; if it does not reach
/// the fidelity threshold, the residual phase of each level is measured on
/// the propagated state and cancelled directly.
inline RotationSequence apply_x_phase_correction(const RotationSequence& seq) {
  if (seq.family != Family::XZ) throw Error(ErrorCode::WrongFamily, "phase correction applies to XZ sequences only");
  if (seq.phase_corrected) return seq;

  RotationSequence out = seq;
  if (!detail::has_population_rotation(seq.rotations)) {
    out.phase_corrected = true;
    out.correction_variant = "none-needed";
    return out;
  }
  for (int k = 2; k <= seq.dim; ++k) {
    const int quarter_turns = (k - 1) % 4;
    if (quarter_turns != 0) detail::merge_into_tail(out.rotations, k, -0.5 * kPi * quarter_turns);
  }
  out.phase_corrected = true;
  out.correction_variant = "quarter-turn";

  const bool have_endpoints = seq.initial.size() == seq.dim && seq.target.size() == seq.dim;
  if (have_endpoints && fidelity(seq.target, apply_sequence(out, seq.initial)) < 1.0 - kTransferFidelityTol) {
    out = seq;
    const ComplexVector reached = apply_sequence(seq, seq.initial);
    int ref = -1;
    for (int k = 0; k < seq.dim; ++k) {
      if (std::abs(seq.target(k)) > kNegligible) {
        ref = k;
        break;
      }
    }
    if (ref >= 0) {
      const double ref_error = std::arg(reached(ref) * std::conj(seq.target(ref)));
      for (int k = ref + 1; k < seq.dim; ++k) {
        if (std::abs(seq.target(k)) <= kNegligible) continue;
        const double error = wrap_phase(std::arg(reached(k) * std::conj(seq.target(k))) - ref_error);
        if (std::abs(error) > 0.0) detail::merge_into_tail(out.rotations, k + 1, error);
      }
    }
    out.phase_corrected = true;
    out.correction_variant = "exact-cancellation";
  }
  return out.pruned ? prune(std::move(out)) : out;
}

/// Bang-bang rotation sequence taking c0 to cs up to a global phase.
inline RotationSequence synthesize_transfer(const ComplexVector& c0, const ComplexVector& cs,
                                            Family family = Family::YZ, bool prune_zero = false) {
  RotationSequence seq = synthesize_transfer_uncorrected(c0, cs, family, prune_zero);
  return family == Family::XZ ? apply_x_phase_correction(seq) : seq;
}

/// One rotation per step.
inline GroupedSequence sequential_groups(const RotationSequence& seq) {
  GroupedSequence g{seq.dim, seq.family, {}, false};
  g.steps.reserve(seq.rotations.size());
  for (const auto& r : seq.rotations) g.steps.push_back({r});
  return g;
}

/// Merges each run of consecutive Z rotations on distinct levels into one
/// concurrent step; population rotations stay on their own. An unpruned
/// transfer sequence compresses to 2N - 1 steps.
inline GroupedSequence compress_concurrent(const RotationSequence& seq) {
  GroupedSequence g{seq.dim, seq.family, {}, true};
  std::set<int> levels;
  bool open_phase_step = false;
  for (const auto& r : seq.rotations) {
    if (is_phase_channel(r.channel) && open_phase_step && !levels.contains(r.channel.index)) {
      g.steps.back().push_back(r);
      levels.insert(r.channel.index);
      continue;
    }
    g.steps.push_back({r});
    open_phase_step = is_phase_channel(r.channel);
    levels.clear();
    if (open_phase_step) levels.insert(r.channel.index);
  }
  return g;
}

/// Timed schedule for a grouped sequence; see steps_from_groups for how
/// angles become amplitudes and durations.
inline Schedule to_schedule(const GroupedSequence& g, const AmplitudeRule& rule, bool nonnegative_time = false) {
  Schedule s;
  s.dim = g.dim;
  s.steps = steps_from_groups(g.steps, rule.amplitude(), nonnegative_time);
  s.meta.family = to_string(g.family);
  s.meta.source = "transfer";
  s.meta.amplitude_rule = rule.name();
  s.meta.lambda = rule.lambda();
  s.meta.amplitude = rule.amplitude();
  s.meta.concurrent = g.concurrent;
  s.meta.nonnegative_time = nonnegative_time;
  return s;
}

/// Pruned transfer from |1> to the uniform superposition of N levels. For
/// the YZ family this is the N - 1 population rotations Y_n(theta_n).
inline RotationSequence w_state_sequence(int n, Family family = Family::YZ) {
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "W state needs N >= 2");
  return synthesize_transfer(basis_state(n, 0), uniform_superposition(n), family, true);
}

}  // namespace bangbang
