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
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "bangbang/controls.hpp"
#include "bangbang/hypersphere.hpp"
#include "bangbang/numerics.hpp"
#include "bangbang/schedule.hpp"
#include "bangbang/simulator.hpp"
#include "bangbang/timeenergy.hpp"
#include "bangbang/transfer.hpp"
#include "bangbang/unitary.hpp"

namespace bangbang::verify {

/// Outcome of one property: the worst metric seen against its limit.
struct PropertyResult {
  std::string name;
  double worst = 0.0;
  double limit = 0.0;
  long cases = 0;

  bool passed() const { return worst <= limit; }
};

inline constexpr double kFail = std::numeric_limits<double>::infinity();

namespace detail {

/// Independent stream per property so results do not depend on run order.
inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t salt) {
  std::seed_seq seq{seed, salt, std::uint64_t{0x62616e67}};
  return std::mt19937_64(seq);
}

inline bool in_range(const HypersphericalCoords& h) {
  for (double t : h.theta)
    if (!(t >= 0.0 && t <= kPi / 2)) return false;
  for (double p : h.phi)
    if (!(p > -kPi && p <= kPi)) return false;
  return true;
}

inline double max_abs(const ComplexVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

}  // namespace detail

/// Random unit vector with some entries forced to zero (at least one kept).
template <class Rng>
ComplexVector random_sparse_unit_vector(int n, Rng& rng) {
  ComplexVector v = random_unit_vector(n, rng);
  std::bernoulli_distribution drop(0.4);
  std::uniform_int_distribution<int> pick(0, n - 1);
  const int keep = pick(rng);
  for (int i = 0; i < n; ++i)
    if (i != keep && drop(rng)) v(i) = 0.0;
  v.normalize();
  return v;
}

/// Round trip c -> coords -> vector with the phase of c_1 removed, on dense
/// and sparse random vectors. Range violations count as failures.
inline PropertyResult hypersphere_round_trip(std::uint64_t seed, int per_dim, int n_lo = 2, int n_hi = 16) {
  PropertyResult r{"hypersphere.round_trip", 0.0, 1e-10, 0};
  auto rng = detail::stream(seed, 1);
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int i = 0; i < per_dim; ++i) {
      ComplexVector c = (i % 4 == 3) ? random_sparse_unit_vector(n, rng) : random_unit_vector(n, rng);
      c *= std::polar(1.0, -std::arg(c(0)));
      const HypersphericalCoords h = to_hyperspherical(c);
      if (!detail::in_range(h)) r.worst = kFail;
      r.worst = std::max(r.worst, detail::max_abs(from_hyperspherical(h) - c));
      ++r.cases;
    }
  }
  return r;
}

/// Transfer completeness for both families, sequential and concurrent
/// execution. Returns the worst infidelity and the worst deviation of the
/// rotation and step counts from 4N - 5 and 2N - 1.
inline std::vector<PropertyResult> transfer_completeness(std::uint64_t seed, int per_dim, int n_lo = 2, int n_hi = 12) {
  PropertyResult fid{"transfer.fidelity", 0.0, kTransferFidelityTol, 0};
  PropertyResult counts{"transfer.step_counts", 0.0, 0.0, 0};
  auto rng = detail::stream(seed, 2);
  const auto rule = AmplitudeRule::time_energy_optimal(1.0);
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int i = 0; i < per_dim; ++i) {
      const ComplexVector c0 = random_unit_vector(n, rng);
      const ComplexVector cs = random_unit_vector(n, rng);
      for (Family family : {Family::YZ, Family::XZ}) {
        const RotationSequence seq = synthesize_transfer(c0, cs, family);
        const GroupedSequence grouped = compress_concurrent(seq);
        counts.worst = std::max(counts.worst, std::abs(static_cast<double>(seq.rotations.size()) - (4 * n - 5)));
        counts.worst = std::max(counts.worst, std::abs(static_cast<double>(grouped.steps.size()) - (2 * n - 1)));
        const Schedule concurrent = to_schedule(grouped, rule);
        fid.worst = std::max(fid.worst, 1.0 - fidelity(cs, propagate(concurrent, c0).final_state()));
        const Schedule sequential = to_schedule(sequential_groups(seq), rule);
        fid.worst = std::max(fid.worst, 1.0 - fidelity(cs, propagate(sequential, c0).final_state()));
        fid.cases += 2;
        ++counts.cases;
      }
    }
  }
  return {fid, counts};
}

/// Time and cost bounds on synthesized sequences. The metric is the largest
/// relative excess value / bound - 1, which must stay nonpositive.
inline PropertyResult transfer_bounds(std::uint64_t seed, int per_dim, int n_lo = 2, int n_hi = 12) {
  PropertyResult r{"timeenergy.bounds", -kFail, 0.0, 0};
  auto rng = detail::stream(seed, 3);
  std::uniform_real_distribution<double> log_lambda(-2.0, 2.0);
  for (int n = n_lo; n <= n_hi; ++n) {
    for (int i = 0; i < per_dim; ++i) {
      const ComplexVector c0 = random_unit_vector(n, rng);
      const ComplexVector cs = random_unit_vector(n, rng);
      const double lambda = std::pow(10.0, log_lambda(rng));
      const double amplitude = std::sqrt(lambda);
      for (Family family : {Family::YZ, Family::XZ}) {
        const RotationSequence seq = synthesize_transfer(c0, cs, family);
        const auto excess = [&](double value, double bound) { r.worst = std::max(r.worst, value / bound - 1.0); };
        excess(sequential_time(seq, amplitude), sequential_time_bound(n, amplitude));
        excess(concurrent_time(seq, amplitude), concurrent_time_bound(n, amplitude));
        excess(time_energy_product(seq), time_energy_product_bound(n));
        const TimeEnergyReport seq_cost = sequential_cost(seq, lambda);
        const TimeEnergyReport con_cost = concurrent_cost(seq, lambda);
        excess(seq_cost.t_f, *seq_cost.t_f_bound);
        excess(seq_cost.J, *seq_cost.J_bound);
        excess(seq_cost.energy, *seq_cost.E_bound);
        excess(con_cost.t_f, *con_cost.t_f_bound);
        excess(con_cost.J, seq_cost.J);
        ++r.cases;
      }
    }
  }
  return r;
}

/// A random transfer sequence with N drawn from [2, 8].
template <class Rng>
RotationSequence random_transfer_sequence(Rng& rng) {
  std::uniform_int_distribution<int> dim(2, 8);
  const int n = dim(rng);
  const ComplexVector c0 = random_unit_vector(n, rng);
  const ComplexVector cs = random_unit_vector(n, rng);
  return synthesize_transfer(c0, cs, Family::YZ);
}

/// J(L) on the grid L = sqrt(lambda) (0.5 + 0.05 k), k = 0..20, must be
/// strictly smallest at k = 10; there J = 2 lambda t_f and E = lambda t_f.
/// The metric is the worst relative error of those identities.
inline PropertyResult grid_optimality(std::uint64_t seed, int sequences, const std::vector<double>& lambdas = {0.25, 1.0, 4.0}) {
  PropertyResult r{"timeenergy.grid_optimality", 0.0, 1e-12, 0};
  auto rng = detail::stream(seed, 4);
  for (int i = 0; i < sequences; ++i) {
    const RotationSequence seq = random_transfer_sequence(rng);
    const GroupedSequence groups = sequential_groups(seq);
    for (double lambda : lambdas) {
      const double root = std::sqrt(lambda);
      const TimeEnergyReport best = evaluate_cost(to_schedule(groups, AmplitudeRule::uniform(root)), lambda);
      for (int k = 0; k <= 20; ++k) {
        if (k == 10) continue;
        const double amplitude = root * (10.0 + k) / 20.0;
        const TimeEnergyReport other = evaluate_cost(to_schedule(groups, AmplitudeRule::uniform(amplitude)), lambda);
        if (!(best.J < other.J)) r.worst = kFail;
      }
      r.worst = std::max(r.worst, std::abs(best.J - 2.0 * lambda * best.t_f) / best.J);
      r.worst = std::max(r.worst, std::abs(best.energy - lambda * best.t_f) / best.energy);
      ++r.cases;
    }
  }
  return r;
}

/// t_f * E at the optimal amplitude across a wide lambda range: relative
/// spread, and agreement with (sum |angle|)^2.
inline PropertyResult product_invariance(std::uint64_t seed, int sequences,
                                         const std::vector<double>& lambdas = {1e-4, 0.1, 1.0, 10.0, 100.0}) {
  PropertyResult r{"timeenergy.product_invariance", 0.0, 1e-9, 0};
  auto rng = detail::stream(seed, 5);
  for (int i = 0; i < sequences; ++i) {
    const RotationSequence seq = random_transfer_sequence(rng);
    const double expected = time_energy_product(seq);
    if (expected > time_energy_product_bound(seq.dim)) r.worst = kFail;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double lambda : lambdas) {
      const TimeEnergyReport rep = sequential_cost(seq, lambda);
      lo = std::min(lo, rep.product);
      hi = std::max(hi, rep.product);
      r.worst = std::max(r.worst, std::abs(rep.product - expected) / expected);
    }
    r.worst = std::max(r.worst, (hi - lo) / expected);
    ++r.cases;
  }
  return r;
}

/// Unitary with a deliberately repeated spectrum: V diag(p) V^dag with the
/// phases p drawn from a three-element set.
template <class Rng>
ComplexMatrix random_degenerate_unitary(int n, Rng& rng) {
  const ComplexMatrix v = random_unitary(n, rng());
  std::uniform_int_distribution<int> pick(0, 2);
  const double choices[] = {0.0, kPi / 2, kPi};
  ComplexVector d(n);
  for (int i = 0; i < n; ++i) d(i) = std::polar(1.0, choices[pick(rng)]);
  return v * d.asDiagonal() * v.adjoint();
}

/// Kronecker product A (x) I_m: every eigenvalue of A repeated m times.
inline ComplexMatrix kron_identity(const ComplexMatrix& a, int m) {
  const Eigen::Index n = a.rows();
  ComplexMatrix out = ComplexMatrix::Zero(n * m, n * m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k) out(i * m + k, j * m + k) = a(i, j);
  return out;
}

/// The unitary test battery for dimension n: random unitaries plus identity,
/// a diagonal, and degenerate-spectrum cases.
template <class Rng>
std::vector<ComplexMatrix> unitary_battery(int n, int random_count, Rng& rng) {
  std::vector<ComplexMatrix> out;
  for (int i = 0; i < random_count; ++i) out.push_back(random_unitary(n, rng()));
  out.push_back(ComplexMatrix::Identity(n, n));
  ComplexVector d(n);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < n; ++i) d(i) = std::polar(1.0, angle(rng));
  out.push_back(d.asDiagonal());
  out.push_back(random_degenerate_unitary(n, rng));
  out.push_back(-ComplexMatrix::Identity(n, n));
  if (n % 2 == 0) out.push_back(kron_identity(random_unitary(n / 2, rng()), 2));
  return out;
}

/// Factorize, emit the schedule, propagate it and compare with the input.
/// Returns the spectral-norm residual, the schedule-vs-reconstruct
/// agreement, and the step-count deviation from N(N+1) - 1.
inline std::vector<PropertyResult> unitary_reconstruction(std::uint64_t seed, int per_dim, int n_lo = 2, int n_hi = 8) {
  PropertyResult residual{"unitary.reconstruction", 0.0, 1e-8, 0};
  PropertyResult agreement{"unitary.schedule_matches_reconstruct", 0.0, 1e-10, 0};
  PropertyResult counts{"unitary.step_count", 0.0, 0.0, 0};
  auto rng = detail::stream(seed, 6);
  const auto rule = AmplitudeRule::uniform(1.0);
  for (int n = n_lo; n <= n_hi; ++n) {
    for (const ComplexMatrix& u : unitary_battery(n, per_dim, rng)) {
      const UnitaryFactorization f = factorize_unitary(u);
      const Schedule s = factorization_to_schedule(f, rule);
      const ComplexMatrix propagated = propagate_operator(s);
      residual.worst = std::max(residual.worst, operator_distance(propagated, u));
      agreement.worst = std::max(agreement.worst, operator_distance(propagated, reconstruct(f)));
      counts.worst = std::max(counts.worst, std::abs(static_cast<double>(s.steps.size()) - unitary_step_count(n)));
      ++residual.cases;
      ++agreement.cases;
      ++counts.cases;
    }
  }
  return {residual, agreement, counts};
}

template <class Rng>
StageCoords random_stage(int k, Rng& rng) {
  std::uniform_real_distribution<double> theta(0.0, kPi / 2);
  std::uniform_real_distribution<double> phi(-kPi, kPi);
  StageCoords sc{k, {}, {}};
  for (int j = 0; j < k - 1; ++j) {
    sc.theta.push_back(theta(rng));
    sc.phi.push_back(wrap_phase(phi(rng)));
  }
  return sc;
}

/// Stage operator identities: embedded row c_1 goes to |N-k+1>, row c_j to
/// a unit multiple of |N-k+j>, the leading N-k levels are untouched, and the
/// rows are orthonormal.
inline PropertyResult stage_identities(std::uint64_t seed, int count, int k_lo = 2, int k_hi = 8) {
  PropertyResult r{"unitary.stage_identities", 0.0, 1e-10, 0};
  auto rng = detail::stream(seed, 7);
  std::uniform_int_distribution<int> size(k_lo, k_hi);
  std::uniform_int_distribution<int> extra(0, 2);
  for (int i = 0; i < count; ++i) {
    const int k = size(rng);
    const int n = k + extra(rng);
    const StageCoords sc = random_stage(k, rng);
    const auto rows = stage_rows(sc);
    const StageOperator op = stage_operator(sc, n);
    const int offset = n - k;
    for (int j = 0; j < k; ++j) {
      const ComplexVector image = op.unitary * embed_trailing(rows[j], n);
      const Complex hit = image(offset + j);
      r.worst = std::max(r.worst, std::abs(std::abs(hit) - 1.0));
      if (j == 0) r.worst = std::max(r.worst, std::abs(hit - 1.0));
      ComplexVector rest = image;
      rest(offset + j) = 0.0;
      r.worst = std::max(r.worst, rest.norm());
      for (int m = 0; m < k; ++m) {
        const double delta = j == m ? 1.0 : 0.0;
        r.worst = std::max(r.worst, std::abs(rows[m].dot(rows[j]) - delta));
      }
    }
    if (offset > 0) {
      const ComplexMatrix lead = op.unitary.topLeftCorner(offset, offset);
      r.worst = std::max(r.worst, (lead - ComplexMatrix::Identity(offset, offset)).cwiseAbs().maxCoeff());
      r.worst = std::max(r.worst, op.unitary.topRightCorner(offset, k).cwiseAbs().maxCoeff());
      r.worst = std::max(r.worst, op.unitary.bottomLeftCorner(k, offset).cwiseAbs().maxCoeff());
    }
    ++r.cases;
  }
  return r;
}

template <class Rng>
Step random_single_pulse(int n, Rng& rng) {
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> amplitude(-3.0, 3.0);
  std::uniform_real_distribution<double> duration(0.0, 2.0);
  const auto k = static_cast<ChannelKind>(kind(rng));
  std::uniform_int_distribution<int> index(1, k == ChannelKind::Z ? n : n - 1);
  return Step{{Pulse{{k, index(rng)}, amplitude(rng), duration(rng)}}};
}

/// Closed-form step unitaries against the eigendecomposition exponential,
/// and invariance under amplitude * c, duration / c.
inline std::vector<PropertyResult> simulator_consistency(std::uint64_t seed, int count) {
  PropertyResult exact{"simulator.closed_form_vs_numerical", 0.0, 1e-12, 0};
  PropertyResult area{"simulator.pulse_area_invariance", 0.0, 1e-12, 0};
  auto rng = detail::stream(seed, 8);
  std::uniform_int_distribution<int> dim(2, 8);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int i = 0; i < count; ++i) {
    const int n = dim(rng);
    const Step step = random_single_pulse(n, rng);
    const ComplexMatrix closed = step_unitary(step, n);
    exact.worst = std::max(exact.worst, operator_distance(closed, step_unitary_numerical(step, n)));
    Step scaled = step;
    const double c = scale(rng);
    for (auto& p : scaled.pulses) {
      p.amplitude *= c;
      p.duration /= c;
    }
    area.worst = std::max(area.worst, operator_distance(closed, step_unitary(scaled, n)));
    ++exact.cases;
    ++area.cases;
  }
  return {exact, area};
}

/// Amplitude magnitudes after each W-state pulse for N levels against the
/// closed form: after n pulses levels 1..n hold 1/sqrt(N) and level n + 1
/// holds sqrt((N - n)/N).
inline PropertyResult w_state_trajectory(int n = 10) {
  PropertyResult r{"transfer.w_state_trajectory", 0.0, 1e-12, 0};
  const RotationSequence seq = w_state_sequence(n);
  const Schedule s = to_schedule(sequential_groups(seq), AmplitudeRule::uniform(1.0));
  const Trajectory traj = propagate(s, basis_state(n, 0));
  if (static_cast<int>(traj.states.size()) != n) return {r.name, kFail, r.limit, 0};
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      double expected = 0.0;
      if (col == 0) expected = row == 0 ? 1.0 : 0.0;
      else if (row < col) expected = 1.0 / std::sqrt(static_cast<double>(n));
      else if (row == col) expected = std::sqrt(static_cast<double>(n - col) / n);
      r.worst = std::max(r.worst, std::abs(std::abs(traj.states[col](row)) - expected));
    }
    ++r.cases;
  }
  return r;
}

struct Options {
  std::uint64_t seed = 0;
  int per_dim = 20;            // random cases per dimension
  double tolerance_scale = 1;  // test hook: scales every limit
};

struct Report {
  std::vector<PropertyResult> results;

  bool passed() const {
    return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.passed(); });
  }
};

inline Report run_suite(const Options& opt) {
  Report rep;
  auto add = [&](PropertyResult r) {
    // A negative scale is a corrupted tolerance: nothing can pass.
    r.limit = opt.tolerance_scale < 0.0 ? -kFail : r.limit * opt.tolerance_scale;
    rep.results.push_back(std::move(r));
  };
  add(hypersphere_round_trip(opt.seed, opt.per_dim));
  for (auto& r : transfer_completeness(opt.seed, opt.per_dim)) add(r);
  add(transfer_bounds(opt.seed, opt.per_dim));
  add(w_state_trajectory());
  add(grid_optimality(opt.seed, opt.per_dim));
  add(product_invariance(opt.seed, opt.per_dim));
  for (auto& r : unitary_reconstruction(opt.seed, std::max(1, opt.per_dim / 4))) add(r);
  add(stage_identities(opt.seed, opt.per_dim * 10));
  for (auto& r : simulator_consistency(opt.seed, opt.per_dim * 25)) add(r);
  return rep;
}

inline std::string format_result(const PropertyResult& r) {
  char line[160];
  std::snprintf(line, sizeof line, "%s  %-38s worst=%10.3e  limit=%10.3e  cases=%ld", r.passed() ? "PASS" : "FAIL",
                r.name.c_str(), r.worst, r.limit, r.cases);
  return line;
}

}  // namespace bangbang::verify
