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
#include <string>
#include <vector>

#include "bangbang/controls.hpp"
#include "bangbang/error.hpp"
#include "bangbang/hypersphere.hpp"
#include "bangbang/numerics.hpp"
#include "bangbang/schedule.hpp"

namespace bangbang {

/// Deflation stages whose images must land on a basis state this closely.
inline constexpr double kDeflationTol = 1e-8;

/// Hyperspherical angles of one deflation stage acting on the trailing
/// `size` levels.
struct StageCoords {
  int size = 2;
  std::vector<double> theta;
  std::vector<double> phi;
};

/// U = T^dag D T with D = diag(exp(i eigenphases)) and T the product of the
/// stage operators, stage N acting first.
struct UnitaryFactorization {
  int dim = 0;
  std::vector<double> eigenphases;
  std::vector<StageCoords> stages;  // sizes N, N-1, ..., 2
};

/// Steps of N(N+1) - 1 for the bang-bang realization of an N x N unitary.
inline int unitary_step_count(int n) { return n * (n + 1) - 1; }

/// Steps of the two-level Euler factorization, 3 N(N+1) / 2.
inline int euler_step_count(int n) { return 3 * n * (n + 1) / 2; }

/// The k orthonormal rows c_1 .. c_k of a stage. c_1 is the hyperspherical
/// vector; for j >= 2, c_j has sin(t_{j-1}) exp(i p_{j-2}) at position j-1
/// (p_0 = 0) and, at positions m >= j,
///   -exp(i p_{m-1}) cos(t_{j-1}) sin(t_j) ... sin(t_{m-1}) cos(t_m)
/// with the trailing cos dropped at m = k.
inline std::vector<ComplexVector> stage_rows(const StageCoords& sc) {
  const int k = sc.size;
  std::vector<ComplexVector> rows;
  rows.reserve(static_cast<std::size_t>(k));
  rows.push_back(from_hyperspherical({sc.theta, sc.phi}));
  auto phase = [&](int p) { return p == 0 ? Complex(1.0, 0.0) : std::polar(1.0, sc.phi[p - 1]); };
  for (int j = 2; j <= k; ++j) {
    ComplexVector row = ComplexVector::Zero(k);
    row(j - 2) = phase(j - 2) * std::sin(sc.theta[j - 2]);
    double tail = std::cos(sc.theta[j - 2]);
    for (int m = j; m <= k; ++m) {
      const double closing = m < k ? std::cos(sc.theta[m - 1]) : 1.0;
      row(m - 1) = -phase(m - 1) * tail * closing;
      if (m < k) tail *= std::sin(sc.theta[m - 1]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct StageOperator {
  std::vector<Rotation> phase_block;  // concurrent Z rotations, applied first
  std::vector<Rotation> ladder;       // Y rotations in application order
  ComplexMatrix unitary;
};

/// Stage operator on the trailing k = sc.size levels of an N-level system.
///
/// The Z block Z_{N-k+j+1}(p_j) removes the row phases, then the ladder
/// Y_{N-k+j}(-t_j) for j = k-1 down to 1 folds the amplitudes upwards. The
/// operator sends the embedded c_1 to |N-k+1>, each embedded c_j (j >= 2)
/// to -|N-k+j>, and is the identity on the first N-k levels.
inline StageOperator stage_operator(const StageCoords& sc, int n) {
  const int k = sc.size;
  if (k < 2 || k > n) throw Error(ErrorCode::BadIndex, "stage size " + std::to_string(k) + " invalid for N = " + std::to_string(n));
  StageOperator op;
  const int offset = n - k;
  for (int j = 1; j <= k - 1; ++j) op.phase_block.push_back({Z(offset + j + 1), sc.phi[j - 1]});
  for (int j = k - 1; j >= 1; --j) op.ladder.push_back({Y(offset + j), -sc.theta[j - 1]});
  op.unitary = ComplexMatrix::Identity(n, n);
  for (const auto& r : op.phase_block) apply_rotation(r, op.unitary);
  for (const auto& r : op.ladder) apply_rotation(r, op.unitary);
  return op;
}

/// Embeds a k-vector into the trailing k coordinates of C^N.
inline ComplexVector embed_trailing(const ComplexVector& v, int n) {
  ComplexVector out = ComplexVector::Zero(n);
  out.tail(v.size()) = v;
  return out;
}

/// Factors U by deflation: each stage maps the current image of one
/// eigenvector to a basis state, shrinking the active block by one level.
inline UnitaryFactorization factorize_unitary(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) throw Error(ErrorCode::NotUnitary, "matrix is not square");
  const auto n = static_cast<int>(u.rows());
  if (n < 2) throw Error(ErrorCode::DimensionTooSmall, "factorization needs N >= 2");
  const UnitaryEigen eig = eig_unitary(u);

  UnitaryFactorization f;
  f.dim = n;
  f.eigenphases = eig.phases;
  ComplexMatrix images = eig.vectors;

  auto check_basis = [&](int col) {
    ComplexVector residual = images.col(col);
    const double mag = std::abs(residual(col));
    if (mag > 0.0) residual(col) -= residual(col) / mag;
    const double dev = residual.norm();
    if (!(dev <= kDeflationTol)) {
      throw Error(ErrorCode::DeflationFailure,
                  "eigenvector " + std::to_string(col + 1) + " deviates from a basis state by " + std::to_string(dev));
    }
  };

  for (int k = n; k >= 2; --k) {
    const int pos = n - k;
    ComplexVector active = images.col(pos).tail(k);
    fix_global_phase(active);
    const HypersphericalCoords h = to_hyperspherical(active);
    StageCoords sc{k, h.theta, h.phi};
    const StageOperator op = stage_operator(sc, n);
    images = op.unitary * images;
    check_basis(pos);
    f.stages.push_back(std::move(sc));
  }
  check_basis(n - 1);
  return f;
}

/// Central block realizing sum_n exp(i phase_n) |n><n|; Z_n(a) contributes
/// exp(-i a), hence the negated angles.
inline std::vector<Rotation> central_block(const UnitaryFactorization& f) {
  std::vector<Rotation> block;
  for (int j = 0; j < f.dim; ++j) block.push_back({Z(j + 1), -f.eigenphases[j]});
  return block;
}

/// Rotation groups of the full realization: T, central block, then T^dag as
/// the reversed, angle-negated mirror of T.
inline std::vector<std::vector<Rotation>> factorization_groups(const UnitaryFactorization& f) {
  std::vector<std::vector<Rotation>> t_groups;
  for (const auto& sc : f.stages) {
    const StageOperator op = stage_operator(sc, f.dim);
    t_groups.push_back(op.phase_block);
    for (const auto& r : op.ladder) t_groups.push_back({r});
  }
  std::vector<std::vector<Rotation>> groups = t_groups;
  groups.push_back(central_block(f));
  for (auto it = t_groups.rbegin(); it != t_groups.rend(); ++it) {
    std::vector<Rotation> mirrored = *it;
    for (auto& r : mirrored) r.angle = -r.angle;
    groups.push_back(std::move(mirrored));
  }
  return groups;
}

inline ComplexMatrix stage_product(const UnitaryFactorization& f) {
  ComplexMatrix t = ComplexMatrix::Identity(f.dim, f.dim);
  for (const auto& sc : f.stages) t = stage_operator(sc, f.dim).unitary * t;
  return t;
}

inline ComplexMatrix reconstruct(const UnitaryFactorization& f) {
  const ComplexMatrix t = stage_product(f);
  ComplexMatrix block = ComplexMatrix::Identity(f.dim, f.dim);
  for (const auto& r : central_block(f)) apply_rotation(r, block);
  return t.adjoint() * block * t;
}

/// Executable schedule; every Z block is one concurrent step, every Y
/// rotation its own step. Unpruned it has exactly N(N+1) - 1 steps.
inline Schedule factorization_to_schedule(const UnitaryFactorization& f, const AmplitudeRule& rule,
                                          bool prune_zero = false) {
  auto groups = factorization_groups(f);
  if (prune_zero) {
    for (auto& g : groups) std::erase_if(g, [](const Rotation& r) { return std::abs(r.angle) < 1e-12; });
    std::erase_if(groups, [](const std::vector<Rotation>& g) { return g.empty(); });
  }
  Schedule s;
  s.dim = f.dim;
  s.steps = steps_from_groups(groups, rule.amplitude(), false);
  s.meta.family = "yz";
  s.meta.source = "unitary";
  s.meta.amplitude_rule = rule.name();
  s.meta.lambda = rule.lambda();
  s.meta.amplitude = rule.amplitude();
  s.meta.concurrent = true;
  return s;
}

}  // namespace bangbang
