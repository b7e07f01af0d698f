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
#include <vector>

#include "bangbang/controls.hpp"
#include "bangbang/error.hpp"
#include "bangbang/numerics.hpp"
#include "bangbang/schedule.hpp"

namespace bangbang {

/// States visited by a schedule: states[0] is the initial state and
/// states[k + 1] the state after step k; times are cumulative.
struct Trajectory {
  std::vector<ComplexVector> states;
  std::vector<double> times;

  const ComplexVector& final_state() const { return states.back(); }
};

/// exp(-i t H) for H = sum over pulses of amplitude * generator, in closed
/// form. Single pulses of any kind and concurrent Z pulses are supported.
inline ComplexMatrix step_unitary(const Step& step, int dim) {
  check_step(step, dim);
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for (const auto& p : step.pulses) apply_rotation(Rotation{p.channel, p.area()}, u);
  return u;
}

/// Same propagator obtained independently by diagonalizing the Hermitian
/// step Hamiltonian. Used for validation only.
inline ComplexMatrix step_unitary_numerical(const Step& step, int dim) {
  check_step(step, dim);
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (const auto& p : step.pulses) h += p.amplitude * generator(p.channel, dim);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  const double t = step.duration();
  ComplexVector phases(dim);
  for (int j = 0; j < dim; ++j) phases(j) = std::polar(1.0, -t * es.eigenvalues()(j));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

inline Trajectory propagate(const Schedule& s, const ComplexVector& psi0) {
  if (psi0.size() != s.dim) {
    throw Error(ErrorCode::DimMismatch, "state has dimension " + std::to_string(psi0.size()) + ", schedule " +
                                            std::to_string(s.dim));
  }
  check_schedule(s);
  Trajectory traj;
  traj.states.reserve(s.steps.size() + 1);
  traj.times.reserve(s.steps.size() + 1);
  traj.states.push_back(psi0);
  traj.times.push_back(0.0);
  ComplexVector psi = psi0;
  double t = 0.0;
  for (const auto& step : s.steps) {
    for (const auto& p : step.pulses) apply_rotation(Rotation{p.channel, p.area()}, psi);
    t += step.duration();
    traj.states.push_back(psi);
    traj.times.push_back(t);
  }
  return traj;
}

/// Product of the step unitaries, later steps on the left.
inline ComplexMatrix propagate_operator(const Schedule& s) {
  check_schedule(s);
  ComplexMatrix u = ComplexMatrix::Identity(s.dim, s.dim);
  for (const auto& step : s.steps) {
    for (const auto& p : step.pulses) apply_rotation(Rotation{p.channel, p.area()}, u);
  }
  return u;
}

/// |<a|b>|^2, insensitive to global phase.
inline double fidelity(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimMismatch, "fidelity of vectors with different dimensions");
  return std::min(1.0, std::norm(a.dot(b)));
}

}  // namespace bangbang
