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

// Prepares the N-level W state from |1> with Y pulses and prints the
// amplitude magnitudes after every pulse.

#include <cstdio>
#include <cstdlib>

#include "bangbang/bangbang.hpp"

int main(int argc, char** argv) {
  using namespace bangbang;
  const int n = argc > 1 ? std::atoi(argv[1]) : 10;
  if (n < 2) {
    std::fprintf(stderr, "usage: w_state_demo [N >= 2]\n");
    return 2;
  }

  const RotationSequence seq = w_state_sequence(n);
  const Schedule s = to_schedule(sequential_groups(seq), AmplitudeRule::time_energy_optimal(1.0));
  const Trajectory traj = propagate(s, basis_state(n, 0));

  for (const auto& r : seq.rotations) std::printf("%s(%.4f) ", to_string(r.channel).c_str(), r.angle);
  std::printf("\n\n");
  for (int m = 0; m < n; ++m) {
    for (const auto& psi : traj.states) std::printf(" %.4f", std::abs(psi(m)));
    std::printf("\n");
  }

  const TimeEnergyReport cost = evaluate_cost(s, 1.0);
  std::printf("\nfidelity %.15f  t_f %.6f  E %.6f  J %.6f\n", fidelity(uniform_superposition(n), traj.final_state()),
              cost.t_f, cost.energy, cost.J);
  return 0;
}
