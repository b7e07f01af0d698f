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

// Factors a seeded random unitary into Z blocks and Y rotations, then
// checks the propagated schedule against the input.

#include <cstdio>
#include <cstdlib>

#include "bangbang/bangbang.hpp"

int main(int argc, char** argv) {
  using namespace bangbang;
  const int n = argc > 1 ? std::atoi(argv[1]) : 4;
  const auto seed = static_cast<std::uint64_t>(argc > 2 ? std::atoll(argv[2]) : 0);
  if (n < 2) {
    std::fprintf(stderr, "usage: unitary_demo [N >= 2] [seed]\n");
    return 2;
  }

  const ComplexMatrix u = random_unitary(n, seed);
  const UnitaryFactorization f = factorize_unitary(u);

  std::printf("eigenphases:");
  for (double p : f.eigenphases) std::printf(" %.6f", p);
  std::printf("\n");
  for (const auto& sc : f.stages) {
    std::printf("stage %d  theta:", sc.size);
    for (double t : sc.theta) std::printf(" %.6f", t);
    std::printf("  phi:");
    for (double p : sc.phi) std::printf(" %.6f", p);
    std::printf("\n");
  }

  const Schedule s = factorization_to_schedule(f, AmplitudeRule::uniform(1.0));
  std::printf("steps %zu (N(N+1)-1 = %d, Euler count %d)\n", s.steps.size(), unitary_step_count(n),
              euler_step_count(n));
  std::printf("residual %.3e\n", operator_distance(propagate_operator(s), u));
  return 0;
}
