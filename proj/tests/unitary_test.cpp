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

#include <gtest/gtest.h>

#include <random>

#include "bangbang/unitary.hpp"
#include "bangbang/verify.hpp"
#include "oracles.hpp"

namespace bangbang {
namespace {

using oracle::I;

ComplexMatrix rows_as_matrix(const std::vector<ComplexVector>& rows) {
  const auto k = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(k, k);
  for (Eigen::Index j = 0; j < k; ++j) m.col(j) = rows[j];
  return m;
}

TEST(StageRows, TwoLevelExamples) {
  const double r = 1.0 / std::sqrt(2.0);
  auto rows = stage_rows({2, {kPi / 4}, {0.0}});
  EXPECT_LE(oracle::max_abs_diff(rows[0], oracle::vec({r, r})), 1e-15);
  EXPECT_LE(oracle::max_abs_diff(rows[1], oracle::vec({r, -r})), 1e-15);
  rows = stage_rows({2, {0.0}, {0.0}});
  EXPECT_LE(oracle::max_abs_diff(rows[0], oracle::vec({1.0, 0.0})), 1e-15);
  EXPECT_LE(oracle::max_abs_diff(rows[1], oracle::vec({0.0, -1.0})), 1e-15);
}

TEST(StageRows, OrthonormalForRandomAngles) {
  std::mt19937_64 rng(5);
  for (int k = 2; k <= 8; ++k) {
    const auto sc = verify::random_stage(k, rng);
    EXPECT_LE(oracle::gram_error(rows_as_matrix(stage_rows(sc))), 1e-12) << "k=" << k;
  }
}

TEST(StageRows, FirstRowIsHypersphericalVector) {
  std::mt19937_64 rng(6);
  const auto sc = verify::random_stage(5, rng);
  EXPECT_LE(oracle::max_abs_diff(stage_rows(sc)[0], oracle::hyperspherical(sc.theta, sc.phi)), 1e-15);
}

TEST(StageOperator, TwoLevelExample) {
  const StageCoords sc{2, {kPi / 4}, {0.0}};
  const auto op = stage_operator(sc, 2);
  const auto rows = stage_rows(sc);
  EXPECT_LE(oracle::max_abs_diff(op.unitary * rows[0], basis_state(2, 0)), 1e-15);
  EXPECT_NEAR(std::abs((op.unitary * rows[1])(1)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs((op.unitary * rows[1])(0)), 0.0, 1e-15);
}

TEST(StageOperator, ZeroAnglesLeaveRowsAsSignedBasisStates) {
  for (int k = 2; k <= 5; ++k) {
    const StageCoords sc{k, std::vector<double>(k - 1, 0.0), std::vector<double>(k - 1, 0.0)};
    const auto op = stage_operator(sc, k);
    EXPECT_LE(oracle::max_abs_diff(op.unitary, ComplexMatrix::Identity(k, k)), 0.0);
    const auto rows = stage_rows(sc);
    for (int j = 0; j < k; ++j) {
      const ComplexVector e = basis_state(k, j);
      EXPECT_TRUE(oracle::max_abs_diff(rows[j], e) == 0.0 || oracle::max_abs_diff(rows[j], -e) == 0.0);
    }
  }
}

TEST(StageOperator, IdentityOnLeadingLevels) {
  std::mt19937_64 rng(7);
  const auto sc = verify::random_stage(3, rng);
  const auto op = stage_operator(sc, 5);
  for (int m = 0; m < 2; ++m) EXPECT_LE(oracle::max_abs_diff(op.unitary * basis_state(5, m), basis_state(5, m)), 1e-12);
  EXPECT_EQ(op.phase_block.size(), 2u);
  EXPECT_EQ(to_string(op.phase_block[0].channel), "Z4");
  EXPECT_EQ(to_string(op.ladder.front().channel), "Y4");
  EXPECT_EQ(to_string(op.ladder.back().channel), "Y3");
}

TEST(StageOperator, RowIdentities) {
  const auto r = verify::stage_identities(8, 100);
  EXPECT_TRUE(r.passed()) << verify::format_result(r);
  EXPECT_THROW(stage_operator({4, {0, 0, 0}, {0, 0, 0}}, 3), Error);
}

TEST(Factorize, Identity) {
  for (int n = 2; n <= 5; ++n) {
    const auto f = factorize_unitary(ComplexMatrix::Identity(n, n));
    for (double p : f.eigenphases) EXPECT_NEAR(p, 0.0, 1e-14);
    ASSERT_EQ(static_cast<int>(f.stages.size()), n - 1);
    for (const auto& sc : f.stages) {
      for (double t : sc.theta) EXPECT_NEAR(t, 0.0, 1e-14);
      for (double p : sc.phi) EXPECT_NEAR(p, 0.0, 1e-14);
    }
    EXPECT_LE(operator_distance(reconstruct(f), ComplexMatrix::Identity(n, n)), 1e-12);
  }
}

TEST(Factorize, DiagonalQuarterTurn) {
  ComplexMatrix u = ComplexMatrix::Identity(2, 2);
  u(1, 1) = I;
  const auto f = factorize_unitary(u);
  EXPECT_NEAR(f.eigenphases[0], 0.0, 1e-15);
  EXPECT_NEAR(f.eigenphases[1], kPi / 2, 1e-15);
  ASSERT_EQ(f.stages.size(), 1u);
  EXPECT_NEAR(f.stages[0].theta[0], 0.0, 1e-15);
  EXPECT_NEAR(f.stages[0].phi[0], 0.0, 1e-15);
  const Schedule s = factorization_to_schedule(f, AmplitudeRule::uniform(1.0), true);
  ASSERT_EQ(s.steps.size(), 1u);
  for (const auto& p : s.steps[0].pulses) EXPECT_EQ(p.channel.kind, ChannelKind::Z);
  EXPECT_LE(operator_distance(propagate_operator(s), u), 1e-12);
}

TEST(Factorize, RandomFiveLevel) {
  const ComplexMatrix u = random_unitary(5, 13);
  const auto f = factorize_unitary(u);
  EXPECT_LE(operator_distance(reconstruct(f), u), 1e-8);
  for (const auto& sc : f.stages) {
    for (double t : sc.theta) {
      EXPECT_GE(t, 0.0);
      EXPECT_LE(t, kPi / 2);
    }
    EXPECT_LE(oracle::gram_error(rows_as_matrix(stage_rows(sc))), 1e-12);
  }
}

TEST(Reconstruct, Examples) {
  EXPECT_LE(operator_distance(reconstruct(factorize_unitary(ComplexMatrix::Identity(3, 3))),
                              ComplexMatrix::Identity(3, 3)),
            1e-12);
  ComplexMatrix flip = ComplexMatrix::Identity(2, 2);
  flip(1, 1) = -1.0;
  EXPECT_LE(operator_distance(reconstruct(factorize_unitary(flip)), flip), 1e-12);
  const ComplexMatrix u = random_unitary(6, 21);
  EXPECT_LE(operator_distance(reconstruct(factorize_unitary(u)), u), 1e-8);
}

TEST(Reconstruct, StageProductDiagonalizes) {
  const ComplexMatrix u = random_unitary(5, 31);
  const auto f = factorize_unitary(u);
  const ComplexMatrix t = stage_product(f);
  const ComplexMatrix d = t * u * t.adjoint();
  for (int r = 0; r < 5; ++r) {
    for (int c = 0; c < 5; ++c) {
      const Complex expected = r == c ? std::polar(1.0, f.eigenphases[r]) : Complex(0.0);
      EXPECT_NEAR(std::abs(d(r, c) - expected), 0.0, 1e-9);
    }
  }
}

TEST(FactorizationSchedule, StepCounts) {
  const auto s2 = factorization_to_schedule(factorize_unitary(random_unitary(2, 1)), AmplitudeRule::uniform(1.0));
  EXPECT_EQ(s2.steps.size(), 5u);
  const ComplexMatrix u4 = random_unitary(4, 2);
  const auto s4 = factorization_to_schedule(factorize_unitary(u4), AmplitudeRule::time_energy_optimal(2.0));
  EXPECT_EQ(s4.steps.size(), 19u);
  EXPECT_LE(operator_distance(propagate_operator(s4), u4), 1e-8);
  EXPECT_EQ(s4.meta.source, "unitary");
  const auto id = factorization_to_schedule(factorize_unitary(ComplexMatrix::Identity(4, 4)),
                                            AmplitudeRule::uniform(1.0), true);
  EXPECT_TRUE(id.steps.empty());
  EXPECT_EQ(propagate_operator(id), ComplexMatrix::Identity(4, 4));
}

TEST(FactorizationSchedule, UsesZ1OnlyInCentralBlock) {
  const auto f = factorize_unitary(random_unitary(4, 3));
  const auto groups = factorization_groups(f);
  ASSERT_EQ(static_cast<int>(groups.size()), unitary_step_count(4));
  const std::size_t centre = groups.size() / 2;
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (const auto& r : groups[g])
      if (r.channel.kind == ChannelKind::Z && r.channel.index == 1) EXPECT_EQ(g, centre);
  EXPECT_EQ(groups[centre].size(), 4u);
}

TEST(FactorizationSchedule, EulerCountIsLarger) {
  EXPECT_EQ(unitary_step_count(2), 5);
  EXPECT_EQ(unitary_step_count(4), 19);
  for (int n = 2; n <= 50; ++n) EXPECT_GT(euler_step_count(n), unitary_step_count(n));
}

TEST(Factorize, BatteryIncludingDegenerateSpectra) {
  const auto results = verify::unitary_reconstruction(4, 5);
  for (const auto& r : results) EXPECT_TRUE(r.passed()) << verify::format_result(r);
  std::mt19937_64 rng(9);
  const ComplexMatrix tensor = verify::kron_identity(random_unitary(3, 4), 2);
  EXPECT_LE(operator_distance(reconstruct(factorize_unitary(tensor)), tensor), 1e-8);
  const ComplexMatrix degenerate = verify::random_degenerate_unitary(7, rng);
  EXPECT_LE(operator_distance(reconstruct(factorize_unitary(degenerate)), degenerate), 1e-8);
}

TEST(Factorize, Errors) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  EXPECT_EQ(code([] { factorize_unitary(2.0 * ComplexMatrix::Identity(3, 3)); }), ErrorCode::NotUnitary);
  EXPECT_EQ(code([] { factorize_unitary(ComplexMatrix::Identity(1, 1)); }), ErrorCode::DimensionTooSmall);
  EXPECT_EQ(code([] { factorize_unitary(ComplexMatrix::Identity(2, 3)); }), ErrorCode::NotUnitary);
}

}  // namespace
}  // namespace bangbang
