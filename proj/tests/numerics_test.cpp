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

#include "bangbang/numerics.hpp"
#include "oracles.hpp"

namespace bangbang {
namespace {

ComplexMatrix spectral_sum(const UnitaryEigen& e) {
  const auto n = e.vectors.rows();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex w = std::polar(1.0, e.phases[j]);
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) m(r, c) += w * e.vectors(r, j) * std::conj(e.vectors(c, j));
  }
  return m;
}

void expect_canonical(const UnitaryEigen& e) {
  for (std::size_t j = 0; j < e.phases.size(); ++j) {
    EXPECT_GT(e.phases[j], -kPi);
    EXPECT_LE(e.phases[j], kPi);
    if (j > 0) {
      EXPECT_LE(e.phases[j - 1], e.phases[j]);
    }
    for (Eigen::Index r = 0; r < e.vectors.rows(); ++r) {
      const Complex z = e.vectors(r, static_cast<Eigen::Index>(j));
      if (std::abs(z) > kNegligible) {
        EXPECT_NEAR(z.imag(), 0.0, 1e-12);
        EXPECT_GT(z.real(), 0.0);
        break;
      }
    }
  }
}

TEST(EigUnitary, Identity) {
  const auto e = eig_unitary(ComplexMatrix::Identity(3, 3));
  for (double p : e.phases) EXPECT_NEAR(p, 0.0, 1e-14);
  EXPECT_LE(oracle::gram_error(e.vectors), 1e-12);
}

TEST(EigUnitary, DiagonalWithMinusOne) {
  ComplexMatrix d = ComplexMatrix::Identity(2, 2);
  d(1, 1) = -1.0;
  const auto e = eig_unitary(d);
  ASSERT_EQ(e.phases.size(), 2u);
  EXPECT_NEAR(e.phases[0], 0.0, 1e-14);
  EXPECT_NEAR(e.phases[1], kPi, 1e-14);
  EXPECT_LE(oracle::max_abs_diff(e.vectors, ComplexMatrix::Identity(2, 2)), 1e-12);
}

TEST(EigUnitary, RandomReconstructsEntrywise) {
  const ComplexMatrix u = random_unitary(4, 7);
  const auto e = eig_unitary(u);
  EXPECT_LE(oracle::max_abs_diff(spectral_sum(e), u), 1e-10);
  EXPECT_LE(oracle::gram_error(e.vectors), 1e-10);
  expect_canonical(e);
}

TEST(EigUnitary, DegenerateSpectrumKeepsOrthonormalBasis) {
  const ComplexMatrix v = random_unitary(6, 99);
  ComplexVector d(6);
  d << 1.0, 1.0, oracle::I, oracle::I, oracle::I, -1.0;
  const ComplexMatrix u = v * d.asDiagonal() * v.adjoint();
  const auto e = eig_unitary(u);
  EXPECT_LE(oracle::gram_error(e.vectors), 1e-10);
  EXPECT_LE(operator_distance(spectral_sum(e), u), 1e-10);
  expect_canonical(e);
}

TEST(EigUnitary, RejectsNonUnitary) {
  ComplexMatrix m = ComplexMatrix::Identity(3, 3);
  m(0, 1) = 0.1;
  try {
    eig_unitary(m);
    FAIL() << "expected NotUnitary";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitary);
  }
}

TEST(OperatorDistance, Examples) {
  EXPECT_EQ(operator_distance(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)), 0.0);
  ComplexMatrix flip = ComplexMatrix::Identity(2, 2);
  flip(1, 1) = -1.0;
  EXPECT_NEAR(operator_distance(ComplexMatrix::Identity(2, 2), flip), 2.0, 1e-15);
}

TEST(OperatorDistance, SmallPerturbation) {
  const ComplexMatrix u = random_unitary(4, 3);
  const ComplexMatrix w = u + 1e-6 * ComplexMatrix::Identity(4, 4);
  const Eigen::JacobiSVD<ComplexMatrix> svd(u - w);
  const double expected = svd.singularValues()(0);
  EXPECT_NEAR(expected, 1e-6, 1e-12);
  EXPECT_NEAR(operator_distance(u, w), 1e-6, 1e-12);
}

TEST(OperatorDistance, ShapeMismatch) {
  EXPECT_THROW(operator_distance(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), Error);
}

TEST(RandomUnitary, ScalarHasUnitModulus) {
  for (std::uint64_t seed : {0u, 1u, 42u}) EXPECT_NEAR(std::abs(random_unitary(1, seed)(0, 0)), 1.0, 1e-15);
}

TEST(RandomUnitary, Deterministic) {
  EXPECT_EQ(random_unitary(4, 7), random_unitary(4, 7));
  EXPECT_NE(random_unitary(4, 7), random_unitary(4, 8));
}

TEST(RandomUnitary, GramIsIdentity) { EXPECT_LE(oracle::gram_error(random_unitary(6, 11)), 1e-12); }

TEST(WrapPhase, HalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_phase(-kPi), kPi);
  EXPECT_NEAR(wrap_phase(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(wrap_phase(-5 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_EQ(wrap_phase(0.25), 0.25);
}

}  // namespace
}  // namespace bangbang
