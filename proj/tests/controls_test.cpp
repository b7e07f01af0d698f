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

#include "bangbang/controls.hpp"
#include "oracles.hpp"

namespace bangbang {
namespace {

using oracle::I;

TEST(Generator, DisplayedMatrices) {
  ComplexMatrix z2 = ComplexMatrix::Zero(3, 3);
  z2(1, 1) = 1.0;
  EXPECT_EQ(generator(Z(2), 3), z2);

  ComplexMatrix y1 = ComplexMatrix::Zero(3, 3);
  y1(0, 1) = -I;
  y1(1, 0) = I;
  EXPECT_EQ(generator(Y(1), 3), y1);

  ComplexMatrix x1(2, 2);
  x1 << 0.0, 1.0, 1.0, 0.0;
  EXPECT_EQ(generator(X(1), 2), x1);
}

TEST(Generator, ExactlyHermitian) {
  for (int n = 2; n <= 5; ++n) {
    for (int k = 1; k < n; ++k) {
      for (auto ch : {X(k), Y(k), Z(k + 1)}) {
        const ComplexMatrix h = generator(ch, n);
        EXPECT_EQ(h, h.adjoint().eval());
      }
    }
  }
}

TEST(RotationUnitary, DisplayedMatrices) {
  const double a = 0.8;
  EXPECT_LE(oracle::max_abs_diff(rotation_unitary({Z(2), a}, 3), oracle::z(3, 2, a)), 1e-15);
  ComplexMatrix expected = ComplexMatrix::Identity(3, 3);
  expected(0, 0) = std::cos(a);
  expected(0, 1) = -std::sin(a);
  expected(1, 0) = std::sin(a);
  expected(1, 1) = std::cos(a);
  EXPECT_LE(oracle::max_abs_diff(rotation_unitary({Y(1), a}, 3), expected), 1e-15);
  EXPECT_LE(oracle::max_abs_diff(rotation_unitary({X(2), a}, 4), oracle::x(4, 2, a)), 1e-15);
}

TEST(RotationUnitary, ZeroAngleIsIdentity) {
  for (auto ch : {Z(1), Z(3), Y(1), Y(2), X(1), X(2)})
    EXPECT_EQ(rotation_unitary({ch, 0.0}, 3), ComplexMatrix::Identity(3, 3));
}

TEST(RotationUnitary, InverseAngle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-kTwoPi, kTwoPi);
  for (int i = 0; i < 50; ++i) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const int k = 1 + static_cast<int>(rng() % (n - 1));
    const double g = angle(rng);
    for (auto ch : {X(k), Y(k), Z(k + 1)}) {
      const ComplexMatrix prod = rotation_unitary({ch, g}, n) * rotation_unitary({ch, -g}, n);
      EXPECT_LE(oracle::max_abs_diff(prod, ComplexMatrix::Identity(n, n)), 1e-14);
    }
  }
}

TEST(RotationUnitary, MatchesNumericalExponential) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-kTwoPi, kTwoPi);
  for (int i = 0; i < 100; ++i) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const auto kind = static_cast<ChannelKind>(rng() % 3);
    const int hi = kind == ChannelKind::Z ? n : n - 1;
    const ControlChannel ch{kind, 1 + static_cast<int>(rng() % hi)};
    const double g = angle(rng);
    const ComplexMatrix numeric = oracle::expm_hermitian(generator(ch, n), g);
    EXPECT_LE(operator_distance(rotation_unitary({ch, g}, n), numeric), 1e-12) << to_string(ch) << " n=" << n;
  }
}

TEST(RotationUnitary, ZRotationsCommuteExactly) {
  for (int n = 2; n <= 8; ++n) {
    for (int a = 1; a <= n; ++a) {
      for (int b = a + 1; b <= n; ++b) {
        const ComplexMatrix ua = rotation_unitary({Z(a), 0.3 * a + 0.1}, n);
        const ComplexMatrix ub = rotation_unitary({Z(b), -0.7 * b}, n);
        EXPECT_EQ((ua * ub).eval(), (ub * ua).eval());
      }
    }
  }
}

TEST(Channels, BadIndex) {
  for (auto ch : {Y(3), X(3), Y(0), Z(0), Z(4)}) {
    try {
      generator(ch, 3);
      FAIL() << to_string(ch);
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BadIndex);
    }
    EXPECT_THROW(rotation_unitary({ch, 1.0}, 3), Error);
  }
}

TEST(Channels, NamesRoundTrip) {
  for (auto ch : {Z(1), Z(12), Y(3), X(7)}) {
    const auto back = parse_channel(to_string(ch));
    EXPECT_EQ(back.kind, ch.kind);
    EXPECT_EQ(back.index, ch.index);
  }
  EXPECT_EQ(to_string(Y(2)), "Y2");
  for (const char* bad : {"", "Q1", "Y", "Yx", "Z1.5", "Z-1"}) EXPECT_THROW(parse_channel(bad), Error) << bad;
}

TEST(NormalizeAngle, KeepsSign) {
  EXPECT_NEAR(normalize_angle(-kPi / 2), -kPi / 2, 0.0);
  EXPECT_NEAR(normalize_angle(5 * kPi), kPi, 1e-14);
  EXPECT_NEAR(normalize_angle(-5 * kPi), -kPi, 1e-14);
  EXPECT_LT(std::abs(normalize_angle(kTwoPi + 1e-3)), kTwoPi);
}

}  // namespace
}  // namespace bangbang
