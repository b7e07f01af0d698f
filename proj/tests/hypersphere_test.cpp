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

#include "bangbang/hypersphere.hpp"
#include "oracles.hpp"

namespace bangbang {
namespace {

using oracle::I;

void expect_in_range(const HypersphericalCoords& h) {
  for (double t : h.theta) {
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, kPi / 2);
  }
  for (double p : h.phi) {
    EXPECT_GT(p, -kPi);
    EXPECT_LE(p, kPi);
  }
}

TEST(ToHyperspherical, BasisState) {
  const auto h = to_hyperspherical(oracle::vec({1.0, 0.0, 0.0}));
  EXPECT_EQ(h.theta, (std::vector<double>{0.0, 0.0}));
  EXPECT_EQ(h.phi, (std::vector<double>{0.0, 0.0}));
}

TEST(ToHyperspherical, WorkedThreeLevelExample) {
  const ComplexVector c = oracle::vec({0.5, 0.5 * I, 0.5 + 0.5 * I});
  const auto h = to_hyperspherical(c);
  ASSERT_EQ(h.dim(), 3);
  EXPECT_NEAR(h.theta[0], kPi / 3, 1e-12);
  EXPECT_NEAR(h.theta[1], 0.955317, 1e-6);
  EXPECT_NEAR(h.phi[0], kPi / 2, 1e-12);
  EXPECT_NEAR(h.phi[1], kPi / 4, 1e-12);
  const ComplexVector back = oracle::hyperspherical(h.theta, h.phi);
  EXPECT_LE(oracle::max_abs_diff(back, c), 1e-10);
}

TEST(ToHyperspherical, UniformTenLevelState) {
  const ComplexVector c = ComplexVector::Ones(10) / std::sqrt(10.0);
  const auto h = to_hyperspherical(c);
  const std::vector<double> expected{1.2490, 1.2310, 1.2094, 1.1832, 1.1503, 1.1071, 1.0472, 0.9553, 0.7854};
  for (int i = 0; i < 9; ++i) {
    EXPECT_NEAR(h.theta[i], expected[i], 1e-4) << "theta_" << i + 1;
    EXPECT_EQ(h.phi[i], 0.0);
  }
}

TEST(ToHyperspherical, RemovesGlobalPhaseAndNorm) {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 9; ++n) {
    const ComplexVector c = random_unit_vector(n, rng);
    const ComplexVector scaled = 3.0 * std::polar(1.0, 0.7) * c;
    const auto h = to_hyperspherical(scaled);
    const ComplexVector expected = c * std::polar(1.0, -std::arg(c(0)));
    EXPECT_LE(oracle::max_abs_diff(oracle::hyperspherical(h.theta, h.phi), expected), 1e-12);
  }
}

TEST(ToHyperspherical, ZeroLeadingComponent) {
  const auto h = to_hyperspherical(oracle::vec({0.0, 0.0, I}));
  EXPECT_NEAR(h.theta[0], kPi / 2, 1e-15);
  EXPECT_NEAR(h.theta[1], kPi / 2, 1e-15);
  EXPECT_EQ(h.phi[0], 0.0);
  EXPECT_NEAR(h.phi[1], kPi / 2, 1e-15);
}

TEST(ToHyperspherical, VanishingTailGivesZeroAngles) {
  const auto h = to_hyperspherical(oracle::vec({0.6, 0.8 * I, 0.0, 0.0, 0.0}));
  EXPECT_NEAR(h.theta[0], std::atan2(0.8, 0.6), 1e-15);
  EXPECT_NEAR(h.phi[0], kPi / 2, 1e-15);
  for (int k = 1; k < 4; ++k) {
    EXPECT_EQ(h.theta[k], 0.0);
    EXPECT_EQ(h.phi[k], 0.0);
  }
}

TEST(ToHyperspherical, Errors) {
  EXPECT_THROW(to_hyperspherical(oracle::vec({1.0})), Error);
  EXPECT_THROW(to_hyperspherical(ComplexVector::Zero(3)), Error);
}

TEST(FromHyperspherical, Examples) {
  EXPECT_LE(oracle::max_abs_diff(from_hyperspherical({{kPi / 2, kPi / 2}, {0.0, 0.0}}), oracle::vec({0.0, 0.0, 1.0})),
            1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_LE(oracle::max_abs_diff(from_hyperspherical({{kPi / 4}, {kPi / 2}}), oracle::vec({r, r * I})), 1e-15);
  const auto h = to_hyperspherical(oracle::vec({0.5, 0.5 * I, 0.5 + 0.5 * I}));
  EXPECT_LE(oracle::max_abs_diff(from_hyperspherical(h), oracle::vec({0.5, 0.5 * I, 0.5 + 0.5 * I})), 1e-12);
}

TEST(Hypersphere, RoundTripRandom) {
  std::mt19937_64 rng(17);
  for (int n = 2; n <= 16; ++n) {
    for (int i = 0; i < 50; ++i) {
      ComplexVector c = random_unit_vector(n, rng);
      if (i % 5 == 0) c(static_cast<Eigen::Index>(rng() % n)) = 0.0;
      c.normalize();
      const ComplexVector expected = c * std::polar(1.0, -std::arg(c(0)));
      const auto h = to_hyperspherical(c);
      expect_in_range(h);
      const ComplexVector back = from_hyperspherical(h);
      EXPECT_NEAR(back.norm(), 1.0, 1e-12);
      EXPECT_GE(back(0).real(), 0.0);
      EXPECT_EQ(back(0).imag(), 0.0);
      ASSERT_LE(oracle::max_abs_diff(back, expected), 1e-10) << "n=" << n << " i=" << i;
    }
  }
}

TEST(Hypersphere, ReverseRoundTripOffDegenerateSet) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> t(0.01, kPi / 2 - 0.01);
  std::uniform_real_distribution<double> p(-kPi + 0.01, kPi);
  for (int n = 2; n <= 12; ++n) {
    for (int i = 0; i < 20; ++i) {
      HypersphericalCoords h;
      for (int k = 0; k < n - 1; ++k) {
        h.theta.push_back(t(rng));
        h.phi.push_back(p(rng));
      }
      const auto back = to_hyperspherical(from_hyperspherical(h));
      for (int k = 0; k < n - 1; ++k) {
        EXPECT_NEAR(back.theta[k], h.theta[k], 1e-10);
        EXPECT_NEAR(back.phi[k], h.phi[k], 1e-10);
      }
    }
  }
}

TEST(Hypersphere, DegenerateInputsStayInRange) {
  const std::vector<ComplexVector> cases{
      oracle::vec({0.0, 1.0}),         oracle::vec({-1.0, 0.0}),          oracle::vec({0.0, 0.0, 0.0, -1.0}),
      oracle::vec({0.0, -I, 0.0, 0.0}), oracle::vec({-0.6, 0.0, -0.8, 0.0}), oracle::vec({1e-13, 0.0, 1.0}),
  };
  for (const auto& c : cases) {
    const auto h = to_hyperspherical(c);
    expect_in_range(h);
    const ComplexVector expected = c * std::polar(1.0, -std::arg(c(0)));
    EXPECT_LE(oracle::max_abs_diff(from_hyperspherical(h), expected), 1e-10);
  }
}

}  // namespace
}  // namespace bangbang
