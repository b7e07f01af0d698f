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

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <vector>

#include "bangbang/error.hpp"

namespace bangbang {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Tolerance for the unitarity precondition of eigendecomposition and
/// factorization.
inline constexpr double kUnitaryTol = 1e-10;

/// Magnitude below which an amplitude is treated as zero.
inline constexpr double kNegligible = 1e-12;

/// Reduces an angle into (-pi, pi].
inline double wrap_phase(double angle) {
  double r = std::remainder(angle, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  if (r > kPi) r -= kTwoPi;
  return r;
}

/// Spectral norm (largest singular value) of A - B.
inline double operator_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "operator_distance on " + std::to_string(a.rows()) + "x" +
                                              std::to_string(a.cols()) + " and " +
                                              std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  if (a.size() == 0) return 0.0;
  const ComplexMatrix diff = a - b;
  Eigen::JacobiSVD<ComplexMatrix> svd(diff);
  return svd.singularValues()(0);
}

/// Spectral norm of U^dagger U - I.
inline double unitarity_error(const ComplexMatrix& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<double>::infinity();
  return operator_distance(u.adjoint() * u, ComplexMatrix::Identity(u.rows(), u.cols()));
}

/// Multiplies v by a unit phase so that its first component with magnitude
/// above kNegligible is real and positive.
inline void fix_global_phase(Eigen::Ref<ComplexVector> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > kNegligible) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = Complex(v(i).real(), 0.0);
      return;
    }
  }
}

struct UnitaryEigen {
  std::vector<double> phases;  // ascending, each in (-pi, pi]
  ComplexMatrix vectors;       // orthonormal eigenvectors as columns
};

/// Eigendecomposition U = sum_j exp(i phases_j) |v_j><v_j| of a unitary.
///
/// A complex Schur reduction is used: for a normal matrix the triangular
/// factor is diagonal up to rounding, so the Schur vectors are an orthonormal
/// eigenbasis even when eigenvalues are degenerate. Eigenvectors whose phases
/// lie within cluster_tol of their neighbour are re-orthonormalized together.
inline UnitaryEigen eig_unitary(const ComplexMatrix& u, double cluster_tol = 1e-8) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw Error(ErrorCode::NotUnitary, "matrix is not square");
  }
  const double err = unitarity_error(u);
  if (!(err <= kUnitaryTol)) {
    throw Error(ErrorCode::NotUnitary, "||U^dag U - I|| = " + std::to_string(err));
  }
  const Eigen::Index n = u.rows();
  Eigen::ComplexSchur<ComplexMatrix> schur(u);
  const ComplexMatrix& tri = schur.matrixT();
  const ComplexMatrix& q = schur.matrixU();

  std::vector<double> raw(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) raw[j] = wrap_phase(std::arg(tri(j, j)));

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return raw[a] < raw[b]; });

  UnitaryEigen out;
  out.phases.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.phases[j] = raw[order[j]];
    out.vectors.col(j) = q.col(order[j]);
  }

  // Modified Gram-Schmidt inside each run of nearly equal phases.
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && out.phases[end] - out.phases[end - 1] <= cluster_tol) ++end;
    for (Eigen::Index j = start; j < end; ++j) {
      for (Eigen::Index i = start; i < j; ++i) {
        const Complex overlap = out.vectors.col(i).dot(out.vectors.col(j));
        out.vectors.col(j) -= overlap * out.vectors.col(i);
      }
      out.vectors.col(j).normalize();
    }
    start = end;
  }

  for (Eigen::Index j = 0; j < n; ++j) fix_global_phase(out.vectors.col(j));
  return out;
}

/// Haar-distributed unitary from the QR factorization of a seeded complex
/// Gaussian matrix. Deterministic in (n, seed).
inline ComplexMatrix random_unitary(int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::DimensionTooSmall, "random_unitary needs n >= 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      a(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

/// Uniformly distributed complex unit vector.
template <class Rng>
ComplexVector random_unit_vector(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(n);
  for (int i = 0; i < n; ++i) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v(i) = Complex(re, im);
  }
  v.normalize();
  return v;
}

inline ComplexVector basis_state(int n, int index) {
  ComplexVector v = ComplexVector::Zero(n);
  v(index) = 1.0;
  return v;
}

}  // namespace bangbang
