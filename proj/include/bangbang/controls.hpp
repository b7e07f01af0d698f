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

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "bangbang/error.hpp"
#include "bangbang/numerics.hpp"

namespace bangbang {

enum class ChannelKind { Z, X, Y };

/// A control Hamiltonian on an N-level system. Indices are 1-based:
/// Z_n = |n><n|, X_n and Y_n couple |n> and |n+1>.
struct ControlChannel {
  ChannelKind kind = ChannelKind::Z;
  int index = 1;

  friend bool operator==(const ControlChannel&, const ControlChannel&) = default;
};

inline ControlChannel Z(int n) { return {ChannelKind::Z, n}; }
inline ControlChannel X(int n) { return {ChannelKind::X, n}; }
inline ControlChannel Y(int n) { return {ChannelKind::Y, n}; }

inline bool is_phase_channel(const ControlChannel& ch) { return ch.kind == ChannelKind::Z; }

inline std::string to_string(const ControlChannel& ch) {
  const char prefix = ch.kind == ChannelKind::Z ? 'Z' : (ch.kind == ChannelKind::X ? 'X' : 'Y');
  return prefix + std::to_string(ch.index);
}

/// Parses "Z3", "X1", "Y2". Throws ParseError on anything else.
inline ControlChannel parse_channel(std::string_view text) {
  if (text.size() < 2) throw Error(ErrorCode::ParseError, "bad channel name '" + std::string(text) + "'");
  ControlChannel ch;
  switch (text.front()) {
    case 'Z': ch.kind = ChannelKind::Z; break;
    case 'X': ch.kind = ChannelKind::X; break;
    case 'Y': ch.kind = ChannelKind::Y; break;
    default: throw Error(ErrorCode::ParseError, "bad channel name '" + std::string(text) + "'");
  }
  const auto digits = text.substr(1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), ch.index);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || ch.index < 1) {
    throw Error(ErrorCode::ParseError, "bad channel name '" + std::string(text) + "'");
  }
  return ch;
}

/// Throws BadIndex unless the channel exists at dimension dim.
inline void check_channel(const ControlChannel& ch, int dim) {
  const int hi = ch.kind == ChannelKind::Z ? dim : dim - 1;
  if (ch.index < 1 || ch.index > hi) {
    throw Error(ErrorCode::BadIndex, to_string(ch) + " is not a channel of a " + std::to_string(dim) + "-level system");
  }
}

/// A rotation exp(-i angle H) generated by a single channel.
struct Rotation {
  ControlChannel channel;
  double angle = 0.0;
};

/// Reduces an angle into (-2pi, 2pi), keeping its sign.
inline double normalize_angle(double angle) { return std::fmod(angle, kTwoPi); }

inline ComplexMatrix generator(const ControlChannel& ch, int dim) {
  check_channel(ch, dim);
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  const int n = ch.index - 1;
  switch (ch.kind) {
    case ChannelKind::Z:
      h(n, n) = 1.0;
      break;
    case ChannelKind::X:
      h(n + 1, n) = 1.0;
      h(n, n + 1) = 1.0;
      break;
    case ChannelKind::Y:
      h(n + 1, n) = Complex(0.0, 1.0);
      h(n, n + 1) = Complex(0.0, -1.0);
      break;
  }
  return h;
}

/// Applies exp(-i angle generator(ch)) to the rows of m in place.
template <class Derived>
void apply_rotation(const Rotation& r, Eigen::MatrixBase<Derived>& m) {
  const int n = r.channel.index - 1;
  const double g = r.angle;
  switch (r.channel.kind) {
    case ChannelKind::Z:
      m.row(n) *= std::polar(1.0, -g);
      break;
    case ChannelKind::Y: {
      const double c = std::cos(g);
      const double s = std::sin(g);
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const Complex a = m(n, j);
        const Complex b = m(n + 1, j);
        m(n, j) = c * a - s * b;
        m(n + 1, j) = s * a + c * b;
      }
      break;
    }
    case ChannelKind::X: {
      const double c = std::cos(g);
      const Complex mis(0.0, -std::sin(g));
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const Complex a = m(n, j);
        const Complex b = m(n + 1, j);
        m(n, j) = c * a + mis * b;
        m(n + 1, j) = mis * a + c * b;
      }
      break;
    }
  }
}

/// Closed-form exp(-i angle generator(ch)).
inline ComplexMatrix rotation_unitary(const Rotation& r, int dim) {
  check_channel(r.channel, dim);
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  apply_rotation(r, u);
  return u;
}

}  // namespace bangbang
