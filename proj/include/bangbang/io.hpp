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

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "bangbang/controls.hpp"
#include "bangbang/error.hpp"
#include "bangbang/numerics.hpp"
#include "bangbang/schedule.hpp"
#include "bangbang/simulator.hpp"
#include "json.hpp"

namespace bangbang::io {

namespace detail {

inline void write_complex(std::ostream& out, Complex z) {
  out << z.real() << ' ' << z.imag() << '\n';
}

inline Complex read_complex(std::istream& in, const std::string& what) {
  double re = 0.0;
  double im = 0.0;
  if (!(in >> re >> im)) throw Error(ErrorCode::ParseError, "truncated " + what + " file");
  return {re, im};
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  return out;
}

}  // namespace detail

/// Matrix text: "N M", then N*M lines "re im" in row-major order.
inline void write_matrix(std::ostream& out, const ComplexMatrix& m) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) detail::write_complex(out, m(i, j));
}

inline ComplexMatrix read_matrix(std::istream& in) {
  long rows = 0;
  long cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1) throw Error(ErrorCode::ParseError, "bad matrix header");
  ComplexMatrix m(rows, cols);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) m(i, j) = detail::read_complex(in, "matrix");
  return m;
}

/// State text: "N", then N lines "re im".
inline void write_state(std::ostream& out, const ComplexVector& v) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << v.size() << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i) detail::write_complex(out, v(i));
}

inline ComplexVector read_state(std::istream& in) {
  long n = 0;
  if (!(in >> n) || n < 1) throw Error(ErrorCode::ParseError, "bad state header");
  ComplexVector v(n);
  for (long i = 0; i < n; ++i) v(i) = detail::read_complex(in, "state");
  return v;
}

inline ComplexMatrix load_matrix(const std::string& path) {
  auto in = detail::open_in(path);
  return read_matrix(in);
}

inline ComplexVector load_state(const std::string& path) {
  auto in = detail::open_in(path);
  return read_state(in);
}

inline void save_matrix(const std::string& path, const ComplexMatrix& m) {
  auto out = detail::open_out(path);
  write_matrix(out, m);
}

inline void save_state(const std::string& path, const ComplexVector& v) {
  auto out = detail::open_out(path);
  write_state(out, v);
}

/// {dim, steps: [[{channel, amplitude, duration}, ...], ...], meta: {...}}
inline nlohmann::ordered_json schedule_to_json(const Schedule& s) {
  nlohmann::ordered_json j;
  j["dim"] = s.dim;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& step : s.steps) {
    auto pulses = nlohmann::ordered_json::array();
    for (const auto& p : step.pulses) {
      pulses.push_back({{"channel", to_string(p.channel)}, {"amplitude", p.amplitude}, {"duration", p.duration}});
    }
    steps.push_back(std::move(pulses));
  }
  j["steps"] = std::move(steps);
  nlohmann::ordered_json meta;
  meta["family"] = s.meta.family;
  meta["source"] = s.meta.source;
  meta["amplitude_rule"] = s.meta.amplitude_rule;
  if (s.meta.lambda) meta["lambda"] = *s.meta.lambda;
  meta["amplitude"] = s.meta.amplitude;
  meta["concurrent"] = s.meta.concurrent;
  meta["nonnegative_time"] = s.meta.nonnegative_time;
  j["meta"] = std::move(meta);
  return j;
}

template <class Json>
Schedule schedule_from_json(const Json& j) {
  try {
    Schedule s;
    s.dim = j.at("dim").template get<int>();
    for (const auto& jstep : j.at("steps")) {
      Step step;
      for (const auto& jp : jstep) {
        step.pulses.push_back({parse_channel(jp.at("channel").template get<std::string>()), jp.at("amplitude").template get<double>(),
                               jp.at("duration").template get<double>()});
      }
      s.steps.push_back(std::move(step));
    }
    if (j.contains("meta")) {
      const auto& m = j.at("meta");
      s.meta.family = m.value("family", s.meta.family);
      s.meta.source = m.value("source", s.meta.source);
      s.meta.amplitude_rule = m.value("amplitude_rule", s.meta.amplitude_rule);
      if (m.contains("lambda")) s.meta.lambda = m.at("lambda").template get<double>();
      s.meta.amplitude = m.value("amplitude", s.meta.amplitude);
      s.meta.concurrent = m.value("concurrent", s.meta.concurrent);
      s.meta.nonnegative_time = m.value("nonnegative_time", s.meta.nonnegative_time);
    }
    check_schedule(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("schedule JSON: ") + e.what());
  }
}

inline std::string dump_schedule(const Schedule& s) { return schedule_to_json(s).dump(2) + "\n"; }

inline void save_schedule(const std::string& path, const Schedule& s) {
  auto out = detail::open_out(path);
  out << dump_schedule(s);
}

inline Schedule load_schedule(const std::string& path) {
  auto in = detail::open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("schedule JSON: ") + e.what());
  }
  return schedule_from_json(j);
}

/// CSV with a header row, then one row per trajectory state: time followed
/// by interleaved re/im amplitudes, 15 significant digits.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  const Eigen::Index n = traj.states.empty() ? 0 : traj.states.front().size();
  out << "time";
  for (Eigen::Index i = 1; i <= n; ++i) out << ",re" << i << ",im" << i;
  out << '\n' << std::setprecision(15);
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    out << traj.times[k];
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << traj.states[k](i).real() << ',' << traj.states[k](i).imag();
    out << '\n';
  }
}

}  // namespace bangbang::io
