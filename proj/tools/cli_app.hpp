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

#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bangbang/bangbang.hpp"

namespace bangbang::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitUsage = 2;

/// Parsed command line. Exactly one of lambda / amplitude drives the pulse
/// amplitudes of schedule-emitting commands; lambda = 1 when neither is set.
struct RunConfig {
  std::string command;
  std::string state_path;
  std::string initial_path;
  std::string target_path;
  std::string schedule_path;
  std::string unitary_path;
  std::string out_path;
  std::string trajectory_path;
  std::string family = "yz";
  std::optional<double> lambda;
  std::optional<double> amplitude;
  bool prune = false;
  bool concurrent = false;
  bool nonnegative_time = false;
  bool json = false;
  bool report = false;
  int levels = 0;
  std::uint64_t seed = 0;
  int count = 20;
  double tolerance_scale = 1.0;
};

namespace detail {

inline std::string angle_list(const std::vector<double>& values, int decimals = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(decimals);
  for (std::size_t i = 0; i < values.size(); ++i) os << (i ? "," : "") << values[i];
  return os.str();
}

inline std::string complex_str(Complex z) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}

inline AmplitudeRule amplitude_rule(const RunConfig& cfg) {
  if (cfg.amplitude) return AmplitudeRule::uniform(*cfg.amplitude);
  return AmplitudeRule::time_energy_optimal(cfg.lambda.value_or(1.0));
}

inline void print_report(std::ostream& out, const TimeEnergyReport& r, const std::string& indent = "") {
  auto line = [&](const char* key, double v) {
    out << indent << std::left << std::setw(15) << key << std::setprecision(12) << v << '\n';
  };
  auto opt_line = [&](const char* key, const std::optional<double>& v) {
    if (v) line(key, *v);
    else out << indent << std::left << std::setw(15) << key << "n/a\n";
  };
  line("lambda", r.lambda);
  line("t_f", r.t_f);
  line("energy", r.energy);
  line("J", r.J);
  line("product", r.product);
  opt_line("t_f_bound", r.t_f_bound);
  opt_line("E_bound", r.E_bound);
  opt_line("J_bound", r.J_bound);
  opt_line("product_bound", r.product_bound);
}

inline nlohmann::ordered_json report_json(const TimeEnergyReport& r) {
  nlohmann::ordered_json j;
  j["lambda"] = r.lambda;
  j["t_f"] = r.t_f;
  j["energy"] = r.energy;
  j["J"] = r.J;
  j["product"] = r.product;
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
    else j[key] = nullptr;
  };
  opt("t_f_bound", r.t_f_bound);
  opt("E_bound", r.E_bound);
  opt("J_bound", r.J_bound);
  opt("product_bound", r.product_bound);
  return j;
}

inline int check_fidelity(std::ostream& out, double fid) {
  out << "fidelity: " << std::setprecision(16) << fid << '\n';
  if (1.0 - fid > kTransferFidelityTol) {
    out << "FAILED: infidelity " << std::scientific << (1.0 - fid) << " exceeds " << kTransferFidelityTol << '\n';
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace detail

inline int cmd_coords(const RunConfig& cfg, std::ostream& out) {
  const ComplexVector c = io::load_state(cfg.state_path);
  const HypersphericalCoords h = to_hyperspherical(c);
  out << "dim: " << h.dim() << '\n';
  out << "theta: " << detail::angle_list(h.theta) << '\n';
  out << "phi: " << detail::angle_list(h.phi) << '\n';
  return kExitOk;
}

inline int cmd_synthesize(const RunConfig& cfg, std::ostream& out) {
  const ComplexVector c0 = io::load_state(cfg.initial_path);
  const ComplexVector cs = io::load_state(cfg.target_path);
  const RotationSequence seq = synthesize_transfer(c0, cs, parse_family(cfg.family), cfg.prune);
  const GroupedSequence groups = cfg.concurrent ? compress_concurrent(seq) : sequential_groups(seq);
  const Schedule schedule = to_schedule(groups, detail::amplitude_rule(cfg), cfg.nonnegative_time);
  io::save_schedule(cfg.out_path, schedule);

  // Report on what was written, not on the in-memory copy.
  const Schedule reread = io::load_schedule(cfg.out_path);
  const double fid = fidelity(cs, propagate(reread, c0).final_state());
  const TimeEnergyReport cost = evaluate_cost(reread, reread.meta.lambda.value_or(1.0));
  out << "family: " << to_string(seq.family) << '\n';
  if (seq.family == Family::XZ) out << "phase_correction: " << seq.correction_variant << '\n';
  out << "rotations: " << seq.rotations.size() << '\n';
  out << "steps: " << reread.steps.size() << '\n';
  out << "amplitude: " << std::setprecision(12) << reread.meta.amplitude << '\n';
  out << "schedule: " << cfg.out_path << '\n';
  detail::print_report(out, cost);
  return detail::check_fidelity(out, fid);
}

inline int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  const Schedule s = io::load_schedule(cfg.schedule_path);
  const ComplexVector psi0 = io::load_state(cfg.initial_path);
  const Trajectory traj = propagate(s, psi0);
  if (!cfg.trajectory_path.empty()) {
    std::ofstream csv(cfg.trajectory_path);
    if (!csv) throw Error(ErrorCode::ParseError, "cannot write '" + cfg.trajectory_path + "'");
    io::write_trajectory_csv(csv, traj);
  }
  out << "steps: " << s.steps.size() << '\n';
  out << "duration: " << std::setprecision(12) << traj.times.back() << '\n';
  out << "final_state:\n";
  for (Eigen::Index i = 0; i < traj.final_state().size(); ++i) {
    out << "  " << (i + 1) << ": " << detail::complex_str(traj.final_state()(i)) << '\n';
  }
  double norm_drift = 0.0;
  for (const auto& psi : traj.states) norm_drift = std::max(norm_drift, std::abs(psi.norm() - psi0.norm()));
  if (norm_drift > 1e-10) {
    out << "FAILED: norm drift " << norm_drift << '\n';
    return kExitValidation;
  }
  if (!cfg.target_path.empty()) return detail::check_fidelity(out, fidelity(io::load_state(cfg.target_path), traj.final_state()));
  return kExitOk;
}

inline int cmd_optimize(const RunConfig& cfg, std::ostream& out) {
  const double lambda = cfg.lambda.value_or(1.0);
  const Schedule s = io::load_schedule(cfg.schedule_path);
  const TimeEnergyReport given = evaluate_cost(s, lambda);
  Schedule best = rescale_schedule(s, optimal_amplitude(lambda));
  best.meta.amplitude_rule = "time_energy_optimal";
  best.meta.lambda = lambda;
  const TimeEnergyReport optimal = evaluate_cost(best, lambda);
  if (!cfg.out_path.empty()) io::save_schedule(cfg.out_path, best);
  if (cfg.json) {
    nlohmann::ordered_json j;
    j["optimal_amplitude"] = optimal_amplitude(lambda);
    j["input"] = detail::report_json(given);
    j["optimal"] = detail::report_json(optimal);
    out << j.dump(2) << '\n';
  } else {
    out << "optimal_amplitude: " << std::setprecision(12) << optimal_amplitude(lambda) << '\n';
    out << "input schedule (amplitude " << s.meta.amplitude << "):\n";
    detail::print_report(out, given, "  ");
    out << "optimal schedule:\n";
    detail::print_report(out, optimal, "  ");
  }
  return kExitOk;
}

inline int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  const ComplexMatrix u = io::load_matrix(cfg.unitary_path);
  const UnitaryFactorization f = factorize_unitary(u);
  Schedule s = factorization_to_schedule(f, detail::amplitude_rule(cfg), cfg.prune);
  if (!cfg.out_path.empty()) {
    io::save_schedule(cfg.out_path, s);
    s = io::load_schedule(cfg.out_path);
  }
  const double residual = operator_distance(propagate_operator(s), u);
  out << "dim: " << f.dim << '\n';
  if (cfg.report) {
    out << "eigenphases: " << detail::angle_list(f.eigenphases) << '\n';
    for (const auto& sc : f.stages) {
      out << "stage " << sc.size << ": theta=" << detail::angle_list(sc.theta) << " phi=" << detail::angle_list(sc.phi)
          << '\n';
    }
  }
  out << "steps: " << s.steps.size() << " (unpruned count " << unitary_step_count(f.dim) << ", two-level Euler count "
      << euler_step_count(f.dim) << ")\n";
  out << "residual: " << std::scientific << std::setprecision(3) << residual << std::defaultfloat << '\n';
  if (!(residual <= 1e-8)) {
    out << "FAILED: residual exceeds 1e-8\n";
    return kExitValidation;
  }
  return kExitOk;
}

inline int cmd_wstate(const RunConfig& cfg, std::ostream& out) {
  const int n = cfg.levels;
  const RotationSequence seq = w_state_sequence(n, parse_family(cfg.family));
  const Schedule s = to_schedule(sequential_groups(seq), detail::amplitude_rule(cfg));
  if (!cfg.out_path.empty()) io::save_schedule(cfg.out_path, s);
  const Trajectory traj = propagate(s, basis_state(n, 0));

  out << "theta: " << detail::angle_list(to_hyperspherical(uniform_superposition(n)).theta) << '\n';
  out << "pulses:";
  for (const auto& r : seq.rotations) out << ' ' << to_string(r.channel) << '(' << std::fixed << std::setprecision(6) << r.angle << ')';
  out << std::defaultfloat << '\n';
  out << "amplitudes (|c_m| after n pulses):\n";
  const auto cols = traj.states.size();
  for (int m = 0; m < n; ++m) {
    out << ' ';
    for (std::size_t col = 0; col < cols; ++col) {
      out << ' ' << std::fixed << std::setprecision(4) << std::abs(traj.states[col](m));
    }
    out << '\n';
  }
  out << std::defaultfloat;
  return detail::check_fidelity(out, fidelity(uniform_superposition(n), traj.final_state()));
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  verify::Options opt;
  opt.seed = cfg.seed;
  opt.per_dim = cfg.count;
  opt.tolerance_scale = cfg.tolerance_scale;
  const verify::Report rep = verify::run_suite(opt);
  for (const auto& r : rep.results) out << verify::format_result(r) << '\n';
  out << (rep.passed() ? "all properties passed" : "some properties FAILED") << '\n';
  return rep.passed() ? kExitOk : kExitValidation;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "coords") return cmd_coords(cfg, out);
  if (cfg.command == "synthesize") return cmd_synthesize(cfg, out);
  if (cfg.command == "simulate") return cmd_simulate(cfg, out);
  if (cfg.command == "optimize") return cmd_optimize(cfg, out);
  if (cfg.command == "decompose") return cmd_decompose(cfg, out);
  if (cfg.command == "wstate") return cmd_wstate(cfg, out);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  throw CLI::ValidationError("a command is required");
}

/// Parses args (argv without the program name) and runs the command.
/// Returns 0 on success, 1 on a failed validation, 2 on usage errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bang-bang control synthesis for N-level quantum systems", "bangbang"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_amplitude_opts = [&](CLI::App* sub) {
    auto* lam = sub->add_option("--lambda", cfg.lambda, "time/energy cost ratio; amplitude sqrt(lambda)");
    auto* amp = sub->add_option("--amplitude", cfg.amplitude, "fixed pulse amplitude L");
    lam->excludes(amp);
  };

  auto* coords = app.add_subcommand("coords", "print hyperspherical coordinates of a state");
  coords->add_option("state", cfg.state_path, "state file")->required();

  auto* synth = app.add_subcommand("synthesize", "synthesize a state-transfer schedule");
  synth->add_option("--initial", cfg.initial_path, "initial state file")->required();
  synth->add_option("--target", cfg.target_path, "target state file")->required();
  synth->add_option("--family", cfg.family, "yz or xz")->check(CLI::IsMember({"yz", "xz"}));
  add_amplitude_opts(synth);
  synth->add_flag("--prune", cfg.prune, "drop zero-angle rotations");
  synth->add_flag("--concurrent", cfg.concurrent, "run phase blocks concurrently");
  synth->add_flag("--nonnegative-time", cfg.nonnegative_time, "use positive amplitudes only");
  synth->add_option("--out", cfg.out_path, "schedule JSON to write")->required();

  auto* sim = app.add_subcommand("simulate", "propagate a state under a schedule");
  sim->add_option("--schedule", cfg.schedule_path, "schedule JSON")->required();
  sim->add_option("--initial", cfg.initial_path, "initial state file")->required();
  sim->add_option("--target", cfg.target_path, "target state file");
  sim->add_option("--trajectory", cfg.trajectory_path, "trajectory CSV to write");

  auto* opt = app.add_subcommand("optimize", "time-energy report and optimal rescaling");
  opt->add_option("--schedule", cfg.schedule_path, "schedule JSON")->required();
  opt->add_option("--lambda", cfg.lambda, "time/energy cost ratio")->required();
  opt->add_flag("--json", cfg.json, "print JSON");
  opt->add_option("--out", cfg.out_path, "write the rescaled schedule");

  auto* dec = app.add_subcommand("decompose", "factor a unitary into a bang-bang schedule");
  dec->add_option("--unitary", cfg.unitary_path, "matrix file")->required();
  dec->add_option("--out,--schedule", cfg.out_path, "schedule JSON to write");
  dec->add_flag("--report", cfg.report, "print eigenphases and stage angles");
  dec->add_flag("--prune", cfg.prune, "drop zero-angle rotations and empty steps");
  add_amplitude_opts(dec);

  auto* w = app.add_subcommand("wstate", "W-state preparation from |1>");
  w->add_option("--n", cfg.levels, "number of levels")->required()->check(CLI::Range(2, 4096));
  w->add_option("--family", cfg.family, "yz or xz")->check(CLI::IsMember({"yz", "xz"}));
  w->add_option("--out", cfg.out_path, "schedule JSON to write");
  add_amplitude_opts(w);

  auto* ver = app.add_subcommand("verify", "run the deterministic property battery");
  ver->add_option("--seed", cfg.seed, "random seed");
  ver->add_option("--count", cfg.count, "random cases per dimension")->check(CLI::PositiveNumber);
  ver->add_option("--tolerance-scale", cfg.tolerance_scale, "scale all limits (testing)")->group("");

  for (auto* sub : {coords, synth, sim, opt, dec, w, ver}) {
    sub->callback([&cfg, sub] { cfg.command = sub->get_name(); });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return dispatch(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    const bool validation = e.code() == ErrorCode::DeflationFailure;
    return validation ? kExitValidation : kExitUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace bangbang::cli
