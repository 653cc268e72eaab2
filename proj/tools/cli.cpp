// Copyright 2026 The Unicert Authors
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

#include "unicert/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include "unicert/certify.hpp"
#include "unicert/errors.hpp"
#include "unicert/io.hpp"
#include "unicert/pauli.hpp"
#include "unicert/promise.hpp"
#include "unicert/random.hpp"
#include "unicert/rydberg.hpp"
#include "unicert/stabilizer.hpp"
#include "unicert/statevector.hpp"

namespace unicert {
namespace {

using Json = nlohmann::ordered_json;

// Sub-seed tags below the command seed.
constexpr std::uint64_t kNoiseTag = 0x4e4f495345ULL;  // noise-model randomness
constexpr std::uint64_t kSampleTag = 0x53414d50ULL;   // sample command

// Output files written by one command, in order.
struct Outputs {
  std::vector<std::pair<std::string, std::string>> files;  // path, sha256

  void write(const std::string& path, const std::string& content) {
    write_file_atomic(path, content);
    files.emplace_back(path, sha256_hex(content));
  }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ArgumentError("not a number: '" + s + "'");
  return v;
}

std::size_t to_count(const std::string& s) {
  const double v = to_real(s);
  if (!(v >= 0.0) || v != std::floor(v)) throw ArgumentError("not a count: '" + s + "'");
  return static_cast<std::size_t>(v);
}

struct TargetOptions {
  std::string graph_file;
  std::size_t path_n = 0;

  GraphSpec resolve() const {
    if (!graph_file.empty() && path_n != 0) {
      throw ArgumentError("give either --graph or --path, not both");
    }
    if (!graph_file.empty()) return parse_graph(read_file(graph_file));
    if (path_n != 0) return GraphSpec::path(path_n);
    throw ArgumentError("a target is required (--graph FILE or --path N)");
  }
  Json to_json() const {
    return {{"graph", graph_file}, {"path", path_n}};
  }
};

// "orthogonal:p", "depolarizing:p" or "zrot:q:angle" (q 1-based).
NoiseModel parse_noise(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() == 2 && parts[0] == "orthogonal") {
    return ReplaceWithOrthogonal{to_real(parts[1])};
  }
  if (parts.size() == 2 && parts[0] == "depolarizing") {
    return Depolarizing{to_real(parts[1])};
  }
  if (parts.size() == 3 && parts[0] == "zrot") {
    const std::size_t q = to_count(parts[1]);
    if (q == 0) throw ArgumentError("zrot qubit is 1-based");
    return SingleQubitZRotation{q - 1, to_real(parts[2])};
  }
  throw ArgumentError("unknown noise spec '" + spec +
                      "' (orthogonal:p, depolarizing:p, zrot:q:angle)");
}

MixedStateEnsemble build_state(const GraphSpec& graph,
                               const std::vector<std::string>& noise,
                               std::uint64_t seed) {
  MixedStateEnsemble rho = MixedStateEnsemble::pure(prepare_graph_state(graph));
  for (std::size_t k = 0; k < noise.size(); ++k) {
    rho = apply_noise(rho, parse_noise(noise[k]), derive_seed(seed, kNoiseTag + k));
  }
  return rho;
}

// "x", "z", "y", "x+z", "x-z", "theta:<radians>" or "nx,ny,nz".
MeasurementDirection parse_basis(const std::string& s) {
  if (s == "x") return MeasurementDirection::along(Axis::X);
  if (s == "y") return MeasurementDirection::along(Axis::Y);
  if (s == "z") return MeasurementDirection::along(Axis::Z);
  if (s == "x+z") return MeasurementDirection::in_xz_plane(std::numbers::pi / 4);
  if (s == "x-z") return MeasurementDirection::in_xz_plane(3 * std::numbers::pi / 4);
  if (s.rfind("theta:", 0) == 0) {
    return MeasurementDirection::in_xz_plane(to_real(s.substr(6)));
  }
  const auto parts = split(s, ',');
  if (parts.size() == 3) {
    return MeasurementDirection(to_real(parts[0]), to_real(parts[1]), to_real(parts[2]));
  }
  throw ArgumentError("unknown basis '" + s + "'");
}

void write_manifest(const std::string& primary, const std::string& command,
                    const std::vector<std::string>& args, const Json& config,
                    std::uint64_t seed, double seconds, const Outputs& outputs) {
  Json files = Json::array();
  for (const auto& [path, digest] : outputs.files) {
    files.push_back({{"path", path}, {"sha256", digest}});
  }
  const Json manifest = {{"command", command},
                         {"argv", args},
                         {"config", config},
                         {"seed", seed},
                         {"version", kToolVersion},
                         {"duration_seconds", seconds},
                         {"outputs", files}};
  write_file_atomic(primary + ".manifest.json", manifest.dump(2) + "\n");
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::ostringstream os;
  for (unsigned int i = 0; i < length; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  }
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  CLI::App app{"Uniform-measurement certification of graph states"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::function<int()> action;
  std::string command;
  std::string manifest_primary;
  Json manifest_config;
  std::uint64_t manifest_seed = 0;
  Outputs outputs;

  // certify
  TargetOptions c_target;
  std::vector<std::string> c_noise, c_records;
  double c_epsilon = 0.0;
  std::uint64_t c_shots = 0, c_seed = 0;
  std::string c_out, c_sampler = "histogram";
  auto* certify_cmd = app.add_subcommand("certify", "Run the certification protocol");
  certify_cmd->add_option("--graph", c_target.graph_file, "Edge-list file (1-indexed)");
  certify_cmd->add_option("--path", c_target.path_n, "Use the path graph on N vertices");
  certify_cmd->add_option("--noise", c_noise,
                          "Noise applied to the ideal state: orthogonal:p, "
                          "depolarizing:p, zrot:q:angle");
  certify_cmd->add_option("--records", c_records, "Measurement record files (CSV or UMR1)");
  certify_cmd->add_option("--epsilon", c_epsilon, "Accuracy parameter")->required();
  certify_cmd->add_option("--shots", c_shots, "Shots per basis (default from epsilon)");
  certify_cmd->add_option("--seed", c_seed, "Seed");
  certify_cmd->add_option("--sampler", c_sampler, "histogram or per-shot")
      ->check(CLI::IsMember({"histogram", "per-shot"}));
  certify_cmd->add_option("--out", c_out, "Report JSON path");
  certify_cmd->callback([&] {
    command = "certify";
    action = [&]() -> int {
      const GraphSpec graph = c_target.resolve();
      CertificationConfig config{c_epsilon, c_shots, c_seed};
      CertificationReport report;
      if (!c_records.empty()) {
        if (!c_noise.empty()) throw ArgumentError("--records excludes --noise");
        std::vector<MeasurementRecord> records;
        for (const auto& f : c_records) records.push_back(parse_record(read_file(f)));
        const RecordSource source(std::move(records));
        if (config.shots == 0) config.shots = source.shots();
        report = certify(source, graph, config);
      } else {
        const auto mode = c_sampler == "per-shot" ? EnsembleSource::Mode::PerShot
                                                  : EnsembleSource::Mode::Histogram;
        const EnsembleSource source(build_state(graph, c_noise, c_seed), mode);
        report = certify(source, graph, config);
      }
      const std::string json = report_to_json(report).dump(2) + "\n";
      if (!c_out.empty()) {
        outputs.write(c_out, json);
        manifest_primary = c_out;
      } else {
        out << json;
      }
      out << to_string(report.verdict) << '\n';
      manifest_seed = c_seed;
      manifest_config = {{"target", c_target.to_json()},
                         {"noise", c_noise},
                         {"records", c_records},
                         {"epsilon", c_epsilon},
                         {"shots", report.shots},
                         {"sampler", c_sampler}};
      return report.verdict == Verdict::Certified ? kExitOk : kExitFailed;
    };
  });

  // montecarlo
  std::vector<std::string> m_points;
  std::size_t m_trials = 200;
  std::uint64_t m_seed = 0;
  std::string m_out;
  auto* mc_cmd = app.add_subcommand("montecarlo", "Success rates over a grid");
  mc_cmd->add_option("--point", m_points,
                     "Grid point N:epsilon:fidelity (repeatable); fidelity 'low' "
                     "means 1 - 8 N sqrt(epsilon) - 0.01");
  mc_cmd->add_option("--trials", m_trials, "Trials per point (>= 100)");
  mc_cmd->add_option("--seed", m_seed, "Seed");
  mc_cmd->add_option("--out", m_out, "CSV path");
  mc_cmd->callback([&] {
    command = "montecarlo";
    action = [&]() -> int {
      std::vector<MonteCarloPoint> grid;
      for (const auto& p : m_points) {
        const auto parts = split(p, ':');
        if (parts.size() != 3) throw ArgumentError("grid point must be N:epsilon:fidelity");
        MonteCarloPoint point{to_count(parts[0]), to_real(parts[1]), 1.0};
        point.fidelity = parts[2] == "low"
                             ? 1.0 - 8.0 * static_cast<double>(point.n) *
                                         std::sqrt(point.epsilon) - 0.01
                             : to_real(parts[2]);
        grid.push_back(point);
      }
      const auto rows = monte_carlo_validation(grid, m_trials, m_seed);
      const std::string csv = format_success_table_csv(rows);
      if (!m_out.empty()) {
        outputs.write(m_out, csv);
        manifest_primary = m_out;
      } else {
        out << csv;
      }
      bool consistent = true;
      for (const auto& r : rows) {
        out << "N=" << r.point.n << " eps=" << format_double(r.point.epsilon)
            << " F=" << format_double(r.point.fidelity) << " regime=" << to_string(r.regime)
            << " certified_rate=" << format_double(r.certified_rate)
            << (r.consistent ? " ok" : " INCONSISTENT") << '\n';
        consistent = consistent && r.consistent;
      }
      manifest_seed = m_seed;
      manifest_config = {{"points", m_points}, {"trials", m_trials}};
      return consistent ? kExitOk : kExitFailed;
    };
  });

  // rydberg-sim
  RydbergChainConfig r_config;
  std::string r_mode = "pulses", r_out, r_csv;
  std::vector<double> r_sweep;
  auto* ry_cmd = app.add_subcommand("rydberg-sim", "Simulate the Rydberg chain protocol");
  ry_cmd->set_help_flag("--help", "Print this help message and exit");  // frees -h
  ry_cmd->add_option("--n", r_config.n, "Number of atoms (odd)");
  ry_cmd->add_option("--h", r_config.h, "Pulse amplitude in units of C6");
  ry_cmd->add_option("--mode", r_mode, "pulses or ideal")
      ->check(CLI::IsMember({"pulses", "ideal"}));
  ry_cmd->add_flag("--nn-only", r_config.nearest_neighbor_only,
                   "Keep only nearest-neighbour interactions");
  ry_cmd->add_flag("--instant", r_config.instantaneous_rotations,
                   "Use instantaneous single-qubit rotations");
  ry_cmd->add_option("--sweep", r_sweep, "h values for a sweep")->delimiter(',');
  ry_cmd->add_option("--out", r_out, "JSON path");
  ry_cmd->add_option("--csv", r_csv, "Sweep CSV path");
  ry_cmd->callback([&] {
    command = "rydberg-sim";
    action = [&]() -> int {
      const RydbergMode mode = r_mode == "ideal" ? RydbergMode::Ideal : RydbergMode::Pulses;
      const RydbergObservables obs = measure_observables(r_config, mode);
      const std::string json = rydberg_to_json(r_config, mode, obs).dump(2) + "\n";
      if (!r_out.empty()) {
        outputs.write(r_out, json);
        manifest_primary = r_out;
      } else {
        out << json;
      }
      if (!r_sweep.empty()) {
        const auto rows = h_sweep(r_config, r_sweep, mode);
        const std::string csv = format_h_sweep_csv(r_sweep, rows);
        if (!r_csv.empty()) {
          outputs.write(r_csv, csv);
          if (manifest_primary.empty()) manifest_primary = r_csv;
        } else {
          out << csv;
        }
      }
      manifest_config = {{"n", r_config.n},
                         {"h", r_config.h},
                         {"mode", r_mode},
                         {"nn_only", r_config.nearest_neighbor_only},
                         {"instant", r_config.instantaneous_rotations},
                         {"sweep", r_sweep}};
      return kExitOk;
    };
  });

  // count
  std::size_t n_count = 0;
  auto* count_cmd = app.add_subcommand("count", "Number of independent symmetric operators");
  count_cmd->add_option("--n", n_count, "Number of qubits")->required();
  count_cmd->callback([&] {
    command = "count";
    action = [&]() -> int {
      out << count_independent_operators(n_count) << '\n';
      return kExitOk;
    };
  });

  // promise-check
  std::string p_generators, p_out;
  auto* promise_cmd =
      app.add_subcommand("promise-check", "Check the even-N path conditions on a stabilizer state");
  promise_cmd->add_option("--generators", p_generators, "Generator file (.stab)")->required();
  promise_cmd->add_option("--out", p_out, "JSON path");
  promise_cmd->callback([&] {
    command = "promise-check";
    action = [&]() -> int {
      const StabilizerTableau t = parse_generators(read_file(p_generators));
      const PromiseConditionSet c = evaluate_conditions(t);
      const PromiseVerdict v = certify_under_promise(t);
      const std::string json = promise_to_json(c, v).dump(2) + "\n";
      if (!p_out.empty()) {
        outputs.write(p_out, json);
        manifest_primary = p_out;
      } else {
        out << json;
      }
      out << to_string(v) << '\n';
      manifest_config = {{"generators", p_generators}};
      return kExitOk;
    };
  });

  // sample
  TargetOptions s_target;
  std::vector<std::string> s_noise;
  std::string s_basis = "x", s_format = "csv", s_out;
  std::size_t s_shots = 1000;
  std::uint64_t s_seed = 0;
  auto* sample_cmd = app.add_subcommand("sample", "Sample a uniform measurement record");
  sample_cmd->add_option("--graph", s_target.graph_file, "Edge-list file (1-indexed)");
  sample_cmd->add_option("--path", s_target.path_n, "Use the path graph on N vertices");
  sample_cmd->add_option("--noise", s_noise, "Noise spec (repeatable)");
  sample_cmd->add_option("--basis", s_basis, "x, y, z, x+z, x-z, theta:<rad> or nx,ny,nz");
  sample_cmd->add_option("--shots", s_shots, "Number of shots");
  sample_cmd->add_option("--seed", s_seed, "Seed");
  sample_cmd->add_option("--format", s_format, "csv or binary")
      ->check(CLI::IsMember({"csv", "binary"}));
  sample_cmd->add_option("--out", s_out, "Record path")->required();
  sample_cmd->callback([&] {
    command = "sample";
    action = [&]() -> int {
      const GraphSpec graph = s_target.resolve();
      const MixedStateEnsemble rho = build_state(graph, s_noise, s_seed);
      const MeasurementRecord rec = sample_uniform_measurement(
          rho, parse_basis(s_basis), s_shots, derive_seed(s_seed, kSampleTag));
      outputs.write(s_out, s_format == "binary" ? encode_record_binary(rec)
                                                : format_record_csv(rec));
      manifest_primary = s_out;
      manifest_seed = s_seed;
      manifest_config = {{"target", s_target.to_json()},
                         {"noise", s_noise},
                         {"basis", s_basis},
                         {"shots", s_shots},
                         {"format", s_format}};
      return kExitOk;
    };
  });

  // replay
  std::string replay_manifest;
  auto* replay_cmd =
      app.add_subcommand("replay", "Re-run a manifest and compare output digests");
  replay_cmd->add_option("--manifest", replay_manifest, "Manifest JSON")->required();
  replay_cmd->callback([&] {
    command = "replay";
    action = [&]() -> int {
      const Json m = Json::parse(read_file(replay_manifest));
      const auto argv = m.at("argv").get<std::vector<std::string>>();
      if (argv.size() > 1 && argv[1] == "replay") throw ArgumentError("manifest replays itself");
      std::ostringstream sink;
      const int code = run_cli(argv, sink, err);
      bool identical = true;
      for (const auto& f : m.at("outputs")) {
        const std::string path = f.at("path").get<std::string>();
        const std::string want = f.at("sha256").get<std::string>();
        const std::string got = sha256_hex(read_file(path));
        out << (got == want ? "identical " : "DIFFERENT ") << path << '\n';
        identical = identical && got == want;
      }
      if (code == kExitError) return kExitError;
      return identical ? kExitOk : kExitError;
    };
  });

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const int code = action();
    if (!manifest_primary.empty()) {
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      write_manifest(manifest_primary, command, args, manifest_config, manifest_seed,
                     seconds, outputs);
    }
    return code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace unicert
