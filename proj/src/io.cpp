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

#include "unicert/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "unicert/errors.hpp"

namespace unicert {
namespace {

constexpr char kMagic[4] = {'U', 'M', 'R', '1'};
constexpr std::size_t kHeaderBytes = 4 + 4 + 8 + 3 * 8;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Lines with comments stripped, paired with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> content_lines(
    std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) out.emplace_back(number, line);
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::size_t parse_index(std::string_view token, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError("line " + std::to_string(line) + ": expected an integer, got '" +
                     std::string(token) + "'");
  }
  return v;
}

double parse_real(std::string_view token, const std::string& context) {
  double v = 0.0;
  token = trim(token);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ParseError(context + ": expected a number, got '" + std::string(token) + "'");
  }
  return v;
}

template <typename T>
void put_le(std::string& out, T value) {
  using U = std::make_unsigned_t<T>;
  U u;
  std::memcpy(&u, &value, sizeof(T));
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    out.push_back(static_cast<char>((u >> (8 * k)) & 0xFF));
  }
}

template <typename T>
T get_le(std::string_view bytes, std::size_t offset) {
  std::uint64_t u = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) {
    u |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes[offset + k]))
         << (8 * k);
  }
  T value;
  if constexpr (sizeof(T) == 8) {
    std::memcpy(&value, &u, 8);
  } else {
    const auto narrow = static_cast<std::uint32_t>(u);
    std::memcpy(&value, &narrow, sizeof(T));
  }
  return value;
}

void put_f64(std::string& out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  put_le(out, u);
}

double get_f64(std::string_view bytes, std::size_t offset) {
  const auto u = get_le<std::uint64_t>(bytes, offset);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

GraphSpec parse_graph(std::string_view text) {
  std::optional<std::size_t> declared;
  std::size_t max_index = 0;
  std::vector<GraphSpec::Edge> edges;
  for (const auto& [number, line] : content_lines(text)) {
    const auto tokens = split_ws(line);
    if (tokens.size() == 2 && tokens[0] == "n") {
      if (declared) throw ParseError("line " + std::to_string(number) + ": repeated n");
      declared = parse_index(tokens[1], number);
      if (*declared == 0) throw ParseError("line " + std::to_string(number) + ": n must be positive");
      continue;
    }
    if (tokens.size() != 2) {
      throw ParseError("line " + std::to_string(number) + ": expected 'u v'");
    }
    const std::size_t u = parse_index(tokens[0], number);
    const std::size_t v = parse_index(tokens[1], number);
    if (u == 0 || v == 0) {
      throw ParseError("line " + std::to_string(number) + ": vertices are 1-indexed");
    }
    max_index = std::max({max_index, u, v});
    edges.emplace_back(u - 1, v - 1);
  }
  const std::size_t n = declared.value_or(max_index);
  if (n == 0) throw ParseError("graph has no vertices");
  if (max_index > n) throw ParseError("edge endpoint exceeds declared n");
  try {
    return GraphSpec(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid graph: ") + e.what());
  }
}

std::string format_graph(const GraphSpec& graph) {
  std::ostringstream os;
  os << "n " << graph.num_vertices() << '\n';
  for (const auto& [a, b] : graph.edges()) os << a + 1 << ' ' << b + 1 << '\n';
  return os.str();
}

StabilizerTableau parse_generators(std::string_view text) {
  std::vector<PauliString> gens;
  for (const auto& [number, line] : content_lines(text)) {
    try {
      gens.push_back(PauliString::parse(line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (gens.empty()) throw ParseError("no generators");
  try {
    return StabilizerTableau(std::move(gens));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid generator set: ") + e.what());
  }
}

std::string format_generators(const StabilizerTableau& tableau) {
  std::string out;
  for (const auto& g : tableau.generators()) out += g.str() + '\n';
  return out;
}

std::string format_record_csv(const MeasurementRecord& record) {
  std::string out = "# basis=" + format_double(record.basis().nx()) + ',' +
                    format_double(record.basis().ny()) + ',' +
                    format_double(record.basis().nz()) + '\n';
  out.reserve(out.size() + record.shots() * record.num_qubits() * 3);
  for (std::size_t t = 0; t < record.shots(); ++t) {
    const auto row = record.row(t);
    for (std::size_t q = 0; q < row.size(); ++q) {
      if (q) out.push_back(',');
      out += row[q] > 0 ? "1" : "-1";
    }
    out.push_back('\n');
  }
  return out;
}

MeasurementRecord parse_record_csv(std::string_view text) {
  std::optional<MeasurementDirection> basis;
  std::size_t n = 0;
  std::size_t shots = 0;
  std::vector<std::int8_t> outcomes;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(number);
    if (line.front() == '#') {
      const auto body = trim(line.substr(1));
      if (body.rfind("basis=", 0) == 0) {
        if (basis) throw ParseError(where + ": repeated basis header");
        const auto values = body.substr(6);
        std::vector<double> v;
        std::size_t start = 0;
        for (;;) {
          const auto comma = values.find(',', start);
          v.push_back(parse_real(values.substr(start, comma - start), where));
          if (comma == std::string_view::npos) break;
          start = comma + 1;
        }
        if (v.size() != 3) throw ParseError(where + ": basis needs three components");
        try {
          basis.emplace(v[0], v[1], v[2]);
        } catch (const std::invalid_argument& e) {
          throw ParseError(where + ": " + e.what());
        }
      }
      continue;
    }
    std::size_t count = 0;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      const auto cell = trim(line.substr(start, comma - start));
      if (cell == "1" || cell == "+1") {
        outcomes.push_back(1);
      } else if (cell == "-1") {
        outcomes.push_back(-1);
      } else {
        throw ParseError(where + ": entries must be +1 or -1, got '" +
                         std::string(cell) + "'");
      }
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (n == 0) n = count;
    if (count != n) throw ParseError(where + ": row has " + std::to_string(count) +
                                     " entries, expected " + std::to_string(n));
    ++shots;
  }
  if (!basis) throw ParseError("missing '# basis=nx,ny,nz' header");
  if (shots == 0) throw ParseError("record has no shots");
  return MeasurementRecord(*basis, n, shots, std::move(outcomes));
}

std::string encode_record_binary(const MeasurementRecord& record) {
  std::string out(kMagic, 4);
  put_le(out, static_cast<std::uint32_t>(record.num_qubits()));
  put_le(out, static_cast<std::uint64_t>(record.shots()));
  put_f64(out, record.basis().nx());
  put_f64(out, record.basis().ny());
  put_f64(out, record.basis().nz());
  const auto& o = record.outcomes();
  std::string bits((o.size() + 7) / 8, '\0');
  for (std::size_t k = 0; k < o.size(); ++k) {
    if (o[k] < 0) bits[k / 8] = static_cast<char>(bits[k / 8] | (1 << (k % 8)));
  }
  return out + bits;
}

MeasurementRecord decode_record_binary(std::string_view bytes) {
  if (bytes.size() < kHeaderBytes || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw ParseError("not a UMR1 binary record");
  }
  const auto n = get_le<std::uint32_t>(bytes, 4);
  const auto shots = get_le<std::uint64_t>(bytes, 8);
  const double nx = get_f64(bytes, 16), ny = get_f64(bytes, 24), nz = get_f64(bytes, 32);
  if (n == 0 || n > 64) throw ParseError("binary record qubit count out of range");
  if (shots == 0 || shots > (std::uint64_t{1} << 40)) {
    throw ParseError("binary record shot count out of range");
  }
  const std::uint64_t total = shots * n;
  if (bytes.size() != kHeaderBytes + (total + 7) / 8) {
    throw ParseError("binary record payload has the wrong length");
  }
  std::vector<std::int8_t> outcomes(total);
  for (std::uint64_t k = 0; k < total; ++k) {
    const auto byte = static_cast<unsigned char>(bytes[kHeaderBytes + k / 8]);
    outcomes[k] = ((byte >> (k % 8)) & 1U) ? -1 : 1;
  }
  try {
    return MeasurementRecord(MeasurementDirection(nx, ny, nz), n, shots,
                             std::move(outcomes));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid binary record: ") + e.what());
  }
}

MeasurementRecord parse_record(std::string_view bytes) {
  if (bytes.size() >= 4 && std::memcmp(bytes.data(), kMagic, 4) == 0) {
    return decode_record_binary(bytes);
  }
  return parse_record_csv(bytes);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp =
      path.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

nlohmann::ordered_json graph_to_json(const GraphSpec& graph) {
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const auto& [a, b] : graph.edges()) edges.push_back({a + 1, b + 1});
  return {{"n", graph.num_vertices()}, {"edges", edges}};
}

nlohmann::ordered_json report_to_json(const CertificationReport& r) {
  nlohmann::ordered_json bases = nlohmann::ordered_json::array();
  for (const auto& b : r.bases) {
    bases.push_back({{"label", b.label},
                     {"theta", b.theta},
                     {"direction", {b.direction.nx(), b.direction.ny(), b.direction.nz()}}});
  }
  nlohmann::ordered_json sym = nlohmann::ordered_json::array();
  for (std::size_t v : r.symmetry_side) sym.push_back(v + 1);
  return {{"verdict", to_string(r.verdict)},
          {"u_hat", r.u_hat},
          {"m_hat", r.m_hat},
          {"epsilon", r.epsilon},
          {"thresholds", {{"u", r.u_threshold}, {"m", r.m_threshold}}},
          {"T", r.shots},
          {"T_default", r.default_shots},
          {"shots_overridden", r.shots_overridden},
          {"seed", r.seed},
          {"graph", graph_to_json(r.graph)},
          {"symmetry_side", sym},
          {"bases", bases}};
}

nlohmann::ordered_json rydberg_to_json(const RydbergChainConfig& config,
                                       RydbergMode mode,
                                       const RydbergObservables& obs) {
  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  const auto values = obs.values();
  for (std::size_t i = 0; i < values.size(); ++i) labels.push_back("M" + std::to_string(i + 1));
  nlohmann::ordered_json schedules = nlohmann::ordered_json::array();
  for (const auto& s : obs.schedules) {
    nlohmann::ordered_json segs = nlohmann::ordered_json::array();
    for (const auto& seg : s.segments) {
      segs.push_back({{"duration", seg.duration}, {"omega", seg.omega}, {"delta", seg.delta}});
    }
    schedules.push_back({{"label", s.label}, {"segments", segs}});
  }
  return {{"n", config.n},
          {"h", config.h},
          {"c6", config.c6},
          {"mode", mode == RydbergMode::Ideal ? "ideal" : "pulses"},
          {"nearest_neighbor_only", config.nearest_neighbor_only},
          {"instantaneous_rotations", config.instantaneous_rotations},
          {"labels", labels},
          {"values", values},
          {"fidelity", obs.fidelity},
          {"schedules", schedules}};
}

nlohmann::ordered_json promise_to_json(const PromiseConditionSet& c,
                                       PromiseVerdict verdict) {
  return {{"n", c.n},
          {"conditions", {{"c1", c.c1}, {"c2", c.c2}, {"c3", c.c3}, {"c4", c.c4}}},
          {"c3_interpretation", PromiseConditionSet::kC3Interpretation},
          {"verdict", to_string(verdict)}};
}

std::string format_success_table_csv(const std::vector<MonteCarloRow>& rows) {
  std::string out = "N,epsilon,fidelity,trials,certified_rate,wilson_lo,wilson_hi\n";
  for (const auto& r : rows) {
    out += std::to_string(r.point.n) + ',' + format_double(r.point.epsilon) + ',' +
           format_double(r.point.fidelity) + ',' + std::to_string(r.trials) + ',' +
           format_double(r.certified_rate) + ',' + format_double(r.wilson_lo) + ',' +
           format_double(r.wilson_hi) + '\n';
  }
  return out;
}

std::string format_h_sweep_csv(const std::vector<double>& hs,
                               const std::vector<RydbergObservables>& rows) {
  if (hs.size() != rows.size()) throw DimensionError("sweep size mismatch");
  std::string out = "h";
  const std::size_t count = rows.empty() ? 0 : rows.front().values().size();
  for (std::size_t i = 0; i < count; ++i) out += ",M" + std::to_string(i + 1);
  out += ",fidelity\n";
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out += format_double(hs[k]);
    for (double v : rows[k].values()) out += ',' + format_double(v);
    out += ',' + format_double(rows[k].fidelity) + '\n';
  }
  return out;
}

}  // namespace unicert
