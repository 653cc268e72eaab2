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

// Text and binary formats. See docs/formats.md for the exact layouts.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "unicert/certify.hpp"
#include "unicert/promise.hpp"
#include "unicert/rydberg.hpp"
#include "unicert/stabilizer.hpp"
#include "unicert/statevector.hpp"

namespace unicert {

/// Edge list: one "u v" pair per line, 1-indexed; '#' starts a comment; an
/// optional "n <count>" line fixes the vertex count (default: the largest
/// index seen). Throws ParseError with the line number.
GraphSpec parse_graph(std::string_view text);
std::string format_graph(const GraphSpec& graph);

/// One signed Pauli string per line ("+XZI", "-ZZX", "XIZ"); '#' comments.
/// Throws ParseError for bad strings or an invalid generator set.
StabilizerTableau parse_generators(std::string_view text);
std::string format_generators(const StabilizerTableau& tableau);

/// CSV record: "# basis=nx,ny,nz" then one row of +1/-1 per shot.
std::string format_record_csv(const MeasurementRecord& record);
MeasurementRecord parse_record_csv(std::string_view text);

/// Binary record: "UMR1", u32 N, u64 T, 3 x f64 basis, then T*N bits packed
/// LSB-first in shot-major order (bit set = outcome -1). Little-endian.
std::string encode_record_binary(const MeasurementRecord& record);
MeasurementRecord decode_record_binary(std::string_view bytes);

/// Dispatches on the "UMR1" magic.
MeasurementRecord parse_record(std::string_view bytes);

std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames it into
/// place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

nlohmann::ordered_json report_to_json(const CertificationReport& report);
nlohmann::ordered_json graph_to_json(const GraphSpec& graph);
nlohmann::ordered_json rydberg_to_json(const RydbergChainConfig& config,
                                       RydbergMode mode,
                                       const RydbergObservables& obs);
nlohmann::ordered_json promise_to_json(const PromiseConditionSet& conditions,
                                       PromiseVerdict verdict);

/// Columns N, epsilon, fidelity, trials, certified_rate, wilson_lo, wilson_hi.
std::string format_success_table_csv(const std::vector<MonteCarloRow>& rows);

/// Columns h, M1..M{N+1}, fidelity.
std::string format_h_sweep_csv(const std::vector<double>& hs,
                               const std::vector<RydbergObservables>& rows);

/// Shortest text that round-trips the double ("%.17g" trimmed).
std::string format_double(double v);

}  // namespace unicert
