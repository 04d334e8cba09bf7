// SPDX-License-Identifier: Apache-2.0
//
// risopt - globally optimal K-ary discrete phase selection for RIS links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef RISOPT_IO_HPP
#define RISOPT_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "risopt/channel.hpp"
#include "risopt/phase.hpp"
#include "risopt/solvers.hpp"

namespace risopt {

/// Malformed input file; message carries the file name and line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fixed numeric formatting for CSV emission: 12 significant digits, so a
/// fixed seed yields byte-identical files.
std::string format_g12(double v);

// Channel record: {"h0": [re, im], "h": [[re, im], ...]} with an optional
// "n" header that, when present, must match the length of "h".
nlohmann::json channel_to_json(const ChannelInstance& ch);
ChannelInstance channel_from_json(const nlohmann::json& j);
ChannelInstance load_channel(const std::string& path);
void save_channel(const ChannelInstance& ch, const std::string& path);

// Scenario file: key names mirror the ScenarioConfig fields (positions in
// meters, powers in dBm, dimensionless kappa) plus an optional "geometry"
// object {n_y, n_z, d_y, d_z}.
struct ScenarioFile {
  ScenarioConfig scenario;
  std::optional<RisGeometry> geometry;
};

nlohmann::json scenario_to_json(const ScenarioConfig& scenario,
                                const std::optional<RisGeometry>& geometry = std::nullopt);
ScenarioFile scenario_from_json(const nlohmann::json& j);
ScenarioFile load_scenario(const std::string& path);

nlohmann::json solve_result_to_json(const SolveResult& result, const std::string& solver_label);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace risopt

#endif  // RISOPT_IO_HPP
