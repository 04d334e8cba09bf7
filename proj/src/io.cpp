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

#include "risopt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace risopt {

namespace {

using nlohmann::json;

// Line number of a byte offset, for parse diagnostics.
size_t line_of_offset(const std::string& text, size_t offset) {
  size_t line = 1;
  for (size_t i = 0; i < offset && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

json parse_with_context(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(origin + ":" + std::to_string(line_of_offset(text, e.byte)) + ": " +
                     e.what());
  }
}

cplx complex_from_json(const json& j, const std::string& origin, const char* field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError(origin + ": field '" + field + "' must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string format_g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

json channel_to_json(const ChannelInstance& ch) {
  json j;
  j["n"] = ch.size();
  j["h0"] = {ch.h0().real(), ch.h0().imag()};
  json h = json::array();
  for (const cplx& c : ch.h()) h.push_back({c.real(), c.imag()});
  j["h"] = std::move(h);
  return j;
}

namespace {

ChannelInstance channel_from_json_impl(const json& j, const std::string& origin) {
  if (!j.is_object()) throw ParseError(origin + ": channel record must be a JSON object");
  if (!j.contains("h0")) throw ParseError(origin + ": missing field 'h0'");
  if (!j.contains("h") || !j["h"].is_array()) throw ParseError(origin + ": missing array field 'h'");
  const cplx h0 = complex_from_json(j["h0"], origin, "h0");
  std::vector<cplx> h;
  h.reserve(j["h"].size());
  for (const json& e : j["h"]) h.push_back(complex_from_json(e, origin, "h"));
  if (j.contains("n")) {
    if (!j["n"].is_number_integer())
      throw ParseError(origin + ": field 'n' must be an integer");
    const auto declared = j["n"].get<int64_t>();
    if (declared != static_cast<int64_t>(h.size()))
      throw ParseError(origin + ": declared n=" + std::to_string(declared) + " but 'h' has " +
                       std::to_string(h.size()) + " entries");
  }
  return ChannelInstance(h0, std::move(h));
}

}  // namespace

ChannelInstance channel_from_json(const json& j) {
  return channel_from_json_impl(j, "<json>");
}

ChannelInstance load_channel(const std::string& path) {
  return channel_from_json_impl(parse_with_context(read_text_file(path), path), path);
}

void save_channel(const ChannelInstance& ch, const std::string& path) {
  write_text_file(path, channel_to_json(ch).dump(2) + "\n");
}

json scenario_to_json(const ScenarioConfig& s, const std::optional<RisGeometry>& geometry) {
  json j;
  j["ris_position"] = s.ris_position;
  j["bs_position"] = s.bs_position;
  j["ue_position"] = s.ue_position;
  j["kappa"] = s.kappa;
  j["tx_power_dbm"] = s.tx_power_dbm;
  j["noise_power_dbm"] = s.noise_power_dbm;
  j["direct_link_blocked"] = s.direct_link_blocked;
  j["seed"] = s.seed;
  if (geometry) {
    j["geometry"] = {{"n_y", geometry->n_y},
                     {"n_z", geometry->n_z},
                     {"d_y", geometry->d_y},
                     {"d_z", geometry->d_z}};
  }
  return j;
}

namespace {

Vec3 vec3_from_json(const json& j, const std::string& origin, const char* field) {
  if (!j.is_array() || j.size() != 3)
    throw ParseError(origin + ": field '" + field + "' must be a 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

ScenarioFile scenario_from_json(const json& j) {
  const std::string origin = "<scenario>";
  ScenarioFile out;
  ScenarioConfig& s = out.scenario;
  if (j.contains("ris_position")) s.ris_position = vec3_from_json(j["ris_position"], origin, "ris_position");
  if (j.contains("bs_position")) s.bs_position = vec3_from_json(j["bs_position"], origin, "bs_position");
  if (j.contains("ue_position")) s.ue_position = vec3_from_json(j["ue_position"], origin, "ue_position");
  if (j.contains("kappa")) s.kappa = j["kappa"].get<double>();
  if (j.contains("tx_power_dbm")) s.tx_power_dbm = j["tx_power_dbm"].get<double>();
  if (j.contains("noise_power_dbm")) s.noise_power_dbm = j["noise_power_dbm"].get<double>();
  if (j.contains("direct_link_blocked")) s.direct_link_blocked = j["direct_link_blocked"].get<bool>();
  if (j.contains("seed")) s.seed = j["seed"].get<uint64_t>();
  s.validate();
  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    RisGeometry geom;
    if (g.contains("n_y")) geom.n_y = g["n_y"].get<int>();
    if (g.contains("n_z")) geom.n_z = g["n_z"].get<int>();
    if (g.contains("d_y")) geom.d_y = g["d_y"].get<double>();
    if (g.contains("d_z")) geom.d_z = g["d_z"].get<double>();
    geom.validate();
    out.geometry = geom;
  }
  return out;
}

ScenarioFile load_scenario(const std::string& path) {
  return scenario_from_json(parse_with_context(read_text_file(path), path));
}

json solve_result_to_json(const SolveResult& r, const std::string& solver_label) {
  json j;
  j["solver"] = solver_label;
  j["config"] = r.config.indices;
  j["k_levels"] = r.config.resolution.k_levels();
  j["objective"] = r.objective;
  if (std::isnan(r.snr_boost))
    j["snr_boost"] = nullptr;
  else
    j["snr_boost"] = r.snr_boost;
  j["steps_executed"] = r.steps_executed;
  j["best_step"] = r.best_step;
  j["phase_updates"] = r.phase_updates;
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace risopt
