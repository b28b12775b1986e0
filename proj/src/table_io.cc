// Copyright 2026 The Signaling Bandits Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sigbandits/table_io.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace sigbandits {

namespace {

using nlohmann::json;

json RowJson(const MetricsRow& row) {
  json j;
  j["experiment"] = row.experiment;
  j["speaker"] = row.speaker;
  j["p_truthful"] = QuantizeSig6(row.p_truthful);
  j["pi_optimal"] = QuantizeSig6(row.pi_optimal);
  j["r_local"] =
      row.r_local.has_value() ? json(QuantizeSig6(*row.r_local)) : json();
  j["r_generalization"] = row.r_generalization.has_value()
                              ? json(QuantizeSig6(*row.r_generalization))
                              : json();
  return j;
}

std::string JoinSig6(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ' ';
    out += FormatSig6(v);
  }
  return out;
}

json CandidateJson(const CalibrationCandidate& candidate) {
  json j;
  json weights = json::array();
  for (double w : candidate.world.weights) weights.push_back(QuantizeSig6(w));
  json value_set = json::array();
  for (double v : candidate.world.value_set) {
    value_set.push_back(QuantizeSig6(v));
  }
  j["weights"] = std::move(weights);
  j["valueSet"] = std::move(value_set);
  j["maxDeviation"] = QuantizeSig6(candidate.max_deviation);
  json rows = json::array();
  for (const MetricsRow& row : candidate.rows) rows.push_back(RowJson(row));
  j["metrics"] = std::move(rows);
  return j;
}

}  // namespace

std::string FormatSig6(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", v);
  return buffer;
}

double QuantizeSig6(double v) {
  return std::strtod(FormatSig6(v).c_str(), nullptr);
}

std::string MetricsCsv(const std::vector<MetricsRow>& rows) {
  std::string out =
      "experiment,speaker,p_truthful,pi_optimal,r_local,r_generalization\n";
  for (const MetricsRow& row : rows) {
    out += row.experiment;
    out += ',';
    out += row.speaker;
    out += ',';
    out += FormatSig6(row.p_truthful);
    out += ',';
    out += FormatSig6(row.pi_optimal);
    out += ',';
    if (row.r_local.has_value()) out += FormatSig6(*row.r_local);
    out += ',';
    if (row.r_generalization.has_value()) {
      out += FormatSig6(*row.r_generalization);
    }
    out += '\n';
  }
  return out;
}

std::string MetricsJson(const std::vector<MetricsRow>& rows) {
  json j = json::array();
  for (const MetricsRow& row : rows) j.push_back(RowJson(row));
  return j.dump(2) + "\n";
}

std::string HeatmapCsv(const std::vector<HeatmapCell>& cells) {
  std::string out = "speaker,feature,value,probability,is_true\n";
  for (const HeatmapCell& cell : cells) {
    out += cell.speaker;
    out += ',';
    out += cell.feature;
    out += ',';
    out += FormatSig6(cell.value);
    out += ',';
    out += FormatSig6(cell.probability);
    out += ',';
    out += cell.is_true ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string CalibrationJson(const CalibrationOutcome& outcome) {
  json j;
  j["candidatesConsidered"] = outcome.candidates_considered;
  j["candidatesEvaluated"] = outcome.candidates_evaluated;
  json matches = json::array();
  for (const CalibrationCandidate& candidate : outcome.matches) {
    matches.push_back(CandidateJson(candidate));
  }
  j["matches"] = std::move(matches);
  j["best"] = outcome.best.has_value() ? CandidateJson(*outcome.best) : json();
  return j.dump(2) + "\n";
}

std::string CalibrationCsv(const CalibrationOutcome& outcome) {
  std::string out = "weights,value_set,max_deviation\n";
  for (const CalibrationCandidate& candidate : outcome.matches) {
    out += JoinSig6(candidate.world.weights);
    out += ',';
    out += JoinSig6(candidate.world.value_set);
    out += ',';
    out += FormatSig6(candidate.max_deviation);
    out += '\n';
  }
  return out;
}

std::string MetricsTableText(const std::vector<MetricsRow>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(14) << "experiment" << std::setw(11)
     << "speaker" << std::setw(13) << "p_truthful" << std::setw(13)
     << "pi_optimal" << std::setw(13) << "r_local" << "r_generalization"
     << '\n';
  for (const MetricsRow& row : rows) {
    os << std::left << std::setw(14) << row.experiment << std::setw(11)
       << row.speaker << std::setw(13) << FormatSig6(row.p_truthful)
       << std::setw(13) << FormatSig6(row.pi_optimal) << std::setw(13)
       << (row.r_local.has_value() ? FormatSig6(*row.r_local) : "-")
       << (row.r_generalization.has_value()
               ? FormatSig6(*row.r_generalization)
               : "-")
       << '\n';
  }
  return os.str();
}

void WriteFile(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() +
                             "' for writing");
  }
  out.write(content.data(),
            static_cast<std::streamsize>(content.size()));
  if (!out) {
    throw std::runtime_error("failed writing '" + path.string() + "'");
  }
}

}  // namespace sigbandits
