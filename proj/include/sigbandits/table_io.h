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

#ifndef SIGBANDITS_TABLE_IO_H_
#define SIGBANDITS_TABLE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sigbandits/experiments.h"

// Table serialization. All numbers are rendered with six significant
// digits ("%.6g"), which also bounds the JSON values, so identical runs
// produce byte-identical files.

namespace sigbandits {

enum class OutputFormat { kCsv, kJson };

// "%.6g" rendering of v.
std::string FormatSig6(double v);

// v rounded to what FormatSig6 prints.
double QuantizeSig6(double v);

// Columns: experiment,speaker,p_truthful,pi_optimal,r_local,
// r_generalization. Metrics a simulation does not define are empty.
std::string MetricsCsv(const std::vector<MetricsRow>& rows);

// Same rows as a JSON array; absent metrics are null.
std::string MetricsJson(const std::vector<MetricsRow>& rows);

// Columns: speaker,feature,value,probability,is_true.
std::string HeatmapCsv(const std::vector<HeatmapCell>& cells);

// Matched worlds with deviations and per-speaker metric rows, plus
// search counters and the closest candidate.
std::string CalibrationJson(const CalibrationOutcome& outcome);

// One row per match: weights,value_set,max_deviation.
std::string CalibrationCsv(const CalibrationOutcome& outcome);

// Fixed-width rendering for standard output; absent metrics print "-".
std::string MetricsTableText(const std::vector<MetricsRow>& rows);

// Writes content to path, creating parent directories; throws
// std::runtime_error naming the path on failure.
void WriteFile(const std::filesystem::path& path, std::string_view content);

}  // namespace sigbandits

#endif  // SIGBANDITS_TABLE_IO_H_
