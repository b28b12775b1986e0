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

#ifndef SIGBANDITS_JSON_CONFIG_H_
#define SIGBANDITS_JSON_CONFIG_H_

#include <filesystem>

#include "json.hpp"
#include "sigbandits/experiments.h"

// JSON configuration loading. Game configs look like:
//
//   {
//     "featureSpace": {
//       "dimensions": [
//         {"name": "color", "features": ["red", "blue", "green"]},
//         {"name": "shape", "features": ["circle", "square", "triangle"]}
//       ]
//     },
//     "weights": [0, -2, 2, 1, -1, 0],
//     "valueSet": [-2, -1, 0, 1, 2],
//     "betas": {"listener": 3, "belief": 3, "action": 3, "combined": 2,
//               "rewardSoftmax": 1},
//     "contextSize": 3,
//     "utteranceFilter": "all",          // or "positive-only"
//     "context": [["green", "circle"], ...]   // reference game only
//   }
//
// Beta values may be the string "inf" for strict maximization. Missing
// betas take the defaults above. Calibration configs add "targets"
// (four metric targets per speaker) and "search" (fixedWeights,
// weightRange, valueSets, tolerance). Malformed input raises ConfigError
// with a message naming the offending field.

namespace sigbandits {

ExperimentConfig ParseExperimentConfig(const nlohmann::json& j);
ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path);

struct CalibrationConfig {
  CalibrationTargets targets;
  CalibrationSearchSpec spec;
};

CalibrationConfig ParseCalibrationConfig(const nlohmann::json& j);
CalibrationConfig LoadCalibrationConfig(const std::filesystem::path& path);

}  // namespace sigbandits

#endif  // SIGBANDITS_JSON_CONFIG_H_
