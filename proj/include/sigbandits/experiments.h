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

#ifndef SIGBANDITS_EXPERIMENTS_H_
#define SIGBANDITS_EXPERIMENTS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigbandits/metrics.h"

// Experiment drivers. All of them evaluate the Belief, Action, and
// Combined speakers on a shared game and report MetricsRow tables:
//
//   RunReferenceGame   one fixed 3-action context, positive utterances
//                      only (a common-interest reference game).
//   RunLocalContexts   speakers see each size-k context drawn from the
//                      action space; metrics average over all contexts.
//   RunGlobalContext   speakers see the full action space; the listener
//                      still acts in each size-k context.
//   RunOptimalitySweep both regimes with all speaker betas infinite.
//   CalibrateWorld     grid search for worlds whose RunLocalContexts
//                      metrics hit a target table.

namespace sigbandits {

struct ExperimentConfig {
  FeatureSpace feature_space;
  World world;
  UtteranceFilter utterance_filter = UtteranceFilter::kAll;
  ModelParams params;
  int context_size = 3;
  // Empty means the cross product of one feature per dimension.
  std::vector<Action> action_space;
  // Fixed context for RunReferenceGame.
  std::optional<ActionContext> reference_context;
  int jobs = 1;

  void Validate() const;
};

// One action per (feature_1, ..., feature_D) combination across
// dimensions, first dimension varying slowest.
std::vector<Action> CrossProductActions(const FeatureSpace& space);

// Mean speaker probability of one utterance across contexts, tagged with
// whether the utterance is true.
struct HeatmapCell {
  std::string speaker;
  std::string feature;
  double value = 0.0;
  double probability = 0.0;
  bool is_true = false;
};

struct ExperimentResult {
  std::vector<MetricsRow> rows;
  std::vector<HeatmapCell> heatmap;  // filled by RunLocalContexts only
};

ExperimentResult RunReferenceGame(const ExperimentConfig& config);
ExperimentResult RunLocalContexts(const ExperimentConfig& config);
ExperimentResult RunGlobalContext(const ExperimentConfig& config);
ExperimentResult RunOptimalitySweep(const ExperimentConfig& config);

// Target metric values for one speaker under RunLocalContexts.
struct SpeakerTargets {
  double p_truthful = 0.0;
  double pi_optimal = 0.0;
  double r_local = 0.0;
  double r_generalization = 0.0;
};

struct CalibrationTargets {
  SpeakerTargets belief;
  SpeakerTargets action;
  SpeakerTargets combined;
};

// Search grid: every integer assignment of the non-fixed weights in
// [weight_min, weight_max], crossed with each candidate value set.
// Candidates whose weights are not all members of the value set are
// counted as considered but not evaluated.
struct CalibrationSearchSpec {
  FeatureSpace feature_space;
  ModelParams params;
  int context_size = 3;
  std::map<std::string, double> fixed_weights;
  double weight_min = -2.0;
  double weight_max = 2.0;
  std::vector<std::vector<double>> value_sets;
  double tolerance = 0.005;
  int jobs = 1;
};

struct CalibrationCandidate {
  World world;
  // Largest |metric - target| over the twelve targeted numbers.
  double max_deviation = 0.0;
  std::vector<MetricsRow> rows;
};

struct CalibrationOutcome {
  // Candidates within tolerance, sorted by (max_deviation, weights,
  // value set).
  std::vector<CalibrationCandidate> matches;
  std::int64_t candidates_considered = 0;
  std::int64_t candidates_evaluated = 0;
  // Closest evaluated candidate even when nothing matched; useful as a
  // diagnostic for empty outcomes.
  std::optional<CalibrationCandidate> best;
};

CalibrationOutcome CalibrateWorld(const CalibrationTargets& targets,
                                  const CalibrationSearchSpec& spec);

}  // namespace sigbandits

#endif  // SIGBANDITS_EXPERIMENTS_H_
