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

#ifndef SIGBANDITS_METRICS_H_
#define SIGBANDITS_METRICS_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sigbandits/speakers.h"

// Evaluation metrics for a speaker's utterance distribution: how often it
// tells the truth, how often the listener then picks an optimal action,
// and the expected communication reward in the local context and across
// a distribution of contexts.

namespace sigbandits {

// A weighted set of action contexts used for generalization metrics.
struct ContextDistribution {
  std::vector<ActionContext> contexts;
  std::vector<double> probabilities;

  int size() const { return static_cast<int>(contexts.size()); }
  void Validate() const;
};

// All size-k subsets of the action space as contexts, in lexicographic
// index order, each with probability 1/C(n, k).
ContextDistribution EnumerateContexts(const std::vector<Action>& action_space,
                                      int context_size);

// One output-table row. r_local and r_generalization stay empty where a
// simulation does not define them.
struct MetricsRow {
  std::string experiment;
  std::string speaker;
  double p_truthful = 0.0;
  double pi_optimal = 0.0;
  std::optional<double> r_local;
  std::optional<double> r_generalization;
};

// Total speaker probability on utterances that are true in the world.
double PTruthful(std::span<const double> dist, const UtteranceSpace& space,
                 const World& world);

// Probability that the listener picks a reward-optimal action:
// sum_u P(u) * (policy mass on the optimal-action set after u).
double PiOptimal(std::span<const double> dist, const UtteranceSpace& space,
                 const ActionContext& context, const World& world,
                 const ModelParams& params);

// Expected communication reward in the given context:
// sum_u P(u) * CombinedUtility(u, context).
double RLocal(std::span<const double> dist, const UtteranceSpace& space,
              const ActionContext& context, const World& world,
              const ModelParams& params);

// Expected communication reward over a distribution of contexts:
// sum_u P(u) * sum_A P(A) * CombinedUtility(u, A). The utterance
// distribution is held fixed while the evaluation context varies.
double RGeneralization(std::span<const double> dist,
                       const UtteranceSpace& space,
                       const ContextDistribution& contexts, const World& world,
                       const ModelParams& params);

}  // namespace sigbandits

#endif  // SIGBANDITS_METRICS_H_
