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

#include "sigbandits/metrics.h"

#include <cmath>
#include <string>

namespace sigbandits {

namespace {

void CheckDistSize(std::span<const double> dist, const UtteranceSpace& space) {
  if (static_cast<int>(dist.size()) != space.size()) {
    throw ConfigError("distribution: expected one entry per utterance, got " +
                      std::to_string(dist.size()) + " for " +
                      std::to_string(space.size()) + " utterances");
  }
}

}  // namespace

void ContextDistribution::Validate() const {
  if (contexts.empty()) {
    throw ConfigError("contexts: must be non-empty");
  }
  if (contexts.size() != probabilities.size()) {
    throw ConfigError("contexts: need one probability per context");
  }
  double total = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw ConfigError("contexts: negative probability");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ConfigError("contexts: probabilities must sum to 1");
  }
}

ContextDistribution EnumerateContexts(const std::vector<Action>& action_space,
                                      int context_size) {
  const int n = static_cast<int>(action_space.size());
  if (context_size < 1 || context_size > n) {
    throw ConfigError("contextSize: must be between 1 and the action-space "
                      "size (" + std::to_string(n) + ")");
  }
  ContextDistribution result;
  std::vector<int> pick(context_size);
  for (int i = 0; i < context_size; ++i) pick[i] = i;
  while (true) {
    ActionContext context;
    context.actions.reserve(context_size);
    for (int i : pick) context.actions.push_back(action_space[i]);
    result.contexts.push_back(std::move(context));
    // Advance to the next combination in lexicographic order.
    int j = context_size - 1;
    while (j >= 0 && pick[j] == n - context_size + j) --j;
    if (j < 0) break;
    ++pick[j];
    for (int i = j + 1; i < context_size; ++i) pick[i] = pick[i - 1] + 1;
  }
  const double p = 1.0 / static_cast<double>(result.contexts.size());
  result.probabilities.assign(result.contexts.size(), p);
  return result;
}

double PTruthful(std::span<const double> dist, const UtteranceSpace& space,
                 const World& world) {
  CheckDistSize(dist, space);
  double total = 0.0;
  for (int i = 0; i < space.size(); ++i) {
    if (IsTrue(space.utterances[i], world)) total += dist[i];
  }
  return total;
}

double PiOptimal(std::span<const double> dist, const UtteranceSpace& space,
                 const ActionContext& context, const World& world,
                 const ModelParams& params) {
  CheckDistSize(dist, space);
  double total = 0.0;
  for (int i = 0; i < space.size(); ++i) {
    total +=
        dist[i] * OptimalPolicyMass(space.utterances[i], context, world, params);
  }
  return total;
}

double RLocal(std::span<const double> dist, const UtteranceSpace& space,
              const ActionContext& context, const World& world,
              const ModelParams& params) {
  CheckDistSize(dist, space);
  double total = 0.0;
  for (int i = 0; i < space.size(); ++i) {
    total +=
        dist[i] * CombinedUtility(space.utterances[i], context, world, params);
  }
  return total;
}

double RGeneralization(std::span<const double> dist,
                       const UtteranceSpace& space,
                       const ContextDistribution& contexts, const World& world,
                       const ModelParams& params) {
  CheckDistSize(dist, space);
  contexts.Validate();
  double total = 0.0;
  for (int i = 0; i < space.size(); ++i) {
    double inner = 0.0;
    for (int c = 0; c < contexts.size(); ++c) {
      inner += contexts.probabilities[c] *
               CombinedUtility(space.utterances[i], contexts.contexts[c],
                               world, params);
    }
    total += dist[i] * inner;
  }
  return total;
}

}  // namespace sigbandits
