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

#include "sigbandits/speakers.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

namespace sigbandits {

UtteranceSpace BuildUtteranceSpace(const FeatureSpace& space,
                                   const World& world,
                                   UtteranceFilter filter) {
  if (space.size() != world.size()) {
    throw ConfigError("weights: expected one entry per feature, got " +
                      std::to_string(world.size()) + " for " +
                      std::to_string(space.size()) + " features");
  }
  UtteranceSpace result;
  for (int k = 0; k < space.size(); ++k) {
    for (double v : world.value_set) {
      if (filter == UtteranceFilter::kPositiveOnly && !(v > 0.0)) continue;
      result.utterances.push_back(Utterance{k, v});
    }
  }
  ValidateUtteranceSpace(result, world);
  return result;
}

void ValidateUtteranceSpace(const UtteranceSpace& space, const World& world) {
  if (space.utterances.empty()) {
    throw ConfigError("utterances: space is empty");
  }
  std::set<std::pair<int, double>> seen;
  for (const Utterance& u : space.utterances) {
    if (u.feature < 0 || u.feature >= world.size()) {
      throw InvalidUtteranceError("utterance: feature index out of range");
    }
    if (std::find(world.value_set.begin(), world.value_set.end(), u.value) ==
        world.value_set.end()) {
      throw InvalidUtteranceError(
          "utterance: value is not in the value set");
    }
    if (!seen.insert({u.feature, u.value}).second) {
      throw ConfigError("utterances: duplicate (feature, value) pair");
    }
  }
}

std::string_view SpeakerModelName(SpeakerModel model) {
  switch (model) {
    case SpeakerModel::kBelief:
      return "belief";
    case SpeakerModel::kAction:
      return "action";
    case SpeakerModel::kCombined:
      return "combined";
    case SpeakerModel::kGeneralized:
      return "generalized";
  }
  return "unknown";
}

double BeliefUtility(const Utterance& u, const World& world) {
  if (!IsTrue(u, world)) return kNegInf;
  const double k = static_cast<double>(world.size());
  const double n = static_cast<double>(world.value_set.size());
  return -(k - 1.0) * std::log(n);
}

int SelectTargetActionIndex(const ActionContext& context, const World& world) {
  if (context.size() == 0) {
    throw ConfigError("context: needs at least one action");
  }
  int best = 0;
  double best_reward = ActionReward(context.actions[0], world);
  for (int i = 1; i < context.size(); ++i) {
    const double reward = ActionReward(context.actions[i], world);
    if (reward > best_reward) {
      best = i;
      best_reward = reward;
    }
  }
  return best;
}

std::vector<int> OptimalActionSet(const ActionContext& context,
                                  const World& world) {
  if (context.size() == 0) {
    throw ConfigError("context: needs at least one action");
  }
  std::vector<double> rewards(context.size());
  double max_reward = kNegInf;
  for (int i = 0; i < context.size(); ++i) {
    rewards[i] = ActionReward(context.actions[i], world);
    max_reward = std::max(max_reward, rewards[i]);
  }
  const std::int64_t top = TieKey(max_reward);
  std::vector<int> optimal;
  for (int i = 0; i < context.size(); ++i) {
    if (TieKey(rewards[i]) == top) optimal.push_back(i);
  }
  return optimal;
}

double OptimalPolicyMass(const Utterance& u, const ActionContext& context,
                         const World& world, const ModelParams& params) {
  const Belief posterior = LiteralUpdate(Belief::AllPrior(world), u);
  const std::vector<double> policy =
      ListenerPolicy(posterior, context, params.beta_listener);
  double mass = 0.0;
  for (int i : OptimalActionSet(context, world)) mass += policy[i];
  return mass;
}

double ActionUtility(const Utterance& u, const ActionContext& context,
                     const World& world, const ModelParams& params) {
  return std::log(OptimalPolicyMass(u, context, world, params));
}

double CombinedUtilityOfBelief(const Belief& belief,
                               const ActionContext& context,
                               const World& world, const ModelParams& params) {
  const std::vector<double> policy =
      ListenerPolicy(belief, context, params.beta_listener);
  double expected = 0.0;
  for (int i = 0; i < context.size(); ++i) {
    expected += policy[i] * ActionReward(context.actions[i], world);
  }
  return expected;
}

double CombinedUtility(const Utterance& u, const ActionContext& context,
                       const World& world, const ModelParams& params) {
  return CombinedUtilityOfBelief(LiteralUpdate(Belief::AllPrior(world), u),
                                 context, world, params);
}

double GeneralizedUtility(const Utterance& u, const ActionContext& context,
                          const World& world, const ModelParams& params,
                          Beta reward_beta) {
  std::vector<double> rewards(context.size());
  for (int i = 0; i < context.size(); ++i) {
    rewards[i] = ActionReward(context.actions[i], world);
  }
  const std::vector<double> target = Softmax(rewards, reward_beta);
  const Belief posterior = LiteralUpdate(Belief::AllPrior(world), u);
  const std::vector<double> policy =
      ListenerPolicy(posterior, context, params.beta_listener);
  double utility = 0.0;
  for (int i = 0; i < context.size(); ++i) {
    if (target[i] == 0.0) continue;  // 0 * log 0 := 0
    utility += target[i] * std::log(policy[i]);
  }
  return utility;
}

std::vector<double> SpeakerUtilities(const SpeakerKind& kind,
                                     const ActionContext& context,
                                     const World& world,
                                     const UtteranceSpace& space,
                                     const ModelParams& params) {
  std::vector<double> utilities(space.size());
  for (int i = 0; i < space.size(); ++i) {
    const Utterance& u = space.utterances[i];
    switch (kind.model) {
      case SpeakerModel::kBelief:
        utilities[i] = BeliefUtility(u, world);
        break;
      case SpeakerModel::kAction:
        utilities[i] = ActionUtility(u, context, world, params);
        break;
      case SpeakerModel::kCombined:
        utilities[i] = CombinedUtility(u, context, world, params);
        break;
      case SpeakerModel::kGeneralized:
        utilities[i] =
            GeneralizedUtility(u, context, world, params, kind.reward_beta);
        break;
    }
  }
  return utilities;
}

Beta ProductionBeta(const SpeakerKind& kind, const ModelParams& params) {
  switch (kind.model) {
    case SpeakerModel::kBelief:
      return params.beta_belief;
    case SpeakerModel::kAction:
    case SpeakerModel::kGeneralized:
      return params.beta_action;
    case SpeakerModel::kCombined:
      return params.beta_combined;
  }
  return params.beta_belief;
}

std::vector<double> SpeakerDistribution(const SpeakerKind& kind,
                                        const ActionContext& context,
                                        const World& world,
                                        const UtteranceSpace& space,
                                        const ModelParams& params) {
  const std::vector<double> utilities =
      SpeakerUtilities(kind, context, world, space, params);
  return Softmax(utilities, ProductionBeta(kind, params));
}

}  // namespace sigbandits
