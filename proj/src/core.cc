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

#include "sigbandits/core.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace sigbandits {

namespace {

std::string Quoted(std::string_view s) { return "'" + std::string(s) + "'"; }

bool Contains(const std::vector<double>& values, double v) {
  return std::find(values.begin(), values.end(), v) != values.end();
}

}  // namespace

int FeatureSpace::FeatureIndex(std::string_view name) const {
  for (int k = 0; k < size(); ++k) {
    if (features[k].name == name) return k;
  }
  return -1;
}

void FeatureSpace::Validate() const {
  if (dimensions.empty()) {
    throw ConfigError("featureSpace.dimensions: must be non-empty");
  }
  if (features.empty()) {
    throw ConfigError("featureSpace.features: must be non-empty");
  }
  std::set<std::string> dim_names(dimensions.begin(), dimensions.end());
  if (dim_names.size() != dimensions.size()) {
    throw ConfigError("featureSpace.dimensions: names must be unique");
  }
  std::set<std::string> feature_names;
  for (const Feature& f : features) {
    if (!feature_names.insert(f.name).second) {
      throw ConfigError("featureSpace.features: duplicate feature " +
                        Quoted(f.name));
    }
    if (f.dimension < 0 || f.dimension >= static_cast<int>(dimensions.size())) {
      throw ConfigError("featureSpace.features: feature " + Quoted(f.name) +
                        " names an undeclared dimension");
    }
  }
}

void World::Validate() const {
  if (weights.empty()) {
    throw ConfigError("weights: must be non-empty");
  }
  if (value_set.empty()) {
    throw ConfigError("valueSet: must be non-empty");
  }
  std::set<double> distinct(value_set.begin(), value_set.end());
  if (distinct.size() != value_set.size()) {
    throw ConfigError("valueSet: entries must be distinct");
  }
  double sum = 0.0;
  for (double v : value_set) sum += v;
  const double mean = sum / static_cast<double>(value_set.size());
  if (std::abs(mean) > 1e-12) {
    std::ostringstream os;
    os << "valueSet: mean must be zero, got " << mean;
    throw ConfigError(os.str());
  }
  for (int k = 0; k < size(); ++k) {
    if (!Contains(value_set, weights[k])) {
      std::ostringstream os;
      os << "weights: entry " << k << " (" << weights[k]
         << ") is not in valueSet";
      throw ConfigError(os.str());
    }
  }
}

Action MakeAction(const FeatureSpace& space,
                  const std::vector<std::string>& feature_names) {
  Action action;
  action.indicator.assign(space.size(), 0);
  for (const std::string& name : feature_names) {
    const int k = space.FeatureIndex(name);
    if (k < 0) {
      throw ConfigError("action: unknown feature " + Quoted(name));
    }
    action.indicator[k] = 1;
    if (!action.label.empty()) action.label += ' ';
    action.label += name;
  }
  return action;
}

void ValidateContext(const ActionContext& context, const FeatureSpace& space) {
  if (context.size() < 2) {
    throw ConfigError("context: needs at least two actions");
  }
  std::set<std::vector<int>> seen;
  for (const Action& action : context.actions) {
    if (static_cast<int>(action.indicator.size()) != space.size()) {
      throw ConfigError("context: action " + Quoted(action.label) +
                        " does not match the feature space size");
    }
    std::vector<int> per_dimension(space.dimensions.size(), 0);
    for (int k = 0; k < space.size(); ++k) {
      if (action.indicator[k] != 0 && action.indicator[k] != 1) {
        throw ConfigError("context: action " + Quoted(action.label) +
                          " has a non-binary indicator entry");
      }
      if (action.indicator[k] == 1) {
        ++per_dimension[space.features[k].dimension];
      }
    }
    for (size_t d = 0; d < per_dimension.size(); ++d) {
      if (per_dimension[d] != 1) {
        throw ConfigError("context: action " + Quoted(action.label) +
                          " must set exactly one feature in dimension " +
                          Quoted(space.dimensions[d]));
      }
    }
    if (!seen.insert(action.indicator).second) {
      throw ConfigError("context: duplicate action " + Quoted(action.label));
    }
  }
}

Belief Belief::AllPrior(const World& world) {
  Belief belief;
  belief.slots.assign(world.weights.size(), std::nullopt);
  belief.value_set = world.value_set;
  return belief;
}

void ModelParams::Validate() const {
  if (!(beta_listener >= 0.0) || std::isinf(beta_listener)) {
    throw ConfigError("betas.listener: must be finite and >= 0");
  }
  const auto check = [](Beta beta, const char* field) {
    if (!beta.is_infinite() && !(beta.value() >= 0.0)) {
      throw ConfigError(std::string("betas.") + field +
                        ": must be >= 0 or infinite");
    }
  };
  check(beta_belief, "belief");
  check(beta_action, "action");
  check(beta_combined, "combined");
  check(beta_reward, "rewardSoftmax");
}

double ActionReward(const Action& action, const World& world) {
  if (action.indicator.size() != world.weights.size()) {
    throw ConfigError("action " + Quoted(action.label) +
                      ": indicator size does not match the world");
  }
  double reward = 0.0;
  for (size_t k = 0; k < world.weights.size(); ++k) {
    if (action.indicator[k]) reward += world.weights[k];
  }
  return reward;
}

bool IsTrue(const Utterance& u, const World& world) {
  if (u.feature < 0 || u.feature >= world.size()) {
    throw InvalidUtteranceError("utterance: feature index out of range");
  }
  return world.weights[u.feature] == u.value;
}

Belief LiteralUpdate(const Belief& prior, const Utterance& u) {
  if (u.feature < 0 || u.feature >= prior.size()) {
    throw InvalidUtteranceError("utterance: feature index out of range");
  }
  if (!Contains(prior.value_set, u.value)) {
    std::ostringstream os;
    os << "utterance: value " << u.value << " is not in the value set";
    throw InvalidUtteranceError(os.str());
  }
  Belief posterior = prior;
  posterior.slots[u.feature] = u.value;
  return posterior;
}

double ExpectedFeatureValue(const Belief& belief, int feature) {
  if (feature < 0 || feature >= belief.size()) {
    throw ConfigError("belief: feature index out of range");
  }
  if (belief.slots[feature].has_value()) {
    return *belief.slots[feature];
  }
  double sum = 0.0;
  for (double v : belief.value_set) sum += v;
  return sum / static_cast<double>(belief.value_set.size());
}

double ListenerExpectedReward(const Belief& belief, const Action& action) {
  if (action.indicator.size() != belief.slots.size()) {
    throw ConfigError("action " + Quoted(action.label) +
                      ": indicator size does not match the belief");
  }
  double reward = 0.0;
  for (int k = 0; k < belief.size(); ++k) {
    if (action.indicator[k]) reward += ExpectedFeatureValue(belief, k);
  }
  return reward;
}

std::vector<double> ListenerPolicy(const Belief& belief,
                                   const ActionContext& context,
                                   double beta_listener) {
  if (!(beta_listener >= 0.0) || std::isinf(beta_listener)) {
    throw ConfigError("betas.listener: must be finite and >= 0");
  }
  std::vector<double> rewards(context.size());
  for (int i = 0; i < context.size(); ++i) {
    rewards[i] = ListenerExpectedReward(belief, context.actions[i]);
  }
  return Softmax(rewards, Beta::Finite(beta_listener));
}

std::int64_t TieKey(double utility) { return std::llround(utility * 1e9); }

std::vector<double> Softmax(std::span<const double> values, Beta beta) {
  if (values.empty()) {
    throw EmptySupportError("softmax: no candidates");
  }
  double max_value = kNegInf;
  for (double v : values) max_value = std::max(max_value, v);
  if (max_value == kNegInf) {
    throw EmptySupportError("softmax: every candidate has utility -inf");
  }

  std::vector<double> probs(values.size(), 0.0);
  if (beta.is_infinite()) {
    const std::int64_t top = TieKey(max_value);
    int ties = 0;
    for (double v : values) {
      if (v != kNegInf && TieKey(v) == top) ++ties;
    }
    const double share = 1.0 / static_cast<double>(ties);
    for (size_t i = 0; i < values.size(); ++i) {
      if (values[i] != kNegInf && TieKey(values[i]) == top) probs[i] = share;
    }
    return probs;
  }

  std::vector<double> terms;
  terms.reserve(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] == kNegInf) continue;
    probs[i] = std::exp(beta.value() * (values[i] - max_value));
    terms.push_back(probs[i]);
  }
  // Summing in ascending order makes the normalizer independent of the
  // order the candidates were listed in.
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  for (double& p : probs) p /= total;
  return probs;
}

}  // namespace sigbandits
