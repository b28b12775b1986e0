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

#ifndef SIGBANDITS_TESTS_TEST_WORLDS_H_
#define SIGBANDITS_TESTS_TEST_WORLDS_H_

#include <string>
#include <vector>

#include "sigbandits/experiments.h"

// Shared game setups for the test suite.
//
// The "bandit" setup: 3 colors x 3 shapes, weights
//   red=0, blue=-2, green=2, circle=1, square=-1, triangle=0
// over the value set {-2,-1,0,1,2}; 9 cross-product actions; contexts of
// size 3 (84 of them); all 30 utterances allowed.
//
// The "lewis" setup: 2 colors x 2 shapes, weights
//   green=100, blue=-100, circle=100, square=-100
// over {-100,0,100}; fixed context {green circle, green square,
// blue circle}; positive utterances only.

namespace sigbandits {

inline FeatureSpace BanditSpace() {
  FeatureSpace space;
  space.dimensions = {"color", "shape"};
  space.features = {{"red", 0},    {"blue", 0},   {"green", 0},
                    {"circle", 1}, {"square", 1}, {"triangle", 1}};
  return space;
}

inline World BanditWorld() {
  World world;
  world.weights = {0.0, -2.0, 2.0, 1.0, -1.0, 0.0};
  world.value_set = {-2.0, -1.0, 0.0, 1.0, 2.0};
  return world;
}

inline ExperimentConfig BanditConfig() {
  ExperimentConfig config;
  config.feature_space = BanditSpace();
  config.world = BanditWorld();
  config.context_size = 3;
  return config;  // default ModelParams are the shipped betas
}

inline FeatureSpace LewisSpace() {
  FeatureSpace space;
  space.dimensions = {"color", "shape"};
  space.features = {{"green", 0}, {"blue", 0}, {"circle", 1}, {"square", 1}};
  return space;
}

inline ExperimentConfig LewisConfig() {
  ExperimentConfig config;
  config.feature_space = LewisSpace();
  config.world.weights = {100.0, -100.0, 100.0, -100.0};
  config.world.value_set = {-100.0, 0.0, 100.0};
  config.utterance_filter = UtteranceFilter::kPositiveOnly;
  ActionContext context;
  context.actions = {MakeAction(config.feature_space, {"green", "circle"}),
                     MakeAction(config.feature_space, {"green", "square"}),
                     MakeAction(config.feature_space, {"blue", "circle"})};
  config.reference_context = context;
  return config;
}

// The nine cross-product bandit actions, color varying slowest.
inline std::vector<Action> BanditActions() {
  return CrossProductActions(BanditSpace());
}

// Context used for the utterance-distribution spot checks: red circle,
// red triangle, blue square (positions 0, 2, 4 of the cross product).
inline ActionContext SpotContext() {
  const std::vector<Action> actions = BanditActions();
  ActionContext context;
  context.actions = {actions[0], actions[2], actions[4]};
  return context;
}

}  // namespace sigbandits

#endif  // SIGBANDITS_TESTS_TEST_WORLDS_H_
