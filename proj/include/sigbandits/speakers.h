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

#ifndef SIGBANDITS_SPEAKERS_H_
#define SIGBANDITS_SPEAKERS_H_

#include <string_view>
#include <vector>

#include "sigbandits/core.h"

// Rational speaker models over the literal listener. All three speakers
// choose utterances by softmax over a per-utterance utility:
//   Belief:   accuracy of the listener's posterior about the world.
//   Action:   log listener-policy mass on the objectively best action(s)
//             in the current context.
//   Combined: expected true reward of the listener's induced policy.
// A Generalized model interpolates between Action and Combined through a
// reward-softmax target distribution.

namespace sigbandits {

// The utterances a speaker may choose from.
struct UtteranceSpace {
  std::vector<Utterance> utterances;

  int size() const { return static_cast<int>(utterances.size()); }
};

enum class UtteranceFilter {
  kAll,           // every (feature, value) pair
  kPositiveOnly,  // only strictly positive values
};

// Feature-major grid over the world's value set: for each feature in
// space order, one utterance per admissible value in value-set order.
UtteranceSpace BuildUtteranceSpace(const FeatureSpace& space,
                                   const World& world, UtteranceFilter filter);

// Non-empty, duplicate-free, features in range, values in the value set.
void ValidateUtteranceSpace(const UtteranceSpace& space, const World& world);

enum class SpeakerModel { kBelief, kAction, kCombined, kGeneralized };

// Stable lowercase name used in output tables.
std::string_view SpeakerModelName(SpeakerModel model);

struct SpeakerKind {
  SpeakerModel model = SpeakerModel::kBelief;
  Beta reward_beta = Beta::Finite(1.0);  // used by kGeneralized only

  static SpeakerKind Belief() { return {SpeakerModel::kBelief, {}}; }
  static SpeakerKind Action() { return {SpeakerModel::kAction, {}}; }
  static SpeakerKind Combined() { return {SpeakerModel::kCombined, {}}; }
  static SpeakerKind Generalized(Beta reward_beta) {
    return {SpeakerModel::kGeneralized, reward_beta};
  }
};

// log of the listener's posterior probability of the true world after a
// literal update: -(K-1) * log |valueSet| for a true utterance (one slot
// pinned, K-1 still uniform), -inf for a false one.
double BeliefUtility(const Utterance& u, const World& world);

// Position of the highest-true-reward action in the context; reward ties
// resolve to the lowest position.
int SelectTargetActionIndex(const ActionContext& context, const World& world);

// Every position whose true reward ties the maximum (after rounding to
// 1e-9), in ascending order.
std::vector<int> OptimalActionSet(const ActionContext& context,
                                  const World& world);

// Listener-policy mass on the optimal-action set after hearing u from an
// all-prior belief. Strictly positive in exact arithmetic for finite
// listener beta; may underflow to zero for extreme reward scales.
double OptimalPolicyMass(const Utterance& u, const ActionContext& context,
                         const World& world, const ModelParams& params);

// log OptimalPolicyMass. With a unique optimum this is the log policy
// probability of the target action; tied optima pool their mass, which
// keeps the utility invariant under reordering of the context.
double ActionUtility(const Utterance& u, const ActionContext& context,
                     const World& world, const ModelParams& params);

// Expected true reward of the listener's policy induced by u:
// sum_a pi_L(a | u, A) * R(a, w).
double CombinedUtility(const Utterance& u, const ActionContext& context,
                       const World& world, const ModelParams& params);

// Same expectation from an explicit belief state; CombinedUtility is
// this applied to the literal update of the all-prior belief.
double CombinedUtilityOfBelief(const Belief& belief,
                               const ActionContext& context,
                               const World& world, const ModelParams& params);

// sum_a t(a) * log pi_L(a | u, A) where t is a softmax over true action
// rewards with weight reward_beta. Recovers ActionUtility as reward_beta
// -> Infinite when the reward argmax is unique, and the uniform average
// of log policies at reward_beta = 0. Terms with t(a) = 0 are skipped,
// so underflowed policies only matter where the target puts mass.
double GeneralizedUtility(const Utterance& u, const ActionContext& context,
                          const World& world, const ModelParams& params,
                          Beta reward_beta);

// Per-utterance utilities for the given speaker, in utterance-space
// order.
std::vector<double> SpeakerUtilities(const SpeakerKind& kind,
                                     const ActionContext& context,
                                     const World& world,
                                     const UtteranceSpace& space,
                                     const ModelParams& params);

// The softmax weight a speaker produces with: beta_belief, beta_action,
// or beta_combined. The generalized model produces with beta_action,
// whose behavior it extends.
Beta ProductionBeta(const SpeakerKind& kind, const ModelParams& params);

// P_S(u | w, A): softmax with ProductionBeta over SpeakerUtilities.
// Throws EmptySupportError when every utterance has utility -inf.
std::vector<double> SpeakerDistribution(const SpeakerKind& kind,
                                        const ActionContext& context,
                                        const World& world,
                                        const UtteranceSpace& space,
                                        const ModelParams& params);

}  // namespace sigbandits

#endif  // SIGBANDITS_SPEAKERS_H_
