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

#ifndef SIGBANDITS_CORE_H_
#define SIGBANDITS_CORE_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Core model for signaling-bandit games. A world assigns a scalar weight
// to every feature; actions are feature bundles whose reward is the sum
// of their feature weights; utterances assert the weight of one feature.
// The listener starts from independent uniform priors over each weight,
// pins features named by utterances, and acts by softmax over posterior
// expected rewards.

namespace sigbandits {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// An inconsistent world, feature space, context, or parameter set. The
// message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An utterance that refers to a feature outside the space or asserts a
// value outside the admissible value set.
class InvalidUtteranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every candidate in a choice distribution has utility -inf.
class EmptySupportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Softmax optimality parameter: either a finite nonnegative temperature
// or the distinguished infinite value meaning strict maximization.
class Beta {
 public:
  constexpr Beta() = default;
  static constexpr Beta Finite(double value) { return Beta(value); }
  static constexpr Beta Infinite() {
    return Beta(std::numeric_limits<double>::infinity());
  }
  constexpr bool is_infinite() const {
    return value_ == std::numeric_limits<double>::infinity();
  }
  constexpr double value() const { return value_; }

 private:
  explicit constexpr Beta(double value) : value_(value) {}
  double value_ = 0.0;
};

// Ordered feature universe. Each feature belongs to exactly one named
// dimension (e.g. colors and shapes); dimension grouping is what makes
// "one feature per dimension" actions well formed.
struct FeatureSpace {
  struct Feature {
    std::string name;
    int dimension = 0;  // index into `dimensions`
  };

  std::vector<std::string> dimensions;
  std::vector<Feature> features;

  int size() const { return static_cast<int>(features.size()); }
  // Index of the named feature, or -1 when absent.
  int FeatureIndex(std::string_view name) const;
  void Validate() const;
};

// Ground truth: one weight per feature plus the admissible value set
// shared by utterances and listener priors.
struct World {
  std::vector<double> weights;
  std::vector<double> value_set;

  int size() const { return static_cast<int>(weights.size()); }
  // Checks weight membership in the value set and that the value set is
  // non-empty, duplicate-free, and zero-mean (|mean| <= 1e-12), which
  // keeps "no information" equivalent to "expected weight zero".
  void Validate() const;
};

// A bandit arm: the subset of features it instantiates.
struct Action {
  std::vector<int> indicator;  // one 0/1 entry per feature
  std::string label;
};

// Builds an action from feature names; the label joins them with spaces.
Action MakeAction(const FeatureSpace& space,
                  const std::vector<std::string>& feature_names);

// The action set a listener currently chooses from.
struct ActionContext {
  std::vector<Action> actions;

  int size() const { return static_cast<int>(actions.size()); }
};

// Game-level context invariants: at least two actions, pairwise distinct
// indicator vectors, every indicator sized to the space, and exactly one
// feature per declared dimension.
void ValidateContext(const ActionContext& context, const FeatureSpace& space);

// "Feature f has weight v."
struct Utterance {
  int feature = 0;
  double value = 0.0;
};

// Listener belief state: each feature's weight is either pinned to a
// known value or still at the uniform prior over the value set.
struct Belief {
  std::vector<std::optional<double>> slots;  // nullopt = uniform prior
  std::vector<double> value_set;

  static Belief AllPrior(const World& world);
  int size() const { return static_cast<int>(slots.size()); }
};

// Softmax temperatures for the listener and the speaker models.
struct ModelParams {
  double beta_listener = 3.0;
  Beta beta_belief = Beta::Finite(3.0);
  Beta beta_action = Beta::Finite(3.0);
  Beta beta_combined = Beta::Finite(2.0);
  Beta beta_reward = Beta::Finite(1.0);  // reward softmax, generalized model

  void Validate() const;
};

// Dot product of the world's weights with the action's indicator.
// Throws ConfigError on a dimension mismatch.
double ActionReward(const Action& action, const World& world);

// Meaning function: the asserted value equals the true weight exactly.
bool IsTrue(const Utterance& u, const World& world);

// Literal semantics: pins the named feature to the transmitted value.
// Other slots keep their state; repeated updates on a feature overwrite.
Belief LiteralUpdate(const Belief& prior, const Utterance& u);

// Known(v) -> v; prior -> mean of the value set.
double ExpectedFeatureValue(const Belief& belief, int feature);

// Posterior expected reward of an action: sum of expected feature values
// over the action's features. Exact under independent priors because
// reward is linear in the weights.
double ListenerExpectedReward(const Belief& belief, const Action& action);

// Listener choice policy: softmax with weight beta_listener over the
// posterior expected rewards of the context's actions.
std::vector<double> ListenerPolicy(const Belief& belief,
                                   const ActionContext& context,
                                   double beta_listener);

// p_i = exp(beta * v_i) / sum_j exp(beta * v_j), computed with max
// subtraction. Entries of -inf get zero mass. At beta = Infinite the
// mass is uniform over the argmax set (ties detected after rounding
// utilities to 1e-9; see TieKey). The normalizer adds its terms in
// ascending order, so the result is invariant under permutation of the
// input. Throws EmptySupportError when every entry is -inf.
std::vector<double> Softmax(std::span<const double> values, Beta beta);

// Comparison key for argmax ties at beta = Infinite.
std::int64_t TieKey(double utility);

}  // namespace sigbandits

#endif  // SIGBANDITS_CORE_H_
