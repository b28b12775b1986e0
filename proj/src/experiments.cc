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

#include "sigbandits/experiments.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "sigbandits/parallel.h"

namespace sigbandits {

namespace {

constexpr SpeakerModel kTableSpeakers[] = {
    SpeakerModel::kBelief, SpeakerModel::kAction, SpeakerModel::kCombined};

// Per-utterance listener quantities for one context. Built with the same
// per-utterance operations the metric functions use, so metrics computed
// from a table equal the direct computation bit for bit.
struct ContextTable {
  std::vector<double> action_util;
  std::vector<double> combined_util;
  std::vector<double> opt_mass;
};

ContextTable BuildContextTable(const ActionContext& context,
                               const World& world, const UtteranceSpace& space,
                               const ModelParams& params) {
  ContextTable table;
  table.action_util.resize(space.size());
  table.combined_util.resize(space.size());
  table.opt_mass.resize(space.size());
  for (int i = 0; i < space.size(); ++i) {
    const Utterance& u = space.utterances[i];
    const double mass = OptimalPolicyMass(u, context, world, params);
    table.opt_mass[i] = mass;
    table.action_util[i] = std::log(mass);
    table.combined_util[i] = CombinedUtility(u, context, world, params);
  }
  return table;
}

// Shared evaluation state for the context-sampling experiments.
struct Engine {
  UtteranceSpace space;
  std::vector<Action> actions;
  ContextDistribution contexts;
  std::vector<char> truth;          // per utterance
  std::vector<double> belief_util;  // per utterance, context independent
  std::vector<ContextTable> tables;
  std::vector<double> gen_reward;  // sum_c P(c) * combined_util[c][u]
};

Engine BuildEngine(const ExperimentConfig& config) {
  config.Validate();
  Engine engine;
  engine.space = BuildUtteranceSpace(config.feature_space, config.world,
                                     config.utterance_filter);
  engine.actions = config.action_space.empty()
                       ? CrossProductActions(config.feature_space)
                       : config.action_space;
  engine.contexts = EnumerateContexts(engine.actions, config.context_size);

  engine.truth.resize(engine.space.size());
  engine.belief_util.resize(engine.space.size());
  for (int i = 0; i < engine.space.size(); ++i) {
    engine.truth[i] = IsTrue(engine.space.utterances[i], config.world);
    engine.belief_util[i] =
        BeliefUtility(engine.space.utterances[i], config.world);
  }

  engine.tables.resize(engine.contexts.size());
  ParallelFor(engine.contexts.size(), config.jobs, [&](int c) {
    engine.tables[c] = BuildContextTable(engine.contexts.contexts[c],
                                         config.world, engine.space,
                                         config.params);
  });

  engine.gen_reward.assign(engine.space.size(), 0.0);
  for (int i = 0; i < engine.space.size(); ++i) {
    double inner = 0.0;
    for (int c = 0; c < engine.contexts.size(); ++c) {
      inner +=
          engine.contexts.probabilities[c] * engine.tables[c].combined_util[i];
    }
    engine.gen_reward[i] = inner;
  }
  return engine;
}

const std::vector<double>& UtilitiesFor(SpeakerModel model,
                                        const Engine& engine,
                                        const ContextTable& table) {
  switch (model) {
    case SpeakerModel::kBelief:
      return engine.belief_util;
    case SpeakerModel::kAction:
      return table.action_util;
    default:
      return table.combined_util;
  }
}

double DotTruth(const std::vector<double>& dist,
                const std::vector<char>& truth) {
  double total = 0.0;
  for (size_t i = 0; i < dist.size(); ++i) {
    if (truth[i]) total += dist[i];
  }
  return total;
}

double Dot(const std::vector<double>& dist, const std::vector<double>& v) {
  double total = 0.0;
  for (size_t i = 0; i < dist.size(); ++i) total += dist[i] * v[i];
  return total;
}

// RunLocalContexts and RunGlobalContext share everything but the context
// the speaker conditions on; rows carry the caller's experiment tag.
// Both average every metric over the enumerated contexts with the same
// accumulation loop, so a speaker whose distribution does not depend on
// the context (the Belief speaker) gets bit-identical rows from the two
// experiments.
ExperimentResult LocalRows(const ExperimentConfig& config,
                           const std::string& tag, bool with_heatmap) {
  const Engine engine = BuildEngine(config);
  const int n_contexts = engine.contexts.size();
  const double n = static_cast<double>(n_contexts);
  ExperimentResult result;
  for (SpeakerModel model : kTableSpeakers) {
    const Beta beta = ProductionBeta({model, {}}, config.params);
    double pt = 0.0, pi = 0.0, rl = 0.0, rg = 0.0;
    std::vector<double> heat(engine.space.size(), 0.0);
    for (int c = 0; c < n_contexts; ++c) {
      const ContextTable& table = engine.tables[c];
      const std::vector<double> dist =
          Softmax(UtilitiesFor(model, engine, table), beta);
      pt += DotTruth(dist, engine.truth);
      pi += Dot(dist, table.opt_mass);
      rl += Dot(dist, table.combined_util);
      rg += Dot(dist, engine.gen_reward);
      for (int i = 0; i < engine.space.size(); ++i) heat[i] += dist[i];
    }
    MetricsRow row;
    row.experiment = tag;
    row.speaker = std::string(SpeakerModelName(model));
    row.p_truthful = pt / n;
    row.pi_optimal = pi / n;
    row.r_local = rl / n;
    row.r_generalization = rg / n;
    result.rows.push_back(std::move(row));
    if (with_heatmap) {
      for (int i = 0; i < engine.space.size(); ++i) {
        const Utterance& u = engine.space.utterances[i];
        HeatmapCell cell;
        cell.speaker = std::string(SpeakerModelName(model));
        cell.feature = config.feature_space.features[u.feature].name;
        cell.value = u.value;
        cell.probability = heat[i] / n;
        cell.is_true = engine.truth[i] != 0;
        result.heatmap.push_back(std::move(cell));
      }
    }
  }
  return result;
}

ExperimentResult GlobalRows(const ExperimentConfig& config,
                            const std::string& tag) {
  const Engine engine = BuildEngine(config);
  const ActionContext global{engine.actions};
  const ContextTable global_table =
      BuildContextTable(global, config.world, engine.space, config.params);
  const int n_contexts = engine.contexts.size();
  const double n = static_cast<double>(n_contexts);
  ExperimentResult result;
  for (SpeakerModel model : kTableSpeakers) {
    const Beta beta = ProductionBeta({model, {}}, config.params);
    const std::vector<double> dist =
        Softmax(UtilitiesFor(model, engine, global_table), beta);
    double pt = 0.0, pi = 0.0, rg = 0.0;
    for (int c = 0; c < n_contexts; ++c) {
      pt += DotTruth(dist, engine.truth);
      pi += Dot(dist, engine.tables[c].opt_mass);
      rg += Dot(dist, engine.gen_reward);
    }
    MetricsRow row;
    row.experiment = tag;
    row.speaker = std::string(SpeakerModelName(model));
    row.p_truthful = pt / n;
    row.pi_optimal = pi / n;
    row.r_generalization = rg / n;
    result.rows.push_back(std::move(row));
  }
  return result;
}

void ValidateReferenceGame(const ExperimentConfig& config) {
  if (!config.reference_context.has_value()) {
    throw ConfigError("context: required for the reference game");
  }
  if (config.utterance_filter != UtteranceFilter::kPositiveOnly) {
    throw ConfigError(
        "utteranceFilter: reference game requires 'positive-only'");
  }
  const ActionContext& context = *config.reference_context;
  ValidateContext(context, config.feature_space);
  int positive = 0;
  double best = kNegInf;
  for (const Action& action : context.actions) {
    const double reward = ActionReward(action, config.world);
    best = std::max(best, reward);
    if (reward > 0.0) {
      ++positive;
    } else if (reward != 0.0) {
      throw ConfigError("context: reference-game distractors must have "
                        "exactly zero reward");
    }
  }
  if (positive != 1 || !(best > 0.0)) {
    throw ConfigError(
        "context: reference game needs a unique positive-reward target");
  }
}

}  // namespace

void ExperimentConfig::Validate() const {
  feature_space.Validate();
  if (world.size() != feature_space.size()) {
    throw ConfigError("weights: expected " +
                      std::to_string(feature_space.size()) +
                      " entries to match featureSpace, got " +
                      std::to_string(world.size()));
  }
  world.Validate();
  params.Validate();
  if (context_size < 1) {
    throw ConfigError("contextSize: must be >= 1");
  }
  if (jobs < 1) {
    throw ConfigError("jobs: must be >= 1");
  }
  if (!action_space.empty()) {
    ValidateContext(ActionContext{action_space}, feature_space);
  }
  if (reference_context.has_value()) {
    ValidateContext(*reference_context, feature_space);
  }
}

std::vector<Action> CrossProductActions(const FeatureSpace& space) {
  space.Validate();
  const int n_dims = static_cast<int>(space.dimensions.size());
  std::vector<std::vector<int>> by_dimension(n_dims);
  for (int k = 0; k < space.size(); ++k) {
    by_dimension[space.features[k].dimension].push_back(k);
  }
  for (int d = 0; d < n_dims; ++d) {
    if (by_dimension[d].empty()) {
      throw ConfigError("featureSpace: dimension '" + space.dimensions[d] +
                        "' has no features");
    }
  }
  std::vector<Action> actions;
  std::vector<int> pick(n_dims, 0);
  while (true) {
    std::vector<std::string> names;
    names.reserve(n_dims);
    for (int d = 0; d < n_dims; ++d) {
      names.push_back(space.features[by_dimension[d][pick[d]]].name);
    }
    actions.push_back(MakeAction(space, names));
    int d = n_dims - 1;
    while (d >= 0 &&
           pick[d] + 1 == static_cast<int>(by_dimension[d].size())) {
      pick[d] = 0;
      --d;
    }
    if (d < 0) break;
    ++pick[d];
  }
  return actions;
}

ExperimentResult RunReferenceGame(const ExperimentConfig& config) {
  config.Validate();
  ValidateReferenceGame(config);
  const UtteranceSpace space = BuildUtteranceSpace(
      config.feature_space, config.world, config.utterance_filter);
  const ActionContext& context = *config.reference_context;
  ExperimentResult result;
  for (SpeakerModel model : kTableSpeakers) {
    const std::vector<double> dist = SpeakerDistribution(
        {model, {}}, context, config.world, space, config.params);
    MetricsRow row;
    row.experiment = "sim1";
    row.speaker = std::string(SpeakerModelName(model));
    row.p_truthful = PTruthful(dist, space, config.world);
    row.pi_optimal =
        PiOptimal(dist, space, context, config.world, config.params);
    row.r_local = RLocal(dist, space, context, config.world, config.params);
    result.rows.push_back(std::move(row));
  }
  return result;
}

ExperimentResult RunLocalContexts(const ExperimentConfig& config) {
  return LocalRows(config, "sim2", /*with_heatmap=*/true);
}

ExperimentResult RunGlobalContext(const ExperimentConfig& config) {
  return GlobalRows(config, "sim3");
}

ExperimentResult RunOptimalitySweep(const ExperimentConfig& config) {
  ExperimentConfig strict = config;
  strict.params.beta_belief = Beta::Infinite();
  strict.params.beta_action = Beta::Infinite();
  strict.params.beta_combined = Beta::Infinite();
  ExperimentResult result = LocalRows(strict, "sweep-local",
                                      /*with_heatmap=*/false);
  ExperimentResult global = GlobalRows(strict, "sweep-global");
  for (MetricsRow& row : global.rows) result.rows.push_back(std::move(row));
  return result;
}

namespace {

// (max_deviation, weights, value set) with exact tie order.
bool CandidateBefore(const CalibrationCandidate& a,
                     const CalibrationCandidate& b) {
  if (a.max_deviation != b.max_deviation) {
    return a.max_deviation < b.max_deviation;
  }
  if (a.world.weights != b.world.weights) {
    return a.world.weights < b.world.weights;
  }
  return a.world.value_set < b.world.value_set;
}

double TargetDeviation(const MetricsRow& row, const SpeakerTargets& targets) {
  double dev = std::abs(row.p_truthful - targets.p_truthful);
  dev = std::max(dev, std::abs(row.pi_optimal - targets.pi_optimal));
  dev = std::max(dev, std::abs(row.r_local.value() - targets.r_local));
  dev = std::max(dev, std::abs(row.r_generalization.value() -
                               targets.r_generalization));
  return dev;
}

}  // namespace

CalibrationOutcome CalibrateWorld(const CalibrationTargets& targets,
                                  const CalibrationSearchSpec& spec) {
  spec.feature_space.Validate();
  spec.params.Validate();
  const int n_features = spec.feature_space.size();

  std::vector<int> free_features;
  std::vector<double> base_weights(n_features, 0.0);
  std::vector<char> is_fixed(n_features, 0);
  for (const auto& [name, value] : spec.fixed_weights) {
    const int k = spec.feature_space.FeatureIndex(name);
    if (k < 0) {
      throw ConfigError("search.fixedWeights: unknown feature '" + name + "'");
    }
    base_weights[k] = value;
    is_fixed[k] = 1;
  }
  for (int k = 0; k < n_features; ++k) {
    if (!is_fixed[k]) free_features.push_back(k);
  }

  // Integer grid over each free weight.
  std::vector<double> grid;
  for (double w = std::ceil(spec.weight_min); w <= spec.weight_max; w += 1.0) {
    grid.push_back(w);
  }

  CalibrationOutcome outcome;
  std::vector<World> evaluated;
  for (const std::vector<double>& value_set : spec.value_sets) {
    std::vector<size_t> pick(free_features.size(), 0);
    bool more = !grid.empty() || free_features.empty();
    while (more) {
      ++outcome.candidates_considered;
      World world;
      world.weights = base_weights;
      for (size_t j = 0; j < free_features.size(); ++j) {
        world.weights[free_features[j]] = grid[pick[j]];
      }
      world.value_set = value_set;
      bool admissible = true;
      for (double w : world.weights) {
        if (std::find(value_set.begin(), value_set.end(), w) ==
            value_set.end()) {
          admissible = false;
          break;
        }
      }
      if (admissible) evaluated.push_back(std::move(world));

      if (free_features.empty()) break;
      int j = static_cast<int>(free_features.size()) - 1;
      while (j >= 0 && pick[j] + 1 == grid.size()) {
        pick[j] = 0;
        --j;
      }
      if (j < 0) break;
      ++pick[j];
    }
  }
  outcome.candidates_evaluated = static_cast<std::int64_t>(evaluated.size());

  std::vector<CalibrationCandidate> candidates(evaluated.size());
  ParallelFor(static_cast<int>(evaluated.size()), spec.jobs, [&](int i) {
    ExperimentConfig config;
    config.feature_space = spec.feature_space;
    config.world = evaluated[i];
    config.params = spec.params;
    config.context_size = spec.context_size;
    const ExperimentResult result =
        LocalRows(config, "calibration", /*with_heatmap=*/false);
    CalibrationCandidate& candidate = candidates[i];
    candidate.world = evaluated[i];
    candidate.rows = result.rows;
    candidate.max_deviation = std::max(
        {TargetDeviation(result.rows[0], targets.belief),
         TargetDeviation(result.rows[1], targets.action),
         TargetDeviation(result.rows[2], targets.combined)});
  });

  for (const CalibrationCandidate& candidate : candidates) {
    if (candidate.max_deviation <= spec.tolerance) {
      outcome.matches.push_back(candidate);
    }
    if (!outcome.best.has_value() ||
        CandidateBefore(candidate, *outcome.best)) {
      outcome.best = candidate;
    }
  }
  std::sort(outcome.matches.begin(), outcome.matches.end(), CandidateBefore);
  return outcome;
}

}  // namespace sigbandits
