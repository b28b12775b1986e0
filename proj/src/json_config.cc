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

#include "sigbandits/json_config.h"

#include <fstream>
#include <string>
#include <vector>

namespace sigbandits {

namespace {

using nlohmann::json;

std::string Join(const std::string& path, const std::string& field) {
  return path.empty() ? field : path + "." + field;
}

const json& Require(const json& j, const std::string& field,
                    const std::string& path) {
  const auto it = j.find(field);
  if (it == j.end()) {
    throw ConfigError(Join(path, field) + ": missing required field");
  }
  return *it;
}

double NumberAt(const json& j, const std::string& path) {
  if (!j.is_number()) {
    throw ConfigError(path + ": expected a number");
  }
  return j.get<double>();
}

int IntAt(const json& j, const std::string& path) {
  if (!j.is_number_integer()) {
    throw ConfigError(path + ": expected an integer");
  }
  return j.get<int>();
}

std::string StringAt(const json& j, const std::string& path) {
  if (!j.is_string()) {
    throw ConfigError(path + ": expected a string");
  }
  return j.get<std::string>();
}

std::vector<double> NumberArrayAt(const json& j, const std::string& path) {
  if (!j.is_array()) {
    throw ConfigError(path + ": expected an array of numbers");
  }
  std::vector<double> values;
  values.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    values.push_back(NumberAt(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return values;
}

Beta BetaAt(const json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return Beta::Infinite();
    throw ConfigError(path + ": expected a number or \"inf\", got '" + s +
                      "'");
  }
  return Beta::Finite(NumberAt(j, path));
}

FeatureSpace ParseFeatureSpace(const json& j, const std::string& path) {
  if (!j.is_object()) {
    throw ConfigError(path + ": expected an object");
  }
  const json& dims = Require(j, "dimensions", path);
  if (!dims.is_array() || dims.empty()) {
    throw ConfigError(path + ".dimensions: expected a non-empty array");
  }
  FeatureSpace space;
  for (size_t d = 0; d < dims.size(); ++d) {
    const std::string dim_path =
        path + ".dimensions[" + std::to_string(d) + "]";
    const json& dim = dims[d];
    if (!dim.is_object()) {
      throw ConfigError(dim_path + ": expected an object");
    }
    space.dimensions.push_back(StringAt(Require(dim, "name", dim_path),
                                        dim_path + ".name"));
    const json& features = Require(dim, "features", dim_path);
    if (!features.is_array() || features.empty()) {
      throw ConfigError(dim_path + ".features: expected a non-empty array");
    }
    for (size_t f = 0; f < features.size(); ++f) {
      space.features.push_back(FeatureSpace::Feature{
          StringAt(features[f],
                   dim_path + ".features[" + std::to_string(f) + "]"),
          static_cast<int>(d)});
    }
  }
  space.Validate();
  return space;
}

ModelParams ParseBetas(const json& j) {
  ModelParams params;  // defaults
  if (!j.contains("betas")) return params;
  const json& betas = j.at("betas");
  if (!betas.is_object()) {
    throw ConfigError("betas: expected an object");
  }
  if (betas.contains("listener")) {
    const Beta b = BetaAt(betas.at("listener"), "betas.listener");
    if (b.is_infinite()) {
      throw ConfigError("betas.listener: must be finite");
    }
    params.beta_listener = b.value();
  }
  if (betas.contains("belief")) {
    params.beta_belief = BetaAt(betas.at("belief"), "betas.belief");
  }
  if (betas.contains("action")) {
    params.beta_action = BetaAt(betas.at("action"), "betas.action");
  }
  if (betas.contains("combined")) {
    params.beta_combined = BetaAt(betas.at("combined"), "betas.combined");
  }
  if (betas.contains("rewardSoftmax")) {
    params.beta_reward =
        BetaAt(betas.at("rewardSoftmax"), "betas.rewardSoftmax");
  }
  params.Validate();
  return params;
}

std::vector<std::string> StringArrayAt(const json& j, const std::string& path) {
  if (!j.is_array()) {
    throw ConfigError(path + ": expected an array of feature names");
  }
  std::vector<std::string> names;
  names.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i) {
    names.push_back(StringAt(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return names;
}

}  // namespace

ExperimentConfig ParseExperimentConfig(const json& j) {
  if (!j.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }
  ExperimentConfig config;
  config.feature_space =
      ParseFeatureSpace(Require(j, "featureSpace", ""), "featureSpace");
  config.world.weights = NumberArrayAt(Require(j, "weights", ""), "weights");
  config.world.value_set =
      NumberArrayAt(Require(j, "valueSet", ""), "valueSet");
  config.params = ParseBetas(j);
  if (j.contains("contextSize")) {
    config.context_size = IntAt(j.at("contextSize"), "contextSize");
  }
  if (j.contains("utteranceFilter")) {
    const std::string filter =
        StringAt(j.at("utteranceFilter"), "utteranceFilter");
    if (filter == "all") {
      config.utterance_filter = UtteranceFilter::kAll;
    } else if (filter == "positive-only") {
      config.utterance_filter = UtteranceFilter::kPositiveOnly;
    } else {
      throw ConfigError(
          "utteranceFilter: expected 'all' or 'positive-only', got '" +
          filter + "'");
    }
  }
  if (j.contains("context")) {
    const json& context = j.at("context");
    if (!context.is_array() || context.empty()) {
      throw ConfigError("context: expected a non-empty array of actions");
    }
    ActionContext reference;
    for (size_t i = 0; i < context.size(); ++i) {
      reference.actions.push_back(MakeAction(
          config.feature_space,
          StringArrayAt(context[i], "context[" + std::to_string(i) + "]")));
    }
    config.reference_context = std::move(reference);
  }
  config.Validate();
  return config;
}

ExperimentConfig LoadExperimentConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path.string() + "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return ParseExperimentConfig(j);
}

namespace {

SpeakerTargets ParseSpeakerTargets(const json& j, const std::string& path) {
  if (!j.is_object()) {
    throw ConfigError(path + ": expected an object");
  }
  SpeakerTargets targets;
  targets.p_truthful =
      NumberAt(Require(j, "pTruthful", path), path + ".pTruthful");
  targets.pi_optimal =
      NumberAt(Require(j, "piOptimal", path), path + ".piOptimal");
  targets.r_local = NumberAt(Require(j, "rLocal", path), path + ".rLocal");
  targets.r_generalization = NumberAt(Require(j, "rGeneralization", path),
                                      path + ".rGeneralization");
  return targets;
}

}  // namespace

CalibrationConfig ParseCalibrationConfig(const json& j) {
  if (!j.is_object()) {
    throw ConfigError("config: expected a JSON object");
  }
  CalibrationConfig config;
  config.spec.feature_space =
      ParseFeatureSpace(Require(j, "featureSpace", ""), "featureSpace");
  config.spec.params = ParseBetas(j);
  if (j.contains("contextSize")) {
    config.spec.context_size = IntAt(j.at("contextSize"), "contextSize");
  }

  const json& targets = Require(j, "targets", "");
  config.targets.belief =
      ParseSpeakerTargets(Require(targets, "belief", "targets"),
                          "targets.belief");
  config.targets.action =
      ParseSpeakerTargets(Require(targets, "action", "targets"),
                          "targets.action");
  config.targets.combined =
      ParseSpeakerTargets(Require(targets, "combined", "targets"),
                          "targets.combined");

  const json& search = Require(j, "search", "");
  if (!search.is_object()) {
    throw ConfigError("search: expected an object");
  }
  const json& fixed = Require(search, "fixedWeights", "search");
  if (!fixed.is_object()) {
    throw ConfigError("search.fixedWeights: expected an object");
  }
  for (const auto& [name, value] : fixed.items()) {
    config.spec.fixed_weights[name] =
        NumberAt(value, "search.fixedWeights." + name);
  }
  const std::vector<double> range = NumberArrayAt(
      Require(search, "weightRange", "search"), "search.weightRange");
  if (range.size() != 2) {
    throw ConfigError("search.weightRange: expected [min, max]");
  }
  config.spec.weight_min = range[0];
  config.spec.weight_max = range[1];
  const json& value_sets = Require(search, "valueSets", "search");
  if (!value_sets.is_array() || value_sets.empty()) {
    throw ConfigError("search.valueSets: expected a non-empty array");
  }
  for (size_t i = 0; i < value_sets.size(); ++i) {
    config.spec.value_sets.push_back(NumberArrayAt(
        value_sets[i], "search.valueSets[" + std::to_string(i) + "]"));
  }
  if (search.contains("tolerance")) {
    config.spec.tolerance =
        NumberAt(search.at("tolerance"), "search.tolerance");
    if (!(config.spec.tolerance >= 0.0)) {
      throw ConfigError("search.tolerance: must be >= 0");
    }
  }
  return config;
}

CalibrationConfig LoadCalibrationConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path.string() + "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return ParseCalibrationConfig(j);
}

}  // namespace sigbandits
