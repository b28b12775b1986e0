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

// Command-line driver. Subcommands:
//   sim1       reference game on a fixed context
//   sim2       speakers conditioned on each enumerated local context
//   sim3       speakers conditioned on the global action space
//   sweep      sim2 + sim3 regimes with infinitely optimal speakers
//   heatmap    per-utterance speaker probabilities (local contexts)
//   calibrate  grid-search worlds against a target metric table
//
// Exit status: 0 on success, 1 on configuration or runtime errors
// (message on stderr names the offending field), CLI11's status on
// usage errors.

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sigbandits/json_config.h"
#include "sigbandits/table_io.h"

namespace {

using sigbandits::Beta;
using sigbandits::CalibrationCandidate;
using sigbandits::CalibrationConfig;
using sigbandits::CalibrationOutcome;
using sigbandits::ExperimentConfig;
using sigbandits::ExperimentResult;
using sigbandits::FormatSig6;
using sigbandits::MetricsRow;
using sigbandits::OutputFormat;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::string format = "csv";
  int jobs = 1;
  bool beta_inf = false;
};

void AddCommonOptions(CLI::App* cmd, CommonOptions* options) {
  cmd->add_option("--config", options->config_path,
                  "Path to a JSON config file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", options->out_dir, "Output directory")
      ->capture_default_str();
  cmd->add_option("--format", options->format, "Metrics table format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--jobs", options->jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--beta-inf", options->beta_inf,
                "Force all speaker betas to infinity");
}

ExperimentConfig LoadGameConfig(const CommonOptions& options) {
  ExperimentConfig config =
      sigbandits::LoadExperimentConfig(options.config_path);
  config.jobs = options.jobs;
  if (options.beta_inf) {
    config.params.beta_belief = Beta::Infinite();
    config.params.beta_action = Beta::Infinite();
    config.params.beta_combined = Beta::Infinite();
  }
  return config;
}

void WriteMetrics(const CommonOptions& options, const std::string& stem,
                  const std::vector<MetricsRow>& rows) {
  const std::filesystem::path dir(options.out_dir);
  const bool csv = options.format == "csv";
  const std::filesystem::path path =
      dir / (stem + (csv ? "_metrics.csv" : "_metrics.json"));
  sigbandits::WriteFile(path, csv ? sigbandits::MetricsCsv(rows)
                                  : sigbandits::MetricsJson(rows));
  std::cout << sigbandits::MetricsTableText(rows);
  std::cout << "wrote " << path.string() << "\n";
}

std::string DescribeCandidate(const CalibrationCandidate& candidate) {
  std::string out = "weights [";
  for (size_t i = 0; i < candidate.world.weights.size(); ++i) {
    if (i > 0) out += ' ';
    out += FormatSig6(candidate.world.weights[i]);
  }
  out += "] valueSet [";
  for (size_t i = 0; i < candidate.world.value_set.size(); ++i) {
    if (i > 0) out += ' ';
    out += FormatSig6(candidate.world.value_set[i]);
  }
  out += "] maxDeviation " + FormatSig6(candidate.max_deviation);
  return out;
}

int RunCalibrate(const CommonOptions& options) {
  CalibrationConfig config =
      sigbandits::LoadCalibrationConfig(options.config_path);
  config.spec.jobs = options.jobs;
  const CalibrationOutcome outcome =
      sigbandits::CalibrateWorld(config.targets, config.spec);

  const std::filesystem::path dir(options.out_dir);
  sigbandits::WriteFile(dir / "calibration.json",
                        sigbandits::CalibrationJson(outcome));
  sigbandits::WriteFile(dir / "calibration.csv",
                        sigbandits::CalibrationCsv(outcome));

  std::cout << "calibration: considered " << outcome.candidates_considered
            << ", evaluated " << outcome.candidates_evaluated << ", matched "
            << outcome.matches.size() << "\n";
  for (const CalibrationCandidate& match : outcome.matches) {
    std::cout << "  match: " << DescribeCandidate(match) << "\n";
  }
  if (outcome.matches.empty()) {
    if (outcome.best.has_value()) {
      std::cout << "  no candidate within tolerance; closest: "
                << DescribeCandidate(*outcome.best) << "\n";
    } else {
      std::cout << "  search space is empty\n";
    }
  }
  std::cout << "wrote " << (dir / "calibration.json").string() << "\n";
  std::cout << "wrote " << (dir / "calibration.csv").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deterministic simulator for signaling-bandit language games"};
  app.require_subcommand(1);

  CommonOptions options;
  CLI::App* sim1 =
      app.add_subcommand("sim1", "Reference game on a fixed context");
  CLI::App* sim2 =
      app.add_subcommand("sim2", "Speakers on enumerated local contexts");
  CLI::App* sim3 =
      app.add_subcommand("sim3", "Speakers on the global action space");
  CLI::App* sweep =
      app.add_subcommand("sweep", "Both regimes with infinite speaker betas");
  CLI::App* heatmap =
      app.add_subcommand("heatmap", "Per-utterance speaker probabilities");
  CLI::App* calibrate =
      app.add_subcommand("calibrate", "Search worlds matching target metrics");
  for (CLI::App* cmd : {sim1, sim2, sim3, sweep, heatmap, calibrate}) {
    AddCommonOptions(cmd, &options);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (calibrate->parsed()) {
      return RunCalibrate(options);
    }
    const std::filesystem::path dir(options.out_dir);
    if (sim1->parsed()) {
      WriteMetrics(options, "sim1",
                   sigbandits::RunReferenceGame(LoadGameConfig(options)).rows);
    } else if (sim2->parsed()) {
      const ExperimentResult result =
          sigbandits::RunLocalContexts(LoadGameConfig(options));
      WriteMetrics(options, "sim2", result.rows);
      const std::filesystem::path heat_path = dir / "sim2_heatmap.csv";
      sigbandits::WriteFile(heat_path, sigbandits::HeatmapCsv(result.heatmap));
      std::cout << "wrote " << heat_path.string() << "\n";
    } else if (sim3->parsed()) {
      WriteMetrics(options, "sim3",
                   sigbandits::RunGlobalContext(LoadGameConfig(options)).rows);
    } else if (sweep->parsed()) {
      WriteMetrics(
          options, "sweep",
          sigbandits::RunOptimalitySweep(LoadGameConfig(options)).rows);
    } else if (heatmap->parsed()) {
      const ExperimentResult result =
          sigbandits::RunLocalContexts(LoadGameConfig(options));
      const std::filesystem::path heat_path = dir / "heatmap.csv";
      sigbandits::WriteFile(heat_path, sigbandits::HeatmapCsv(result.heatmap));
      std::cout << "wrote " << heat_path.string() << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
