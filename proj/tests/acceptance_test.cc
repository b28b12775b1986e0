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

// Release-gate checks for the shipped model. Each criterion prints one
// PASS/FAIL line with its runtime; the process exits nonzero when any
// criterion fails. Tolerances are pinned next to the expected values.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "sigbandits/experiments.h"
#include "sigbandits/json_config.h"
#include "sigbandits/table_io.h"
#include "test_worlds.h"

namespace sigbandits {
namespace {

struct Gate {
  bool ok = true;
  std::string why;

  void Expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!why.empty()) why += "; ";
    why += what;
  }
  void ExpectNear(double got, double want, double tol,
                  const std::string& what) {
    Expect(std::abs(got - want) <= tol,
           what + " = " + FormatSig6(got) + ", want " + FormatSig6(want) +
               " +/- " + FormatSig6(tol));
  }
};

std::string ConfigPath(const std::string& name) {
  return std::string(SIGBANDITS_SOURCE_DIR) + "/configs/" + name;
}

// ---------------------------------------------------------------------
// c1: the reference game aligns all three speakers.

Gate Criterion1() {
  Gate gate;
  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult result = RunReferenceGame(LewisConfig());
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  gate.Expect(result.rows.size() == 3, "expected three speaker rows");
  for (const MetricsRow& row : result.rows) {
    gate.ExpectNear(row.p_truthful, 1.0, 1e-6, row.speaker + " p_truthful");
    gate.ExpectNear(row.pi_optimal, 0.500, 0.001, row.speaker + " pi_optimal");
    gate.Expect(row.r_local.has_value(), row.speaker + " r_local missing");
    if (row.r_local.has_value()) {
      gate.ExpectNear(*row.r_local, 100.0, 0.1, row.speaker + " r_local");
    }
  }
  gate.Expect(seconds < 1.0,
              "runtime " + FormatSig6(seconds) + "s, want < 1s");
  return gate;
}

// ---------------------------------------------------------------------
// c2: calibration recovers a world that reproduces the local-context
// metric table, plus a held-out three-action context.

struct SpeakerTable {
  double p_truthful, pi_optimal, r_local, r_generalization;
};

void ExpectRow(Gate& gate, const MetricsRow& row, const SpeakerTable& want,
               double tol, const std::string& tag) {
  gate.ExpectNear(row.p_truthful, want.p_truthful, tol, tag + " p_truthful");
  gate.ExpectNear(row.pi_optimal, want.pi_optimal, tol, tag + " pi_optimal");
  if (row.r_local.has_value()) {
    gate.ExpectNear(*row.r_local, want.r_local, tol, tag + " r_local");
  }
  if (row.r_generalization.has_value()) {
    gate.ExpectNear(*row.r_generalization, want.r_generalization, tol,
                    tag + " r_generalization");
  }
}

Gate Criterion2() {
  constexpr double kTol = 0.005;
  Gate gate;

  const CalibrationConfig config =
      LoadCalibrationConfig(ConfigPath("search.json"));
  CalibrationSearchSpec spec = config.spec;
  spec.jobs = 4;
  const auto start = std::chrono::steady_clock::now();
  const CalibrationOutcome outcome = CalibrateWorld(config.targets, spec);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  gate.Expect(outcome.candidates_considered <= 250,
              "considered " + std::to_string(outcome.candidates_considered) +
                  " candidates, want <= 250");
  gate.Expect(seconds < 60.0,
              "calibration took " + FormatSig6(seconds) + "s, want < 60s");
  gate.Expect(!outcome.matches.empty(), "no world matched the target table");
  if (!outcome.matches.empty()) {
    // Lexicographically smallest matching world (the sort's tie order).
    const World world = outcome.matches[0].world;

    ExperimentConfig run = BanditConfig();
    run.world = world;
    const ExperimentResult local = RunLocalContexts(run);
    ExpectRow(gate, local.rows[0], {1.00, 0.499, 0.539, 0.539}, kTol,
              "local belief");
    ExpectRow(gate, local.rows[1], {0.330, 0.772, 1.18, 0.486}, kTol,
              "local action");
    ExpectRow(gate, local.rows[2], {0.360, 0.742, 1.28, 0.522}, kTol,
              "local combined");

    // Held-out context: three actions the calibration never targeted.
    const UtteranceSpace space =
        BuildUtteranceSpace(run.feature_space, world, UtteranceFilter::kAll);
    const ActionContext context = SpotContext();
    const std::vector<double> action_dist = SpeakerDistribution(
        SpeakerKind::Action(), context, world, space, run.params);
    gate.ExpectNear(
        PiOptimal(action_dist, space, context, world, run.params), 0.737,
        kTol, "held-out action pi_optimal");
    gate.ExpectNear(RLocal(action_dist, space, context, world, run.params),
                    0.456, kTol, "held-out action r_local");
    const std::vector<double> combined_dist = SpeakerDistribution(
        SpeakerKind::Combined(), context, world, space, run.params);
    gate.ExpectNear(
        PiOptimal(combined_dist, space, context, world, run.params), 0.627,
        kTol, "held-out combined pi_optimal");
    gate.ExpectNear(RLocal(combined_dist, space, context, world, run.params),
                    0.482, kTol, "held-out combined r_local");
  }
  return gate;
}

// ---------------------------------------------------------------------
// c3: the same world generalizes in the global regime.

Gate Criterion3() {
  constexpr double kTol = 0.005;
  Gate gate;
  const ExperimentResult global = RunGlobalContext(BanditConfig());
  ExpectRow(gate, global.rows[0], {1.00, 0.499, 0.0, 0.539}, kTol,
            "global belief");
  ExpectRow(gate, global.rows[1], {0.440, 0.566, 0.0, 0.748}, kTol,
            "global action");
  ExpectRow(gate, global.rows[2], {0.534, 0.627, 0.0, 0.949}, kTol,
            "global combined");
  return gate;
}

// ---------------------------------------------------------------------
// c4: asymptotic speakers (all speaker betas infinite).

Gate Criterion4() {
  constexpr double kTol = 0.005;
  Gate gate;
  const ExperimentResult sweep = RunOptimalitySweep(BanditConfig());
  // rows: 0-2 local belief/action/combined, 3-5 global.
  gate.ExpectNear(sweep.rows[1].pi_optimal, 0.942, kTol,
                  "local action pi_optimal");
  gate.ExpectNear(sweep.rows[2].pi_optimal, 0.942, kTol,
                  "local combined pi_optimal");
  gate.ExpectNear(sweep.rows[4].p_truthful, 0.500, 1e-9,
                  "global action p_truthful");
  gate.ExpectNear(sweep.rows[5].p_truthful, 1.00, 1e-9,
                  "global combined p_truthful");

  // Support checks on the asymptotic global distributions. Utterances
  // are feature-major over values (-2,-1,0,1,2): green=2 is index 14,
  // circle=2 is index 19.
  ExperimentConfig config = BanditConfig();
  config.params.beta_belief = Beta::Infinite();
  config.params.beta_action = Beta::Infinite();
  config.params.beta_combined = Beta::Infinite();
  const UtteranceSpace space = BuildUtteranceSpace(
      config.feature_space, config.world, UtteranceFilter::kAll);
  const ActionContext global{BanditActions()};
  const std::vector<double> action_dist =
      SpeakerDistribution(SpeakerKind::Action(), global, config.world, space,
                          config.params);
  const std::vector<double> combined_dist =
      SpeakerDistribution(SpeakerKind::Combined(), global, config.world,
                          space, config.params);
  for (int i = 0; i < space.size(); ++i) {
    const bool in_action_support = (i == 14 || i == 19);
    gate.Expect((action_dist[i] > 0.0) == in_action_support,
                "action support at utterance " + std::to_string(i));
    gate.Expect((combined_dist[i] > 0.0) == (i == 14),
                "combined support at utterance " + std::to_string(i));
  }
  return gate;
}

// ---------------------------------------------------------------------
// c5: property suite, independent of any calibrated numbers.

int SampleIndex(const std::vector<double>& probs, double u) {
  double acc = 0.0;
  int last_positive = 0;
  for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] > 0.0) last_positive = i;
    acc += probs[i];
    if (u < acc) return i;
  }
  return last_positive;
}

double NextUniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Expected listener reward by enumerating every world consistent with
// the belief (unknown slots range over the value set independently; the
// all-prior belief enumerates all |valueSet|^K worlds).
double EnumeratedExpectedReward(const Belief& belief, const Action& action) {
  const int n = belief.size();
  std::vector<int> unknown;
  double pinned_reward = 0.0;
  for (int k = 0; k < n; ++k) {
    if (!belief.slots[k].has_value()) {
      unknown.push_back(k);
    } else if (action.indicator[k] != 0) {
      pinned_reward += *belief.slots[k];
    }
  }
  const int m = static_cast<int>(belief.value_set.size());
  std::vector<int> odometer(unknown.size(), 0);
  double total = 0.0;
  long count = 0;
  bool more = true;
  while (more) {
    double reward = pinned_reward;
    for (size_t j = 0; j < unknown.size(); ++j) {
      if (action.indicator[unknown[j]] != 0) {
        reward += belief.value_set[odometer[j]];
      }
    }
    total += reward;
    ++count;
    more = false;
    for (size_t j = 0; j < unknown.size(); ++j) {
      if (++odometer[j] < m) {
        more = true;
        break;
      }
      odometer[j] = 0;
    }
  }
  return total / static_cast<double>(count);
}

Gate Criterion5() {
  Gate gate;
  const auto start = std::chrono::steady_clock::now();

  const ExperimentConfig config = BanditConfig();
  const World& world = config.world;
  const UtteranceSpace space = BuildUtteranceSpace(
      config.feature_space, world, UtteranceFilter::kAll);
  const ContextDistribution contexts =
      EnumerateContexts(BanditActions(), config.context_size);
  const std::vector<SpeakerKind> kinds = {
      SpeakerKind::Belief(), SpeakerKind::Action(), SpeakerKind::Combined(),
      SpeakerKind::Generalized(Beta::Finite(1.0))};

  // Normalization of every speaker distribution in every context, and of
  // the listener policy after every utterance.
  for (const ActionContext& context : contexts.contexts) {
    for (const SpeakerKind& kind : kinds) {
      const std::vector<double> dist =
          SpeakerDistribution(kind, context, world, space, config.params);
      double total = 0.0;
      for (double p : dist) total += p;
      gate.Expect(std::abs(total - 1.0) <= 1e-12,
                  "speaker normalization off by " +
                      FormatSig6(std::abs(total - 1.0)));
    }
  }
  const Belief prior = Belief::AllPrior(world);
  for (const Utterance& u : space.utterances) {
    const std::vector<double> policy =
        ListenerPolicy(LiteralUpdate(prior, u), contexts.contexts[0],
                       config.params.beta_listener);
    double total = 0.0;
    for (double p : policy) total += p;
    gate.Expect(std::abs(total - 1.0) <= 1e-12, "listener normalization");
  }

  // Belief speaker: identical distribution in every context (bitwise),
  // uniform on true utterances, no mass on false ones.
  const std::vector<double> belief_dist =
      SpeakerDistribution(SpeakerKind::Belief(), contexts.contexts[0], world,
                          space, config.params);
  for (const ActionContext& context : contexts.contexts) {
    const std::vector<double> other = SpeakerDistribution(
        SpeakerKind::Belief(), context, world, space, config.params);
    gate.Expect(other == belief_dist, "belief speaker depends on context");
  }
  int true_count = 0;
  for (int i = 0; i < space.size(); ++i) {
    if (IsTrue(space.utterances[i], world)) ++true_count;
  }
  for (int i = 0; i < space.size(); ++i) {
    if (IsTrue(space.utterances[i], world)) {
      gate.Expect(std::abs(belief_dist[i] - 1.0 / true_count) <= 1e-12,
                  "belief mass not uniform over true utterances");
    } else {
      gate.Expect(belief_dist[i] == 0.0, "belief mass on a false utterance");
    }
  }

  // For a context-independent distribution, generalization reward is the
  // mean of the local rewards.
  {
    double mean_local = 0.0;
    for (const ActionContext& context : contexts.contexts) {
      mean_local +=
          RLocal(belief_dist, space, context, world, config.params);
    }
    mean_local /= contexts.size();
    const double r_gen =
        RGeneralization(belief_dist, space, contexts, world, config.params);
    gate.Expect(std::abs(r_gen - mean_local) <= 1e-12,
                "r_generalization != mean r_local for a fixed distribution");
  }

  // Posterior expected rewards match enumeration over all value-set
  // assignments of the unpinned features (5^6 worlds at the prior).
  {
    std::mt19937_64 rng(7);
    const std::vector<Action> actions = BanditActions();
    std::vector<Belief> beliefs;
    beliefs.push_back(Belief::AllPrior(world));  // 5^6 enumerated worlds
    Belief fully_known = Belief::AllPrior(world);
    for (int k = 0; k < fully_known.size(); ++k) {
      fully_known.slots[k] = world.weights[k];
    }
    beliefs.push_back(fully_known);
    for (int trial = 0; trial < 25; ++trial) {
      Belief belief = Belief::AllPrior(world);
      for (int k = 0; k < belief.size(); ++k) {
        const double pick = NextUniform(rng);
        if (pick < 0.5) {
          const int vi = static_cast<int>(NextUniform(rng) *
                                          world.value_set.size());
          belief.slots[k] = world.value_set[vi];
        }
      }
      beliefs.push_back(belief);
    }
    for (const Belief& belief : beliefs) {
      for (const Action& action : actions) {
        const double got = ListenerExpectedReward(belief, action);
        const double want = EnumeratedExpectedReward(belief, action);
        gate.Expect(std::abs(got - want) <= 1e-9,
                    "listener expected reward deviates from enumeration by " +
                        FormatSig6(std::abs(got - want)));
      }
    }
  }

  // Generalized utility at an infinite reward softmax reduces to the
  // action utility wherever the best action is unique.
  {
    int checked = 0;
    for (const ActionContext& context : contexts.contexts) {
      if (OptimalActionSet(context, world).size() != 1) continue;
      ++checked;
      for (const Utterance& u : space.utterances) {
        const double generalized = GeneralizedUtility(
            u, context, world, config.params, Beta::Infinite());
        const double action = ActionUtility(u, context, world, config.params);
        gate.Expect(std::abs(generalized - action) <= 1e-12,
                    "generalized(betaReward=inf) != action utility");
      }
    }
    gate.Expect(checked >= 50, "too few unique-argmax contexts: " +
                                   std::to_string(checked));
  }

  // Monte-Carlo agreement: sample the speaker and listener 10^6 times in
  // the first enumerated context and compare the estimators with the
  // closed-form metrics within three standard errors.
  {
    const ActionContext& context = contexts.contexts[0];
    const int n_utterances = space.size();
    std::vector<std::vector<double>> policies(n_utterances);
    std::vector<char> is_true(n_utterances, 0);
    for (int i = 0; i < n_utterances; ++i) {
      policies[i] = ListenerPolicy(
          LiteralUpdate(prior, space.utterances[i]), context,
          config.params.beta_listener);
      is_true[i] = IsTrue(space.utterances[i], world) ? 1 : 0;
    }
    const std::vector<int> optimal = OptimalActionSet(context, world);
    std::vector<char> is_optimal(context.size(), 0);
    for (int a : optimal) is_optimal[a] = 1;
    std::vector<double> rewards(context.size());
    for (int a = 0; a < context.size(); ++a) {
      rewards[a] = ActionReward(context.actions[a], world);
    }

    constexpr long kSamples = 1000000;
    std::mt19937_64 rng(20260819);
    for (const SpeakerKind& kind :
         {SpeakerKind::Belief(), SpeakerKind::Action(),
          SpeakerKind::Combined()}) {
      const std::vector<double> dist =
          SpeakerDistribution(kind, context, world, space, config.params);
      const double exact_pt = PTruthful(dist, space, world);
      const double exact_pi =
          PiOptimal(dist, space, context, world, config.params);
      const double exact_rl =
          RLocal(dist, space, context, world, config.params);
      double second_moment = 0.0;
      for (int i = 0; i < n_utterances; ++i) {
        for (int a = 0; a < context.size(); ++a) {
          second_moment += dist[i] * policies[i][a] * rewards[a] * rewards[a];
        }
      }
      const double reward_var = second_moment - exact_rl * exact_rl;

      long truthful = 0, optimal_picks = 0;
      double reward_sum = 0.0;
      for (long s = 0; s < kSamples; ++s) {
        const int u = SampleIndex(dist, NextUniform(rng));
        truthful += is_true[u];
        const int a = SampleIndex(policies[u], NextUniform(rng));
        optimal_picks += is_optimal[a];
        reward_sum += rewards[a];
      }
      const double n = static_cast<double>(kSamples);
      const std::string tag(SpeakerModelName(kind.model));
      gate.Expect(
          std::abs(truthful / n - exact_pt) <=
              3.0 * std::sqrt(exact_pt * (1.0 - exact_pt) / n) + 1e-12,
          tag + " Monte-Carlo p_truthful off: " + FormatSig6(truthful / n) +
              " vs " + FormatSig6(exact_pt));
      gate.Expect(
          std::abs(optimal_picks / n - exact_pi) <=
              3.0 * std::sqrt(exact_pi * (1.0 - exact_pi) / n) + 1e-12,
          tag + " Monte-Carlo pi_optimal off: " +
              FormatSig6(optimal_picks / n) + " vs " + FormatSig6(exact_pi));
      gate.Expect(
          std::abs(reward_sum / n - exact_rl) <=
              3.0 * std::sqrt(reward_var / n) + 1e-12,
          tag + " Monte-Carlo r_local off: " + FormatSig6(reward_sum / n) +
              " vs " + FormatSig6(exact_rl));
    }
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  gate.Expect(seconds < 120.0,
              "property suite took " + FormatSig6(seconds) + "s");
  return gate;
}

// ---------------------------------------------------------------------
// c6: qualitative orderings hold for every admissible world, not just
// the calibrated one. Colors distinct, shapes distinct, blue=-2,
// green=2, circle=1 pinned; red, square, triangle range over the rest.

Gate Criterion6() {
  Gate gate;
  const std::vector<double> value_set = {-2, -1, 0, 1, 2};
  std::vector<World> worlds;
  for (double red : value_set) {
    if (red == -2 || red == 2) continue;  // colors must stay distinct
    for (double square : value_set) {
      if (square == 1) continue;
      for (double triangle : value_set) {
        if (triangle == 1 || triangle == square) continue;
        World world;
        world.weights = {red, -2, 2, 1, square, triangle};
        world.value_set = value_set;
        worlds.push_back(world);
      }
    }
  }
  gate.Expect(worlds.size() == 36,
              "expected 36 admissible worlds, got " +
                  std::to_string(worlds.size()));

  for (const World& world : worlds) {
    ExperimentConfig config = BanditConfig();
    config.world = world;
    config.jobs = 4;
    const ExperimentResult local = RunLocalContexts(config);
    const ExperimentResult global = RunGlobalContext(config);
    std::string tag = "weights [";
    for (size_t i = 0; i < world.weights.size(); ++i) {
      if (i) tag += ' ';
      tag += FormatSig6(world.weights[i]);
    }
    tag += "]";

    gate.Expect(local.rows[1].p_truthful < 1.0,
                tag + ": local action speaker fully truthful");
    gate.Expect(local.rows[2].p_truthful < 1.0,
                tag + ": local combined speaker fully truthful");
    gate.Expect(*local.rows[2].r_local >= *local.rows[1].r_local,
                tag + ": combined r_local below action r_local");
    gate.Expect(
        *global.rows[1].r_generalization > *local.rows[1].r_generalization,
        tag + ": global regime does not improve action generalization");
    gate.Expect(
        *global.rows[2].r_generalization > *local.rows[2].r_generalization,
        tag + ": global regime does not improve combined generalization");
  }
  return gate;
}

}  // namespace
}  // namespace sigbandits

int main() {
  using sigbandits::Gate;
  struct Entry {
    const char* name;
    const char* summary;
    std::function<Gate()> run;
  };
  const std::vector<Entry> criteria = {
      {"c1", "reference game aligns all speakers", sigbandits::Criterion1},
      {"c2", "calibrated world reproduces the local metric table",
       sigbandits::Criterion2},
      {"c3", "calibrated world reproduces the global metric table",
       sigbandits::Criterion3},
      {"c4", "asymptotic speaker behavior", sigbandits::Criterion4},
      {"c5", "property suite", sigbandits::Criterion5},
      {"c6", "qualitative orderings across admissible worlds",
       sigbandits::Criterion6},
  };

  bool all_ok = true;
  for (const Entry& entry : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Gate gate;
    try {
      gate = entry.run();
    } catch (const std::exception& e) {
      gate.ok = false;
      gate.why = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - start)
            .count();
    if (gate.ok) {
      std::printf("PASS %s: %s (%.0f ms)\n", entry.name, entry.summary, ms);
    } else {
      all_ok = false;
      std::printf("FAIL %s: %s (%.0f ms): %s\n", entry.name, entry.summary,
                  ms, gate.why.c_str());
    }
  }
  return all_ok ? 0 : 1;
}
