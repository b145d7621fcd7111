// dataforge/rl/trainer.h

// Copyright 2026  The DataForge Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dataforge/error.h"
#include "dataforge/rl/grpo.h"
#include "dataforge/rl/policy.h"
#include "dataforge/rl/reward.h"
#include "dataforge/rng.h"
#include "dataforge/text/edit_distance.h"

#include <json.hpp>

namespace dataforge::rl {

/// Scores a sampled token sequence. The trainer is generic over this; the
/// toy model below is the deterministic stand-in used by tests and the CLI.
class RolloutRewardModel {
 public:
  virtual ~RolloutRewardModel() = default;
  virtual RewardVector score(const std::vector<int>& tokens,
                             int eos_token) = 0;
};

/// Deterministic reward model over token sequences:
///   cer   — edit-distance rate of the rollout against a target sequence
///   sim   — cosine similarity of token histograms against a reference
///   emo   — 1 when the rollout contains emo_token, else 0 (bimodal)
///   laugh — the laughter rule applied to a rendered transcript with a
///           stubbed detector (fires iff the run exists) and a stubbed ASR
///           that always deletes laughter; not-applicable maps to 0 so the
///           toy dimension is always populated.
class ToyRewardModel final : public RolloutRewardModel {
 public:
  struct Config {
    int vocab = 8;
    int laugh_token = 0;
    int emo_token = 1;
    std::vector<int> cer_target = {2, 3, 2, 3};
    std::vector<double> sim_reference;  // defaults to uniform histogram
  };

  explicit ToyRewardModel(Config cfg) : cfg_(std::move(cfg)) {
    if (cfg_.sim_reference.empty())
      cfg_.sim_reference.assign(static_cast<std::size_t>(cfg_.vocab), 1.0);
  }

  RewardVector score(const std::vector<int>& tokens, int eos_token) override {
    std::vector<int> body;
    for (int t : tokens)
      if (t != eos_token) body.push_back(t);

    RewardVector r;
    r.cer = cfg_.cer_target.empty()
                ? 0.0
                : text::error_rate(text::edit_distance(cfg_.cer_target, body));

    std::vector<double> hist(static_cast<std::size_t>(cfg_.vocab), 0.0);
    for (int t : body)
      if (t >= 0 && t < cfg_.vocab) hist[static_cast<std::size_t>(t)] += 1.0;
    r.sim = cosine_similarity(hist, cfg_.sim_reference);

    r.emo = 0.0;
    for (int t : body)
      if (t == cfg_.emo_token) r.emo = 1.0;

    // Laughter: render laugh tokens as a laughter word, everything else as a
    // neutral syllable, then apply the real rule with stubbed detector/ASR.
    std::string rendered;
    bool run = false;
    for (std::size_t i = 0; i < body.size(); ++i) {
      rendered += body[i] == cfg_.laugh_token ? "哈" : "吧";
      if (i > 0 && body[i] == cfg_.laugh_token &&
          body[i - 1] == cfg_.laugh_token)
        run = true;
    }
    const std::vector<audio::Segment> detected =
        run ? std::vector<audio::Segment>{{0.0, 1.0}}
            : std::vector<audio::Segment>{};
    r.laugh = laughter_reward(rendered, default_laughter_words(),
                              text::Lang::zh, detected, "")
                  .value_or(0.0);
    return r;
  }

 private:
  Config cfg_;
};

/// Training configuration mirrored by the JSON config file.
struct TrainerConfig {
  int group_size = 8;                    // G
  RewardWeights weights;
  ClipSchedule schedule;
  long long total_steps = 100;
  int max_retries = kMaxResampleRetries;
  bool exclude_sim = false;
  std::uint64_t seed = kDefaultSeed;
  double learning_rate = 0.05;
  double kl_beta = 0.0;
  int prompts_per_step = 1;
  int vocab = 8;
  int max_len = 8;
  ToyRewardModel::Config env;
};

inline TrainerConfig trainer_config_from_json(const nlohmann::json& j) {
  TrainerConfig cfg;
  cfg.group_size = j.value("G", cfg.group_size);
  if (j.contains("lambda")) {
    const auto& l = j.at("lambda");
    cfg.weights.cer = l.value("cer", cfg.weights.cer);
    cfg.weights.sim = l.value("sim", cfg.weights.sim);
    cfg.weights.emo = l.value("emo", cfg.weights.emo);
    cfg.weights.laugh = l.value("laugh", cfg.weights.laugh);
  }
  cfg.total_steps = j.value("total_steps", cfg.total_steps);
  cfg.schedule.total_steps = cfg.total_steps;
  if (j.contains("schedule")) {
    const auto& s = j.at("schedule");
    cfg.schedule.t0 = s.value("T0", cfg.schedule.t0);
    cfg.schedule.t_final = s.value("T_final", cfg.schedule.t0);
    cfg.schedule.eps_h0 = s.value("eps_h0", cfg.schedule.eps_h0);
    cfg.schedule.eps_h_final = s.value("eps_h_final", cfg.schedule.eps_h0);
    cfg.schedule.eps_l0 = s.value("eps_l0", cfg.schedule.eps_l0);
    cfg.schedule.eps_l_final = s.value("eps_l_final", cfg.schedule.eps_l0);
  } else {
    cfg.schedule.t_final = cfg.schedule.t0;
    cfg.schedule.eps_h_final = cfg.schedule.eps_h0;
    cfg.schedule.eps_l_final = cfg.schedule.eps_l0;
  }
  cfg.max_retries = j.value("max_retries", cfg.max_retries);
  cfg.exclude_sim = j.value("exclude_sim", cfg.exclude_sim);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.learning_rate = j.value("learning_rate", cfg.learning_rate);
  cfg.kl_beta = j.value("kl_beta", cfg.kl_beta);
  cfg.prompts_per_step = j.value("prompts_per_step", cfg.prompts_per_step);
  cfg.vocab = j.value("vocab", cfg.vocab);
  cfg.max_len = j.value("max_len", cfg.max_len);
  cfg.env.vocab = cfg.vocab;
  if (j.contains("env")) {
    const auto& e = j.at("env");
    cfg.env.laugh_token = e.value("laugh_token", cfg.env.laugh_token);
    cfg.env.emo_token = e.value("emo_token", cfg.env.emo_token);
    if (e.contains("cer_target"))
      cfg.env.cer_target = e.at("cer_target").get<std::vector<int>>();
    if (e.contains("sim_reference"))
      cfg.env.sim_reference =
          e.at("sim_reference").get<std::vector<double>>();
  }
  if (cfg.group_size < 2) throw ConfigError("G must be >= 2");
  if (cfg.total_steps < 1) throw ConfigError("total_steps must be >= 1");
  return cfg;
}

inline nlohmann::json stats_to_json(const StepStats& s) {
  return {{"step", s.step},
          {"mean_reward", s.mean_reward},
          {"clip_fraction", s.clip_fraction},
          {"retries", s.retries},
          {"T", s.params.temperature},
          {"eps_h", s.params.eps_h},
          {"eps_l", s.params.eps_l}};
}

/// Drives sampling, dynamic resampling, and the policy update. Rollout
/// generation uses an independent rng stream per (step, prompt, attempt), so
/// prompts can be drawn in parallel without changing results.
class GrpoTrainer {
 public:
  GrpoTrainer(TrainerConfig cfg, RolloutRewardModel& rewards)
      : cfg_(std::move(cfg)),
        rewards_(rewards),
        policy_(cfg_.vocab) {}

  const BigramPolicy& policy() const { return policy_; }
  BigramPolicy& policy() { return policy_; }

  RolloutGroup sample_group(long long step, int prompt, int attempt,
                            const ClipParams& params) {
    RolloutGroup group;
    group.prompt_id = "step" + std::to_string(step) + "-prompt" +
                      std::to_string(prompt) + "-try" +
                      std::to_string(attempt);
    const std::uint64_t stream =
        (static_cast<std::uint64_t>(step) * 1024 +
         static_cast<std::uint64_t>(prompt)) *
            16 +
        static_cast<std::uint64_t>(attempt);
    Rng rng(Rng::derive(cfg_.seed, stream));
    for (int g = 0; g < cfg_.group_size; ++g) {
      Rollout r =
          sample_rollout(policy_, params.temperature, rng, cfg_.max_len);
      r.reward = rewards_.score(r.tokens, policy_.eos());
      group.rollouts.push_back(std::move(r));
    }
    return group;
  }

  StepStats step(long long step_no) {
    const ClipParams params = schedule_at(cfg_.schedule, step_no);
    std::vector<RolloutGroup> groups;
    int retries = 0;
    for (int prompt = 0; prompt < cfg_.prompts_per_step; ++prompt) {
      int attempt = -1;
      const auto sampler = [&] {
        ++attempt;
        return sample_group(step_no, prompt, attempt, params);
      };
      SampledGroup sampled = dynamic_sample(sampler, cfg_.weights,
                                            cfg_.exclude_sim,
                                            cfg_.max_retries);
      retries += sampled.retries;
      groups.push_back(std::move(sampled.group));
    }
    StepStats stats = grpo_step(policy_, groups, params, cfg_.weights,
                                cfg_.learning_rate, cfg_.kl_beta);
    stats.step = step_no;
    stats.retries = retries;
    return stats;
  }

  /// Runs total_steps updates, invoking sink after each one.
  void run(const std::function<void(const StepStats&)>& sink = {}) {
    for (long long s = 0; s < cfg_.total_steps; ++s) {
      const StepStats stats = step(s);
      if (sink) sink(stats);
    }
  }

 private:
  TrainerConfig cfg_;
  RolloutRewardModel& rewards_;
  BigramPolicy policy_;
};

}  // namespace dataforge::rl
