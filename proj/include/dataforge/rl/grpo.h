// dataforge/rl/grpo.h

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

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dataforge/error.h"
#include "dataforge/rl/policy.h"
#include "dataforge/rl/reward.h"

namespace dataforge::rl {

/// Clip-Higher values: asymmetric clipping with eps_high > eps_low widens
/// the upside interval to [1 - 0.2, 1 + 0.3] and encourages low-probability
/// tokens.
inline constexpr double kEpsHigh = 0.3;
inline constexpr double kEpsLow = 0.2;

/// Pessimistic clipped surrogate: min(rho * A, clip(rho, 1-eps_l, 1+eps_h) * A).
inline double clipped_surrogate(double rho, double advantage, double eps_l,
                                double eps_h) {
  const double clipped = std::clamp(rho, 1.0 - eps_l, 1.0 + eps_h) * advantage;
  return std::min(rho * advantage, clipped);
}

struct SurrogateTerm {
  double value = 0.0;
  double d_dlogp = 0.0;  // derivative w.r.t. the new policy log-probability
  bool clipped = false;  // the min selected the clipped branch strictly
};

/// Value and gradient of the surrogate. The gradient flows only through the
/// unclipped branch: where the clipped branch is strictly smaller the token
/// contributes nothing to the update.
inline SurrogateTerm clipped_surrogate_grad(double rho, double advantage,
                                            double eps_l, double eps_h) {
  const double unclipped = rho * advantage;
  const double clipped = std::clamp(rho, 1.0 - eps_l, 1.0 + eps_h) * advantage;
  SurrogateTerm term;
  if (unclipped <= clipped) {
    term.value = unclipped;
    term.d_dlogp = advantage * rho;  // d(rho)/d(logp) = rho
  } else {
    term.value = clipped;
    term.d_dlogp = 0.0;
    term.clipped = true;
  }
  return term;
}

/// Linear schedule endpoints for the sampling temperature and the clipping
/// bounds, stepped over training.
struct ClipSchedule {
  double t0 = 1.0;
  double t_final = 1.0;
  double eps_h0 = kEpsHigh;
  double eps_h_final = kEpsHigh;
  double eps_l0 = kEpsLow;
  double eps_l_final = kEpsLow;
  long long total_steps = 0;
};

struct ClipParams {
  double temperature = 1.0;
  double eps_h = kEpsHigh;
  double eps_l = kEpsLow;
};

/// Linear interpolation between the schedule's initial and final values.
/// eps_h >= eps_l is enforced at every step.
inline ClipParams schedule_at(const ClipSchedule& sched, long long step) {
  if (step < 0 || step > sched.total_steps)
    throw InvalidStep("step " + std::to_string(step) +
                      " outside [0, " + std::to_string(sched.total_steps) +
                      "]");
  const double t = sched.total_steps == 0
                       ? 0.0
                       : static_cast<double>(step) /
                             static_cast<double>(sched.total_steps);
  ClipParams p;
  p.temperature = std::lerp(sched.t0, sched.t_final, t);
  p.eps_h = std::lerp(sched.eps_h0, sched.eps_h_final, t);
  p.eps_l = std::min(std::lerp(sched.eps_l0, sched.eps_l_final, t), p.eps_h);
  if (p.temperature <= 0 || p.eps_l <= 0 || p.eps_h <= 0)
    throw ConfigError("schedule produced non-positive parameters");
  return p;
}

/// G rollouts drawn for one prompt under the behavior policy.
struct RolloutGroup {
  std::string prompt_id;
  std::vector<Rollout> rollouts;

  std::vector<RewardVector> rewards() const {
    std::vector<RewardVector> r;
    r.reserve(rollouts.size());
    for (const Rollout& roll : rollouts) r.push_back(roll.reward);
    return r;
  }
};

inline constexpr int kMaxResampleRetries = 3;

struct SampledGroup {
  RolloutGroup group;
  int retries = 0;
};

/// Dynamic Sampling: redraws a group whose advantages are all zero, up to
/// max_retries times; after that the last group is used anyway and training
/// proceeds with zero advantages.
template <typename Sampler>
SampledGroup dynamic_sample(Sampler&& sampler, const RewardWeights& weights,
                            bool exclude_sim,
                            int max_retries = kMaxResampleRetries) {
  SampledGroup result;
  for (int attempt = 0; attempt <= max_retries; ++attempt) {
    try {
      result.group = sampler();
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw SamplerError(std::string("sampler failed: ") + e.what());
    }
    if (result.group.rollouts.size() < 2)
      throw SamplerError("sampler produced a group with G < 2");
    result.retries = attempt;
    if (!is_homogeneous(result.group.rewards(), weights, exclude_sim)) break;
  }
  return result;
}

struct StepStats {
  long long step = 0;
  double mean_reward = 0.0;    // mean weighted raw reward over all rollouts
  double clip_fraction = 0.0;  // fraction of tokens on the clipped branch
  double grad_norm = 0.0;
  int retries = 0;
  ClipParams params;
};

namespace detail {

/// Mean of the unregularized weighted reward; tracks training progress in
/// raw units (CER negated, not-applicable laughter skipped).
inline double mean_raw_reward(const std::vector<RolloutGroup>& groups,
                              const RewardWeights& w) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const RolloutGroup& g : groups)
    for (const Rollout& r : g.rollouts) {
      double v = -w.cer * r.reward.cer + w.sim * r.reward.sim +
                 w.emo * r.reward.emo;
      if (r.reward.laugh.has_value()) v += w.laugh * *r.reward.laugh;
      sum += v;
      ++n;
    }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

}  // namespace detail

/// Token-level objective actually optimized by grpo_step: the mean over all
/// batch tokens of the clipped surrogate, minus the optional KL penalty
/// (k3 estimator against the recorded behavior log-probabilities).
/// Kept in exact lockstep with the analytic gradient so finite differences
/// of this function validate the update.
inline double grpo_objective(const BigramPolicy& policy,
                             const std::vector<RolloutGroup>& groups,
                             const ClipParams& params,
                             const RewardWeights& weights,
                             double kl_beta = 0.0) {
  double objective = 0.0;
  std::size_t n_tokens = 0;
  for (const RolloutGroup& group : groups) {
    const std::vector<double> advantages =
        compute_group_advantages(group.rewards(), weights);
    for (std::size_t i = 0; i < group.rollouts.size(); ++i) {
      const Rollout& roll = group.rollouts[i];
      int ctx = policy.bos();
      for (std::size_t t = 0; t < roll.tokens.size(); ++t) {
        const int tok = roll.tokens[t];
        const double behavior = roll.logprobs[t];
        const double lp = policy.log_prob(ctx, tok, params.temperature);
        const double rho = std::exp(lp - behavior);
        objective +=
            clipped_surrogate(rho, advantages[i], params.eps_l, params.eps_h);
        if (kl_beta != 0.0) {
          const double r_ref = std::exp(behavior - lp);
          objective -= kl_beta * (r_ref - (behavior - lp) - 1.0);
        }
        ++n_tokens;
        if (tok != policy.eos()) ctx = tok;
      }
    }
  }
  return n_tokens == 0 ? 0.0 : objective / static_cast<double>(n_tokens);
}

/// One ascent step on the token-level clipped objective. Advantages come
/// from the regularization ladder per group; rho is exp(new - behavior)
/// log-probabilities; the analytic gradient is applied with a fixed
/// learning rate. Returns per-step stats.
inline StepStats grpo_step(BigramPolicy& policy,
                           const std::vector<RolloutGroup>& groups,
                           const ClipParams& params,
                           const RewardWeights& weights, double learning_rate,
                           double kl_beta = 0.0) {
  const int v = policy.vocab();
  std::vector<double> grad(policy.param_count(), 0.0);
  std::size_t n_tokens = 0;
  std::size_t n_clipped = 0;

  for (const RolloutGroup& group : groups)
    for (const Rollout& roll : group.rollouts) n_tokens += roll.tokens.size();
  StepStats stats;
  stats.params = params;
  stats.mean_reward = detail::mean_raw_reward(groups, weights);
  if (n_tokens == 0) return stats;
  const double inv_n = 1.0 / static_cast<double>(n_tokens);

  for (const RolloutGroup& group : groups) {
    const std::vector<double> advantages =
        compute_group_advantages(group.rewards(), weights);
    for (std::size_t i = 0; i < group.rollouts.size(); ++i) {
      const Rollout& roll = group.rollouts[i];
      int ctx = policy.bos();
      for (std::size_t t = 0; t < roll.tokens.size(); ++t) {
        const int tok = roll.tokens[t];
        const double behavior = roll.logprobs[t];
        const double lp = policy.log_prob(ctx, tok, params.temperature);
        const double rho = std::exp(lp - behavior);
        const SurrogateTerm term =
            clipped_surrogate_grad(rho, advantages[i], params.eps_l,
                                   params.eps_h);
        if (term.clipped) ++n_clipped;
        double d_dlogp = term.d_dlogp;
        if (kl_beta != 0.0) d_dlogp += kl_beta * (std::exp(behavior - lp) - 1.0);
        if (d_dlogp != 0.0) {
          // d(logp)/d(logit[ctx][k]) = (delta(k = tok) - p_k) / T
          const std::vector<double> p = policy.probs(ctx, params.temperature);
          const double w = d_dlogp * inv_n / params.temperature;
          const std::size_t row = static_cast<std::size_t>(ctx) * (v + 1);
          for (int k = 0; k <= v; ++k) grad[row + k] -= w * p[k];
          grad[row + tok] += w;
        }
        if (tok != policy.eos()) ctx = tok;
      }
    }
  }

  double norm_sq = 0.0;
  for (double g : grad) norm_sq += g * g;
  if (!std::isfinite(norm_sq))
    throw NumericalError("non-finite gradient in grpo_step");
  for (std::size_t i = 0; i < grad.size(); ++i)
    policy.param(i) += learning_rate * grad[i];

  stats.clip_fraction =
      static_cast<double>(n_clipped) / static_cast<double>(n_tokens);
  stats.grad_norm = std::sqrt(norm_sq);
  return stats;
}

}  // namespace dataforge::rl
