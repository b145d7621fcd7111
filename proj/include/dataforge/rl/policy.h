// dataforge/rl/policy.h

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

#include <cmath>
#include <cstddef>
#include <vector>

#include "dataforge/error.h"
#include "dataforge/rl/reward.h"
#include "dataforge/rng.h"

namespace dataforge::rl {

/// Desk-scale differentiable policy: a table of bigram logits over a small
/// vocabulary plus BOS/EOS. Row index is the context (token id, or BOS);
/// column index is the next token (token id, or EOS). Stands in for the
/// speech LM so the optimizer mathematics can be verified end to end.
class BigramPolicy {
 public:
  explicit BigramPolicy(int vocab, double init_logit = 0.0)
      : vocab_(vocab),
        logits_(static_cast<std::size_t>(vocab + 1) * (vocab + 1),
                init_logit) {
    if (vocab < 1) throw ConfigError("bigram policy needs vocab >= 1");
  }

  int vocab() const { return vocab_; }
  int bos() const { return vocab_; }  // context row for sequence start
  int eos() const { return vocab_; }  // next-token column for sequence end

  double logit(int ctx, int next) const { return logits_[index(ctx, next)]; }
  double& logit(int ctx, int next) { return logits_[index(ctx, next)]; }

  std::size_t param_count() const { return logits_.size(); }
  double param(std::size_t i) const { return logits_[i]; }
  double& param(std::size_t i) { return logits_[i]; }

  /// softmax(logits[ctx] / temperature) over the V+1 next-token choices.
  std::vector<double> probs(int ctx, double temperature) const {
    std::vector<double> p(static_cast<std::size_t>(vocab_) + 1);
    double max_l = -HUGE_VAL;
    for (int k = 0; k <= vocab_; ++k)
      max_l = std::max(max_l, logit(ctx, k) / temperature);
    double z = 0.0;
    for (int k = 0; k <= vocab_; ++k) {
      p[k] = std::exp(logit(ctx, k) / temperature - max_l);
      z += p[k];
    }
    for (auto& v : p) v /= z;
    return p;
  }

  /// log softmax(logits[ctx] / temperature)[next], computed stably.
  double log_prob(int ctx, int next, double temperature) const {
    double max_l = -HUGE_VAL;
    for (int k = 0; k <= vocab_; ++k)
      max_l = std::max(max_l, logit(ctx, k) / temperature);
    double z = 0.0;
    for (int k = 0; k <= vocab_; ++k)
      z += std::exp(logit(ctx, k) / temperature - max_l);
    return logit(ctx, next) / temperature - max_l - std::log(z);
  }

 private:
  std::size_t index(int ctx, int next) const {
    return static_cast<std::size_t>(ctx) * (vocab_ + 1) +
           static_cast<std::size_t>(next);
  }

  int vocab_;
  std::vector<double> logits_;
};

/// One sampled trajectory. tokens may end with the EOS id; logprobs are the
/// log-probabilities of the tempered distribution the tokens were actually
/// drawn from, recorded at sampling time as the behavior policy.
struct Rollout {
  std::vector<int> tokens;
  std::vector<double> logprobs;
  RewardVector reward;
};

/// Ancestral sampling from softmax(logits / T); stops at EOS or max_len.
/// Consumes exactly one uniform01 draw per emitted token.
inline Rollout sample_rollout(const BigramPolicy& policy, double temperature,
                              Rng& rng, int max_len) {
  if (temperature <= 0) throw ConfigError("temperature must be positive");
  Rollout r;
  int ctx = policy.bos();
  for (int t = 0; t < max_len; ++t) {
    const std::vector<double> p = policy.probs(ctx, temperature);
    const double u = rng.uniform01();
    double acc = 0.0;
    int tok = policy.eos();
    for (int k = 0; k <= policy.vocab(); ++k) {
      acc += p[k];
      if (u < acc) {
        tok = k;
        break;
      }
    }
    r.tokens.push_back(tok);
    r.logprobs.push_back(policy.log_prob(ctx, tok, temperature));
    if (tok == policy.eos()) break;
    ctx = tok;
  }
  return r;
}

/// Exact probability, under the policy at T = 1, that a sampled sequence
/// (capped at max_len) contains two or more consecutive occurrences of
/// `token`. Closed-form transition sweep over the bigram chain; this is the
/// measure the laughter reward targets.
inline double consecutive_token_probability(const BigramPolicy& policy,
                                            int token, int max_len) {
  const int v = policy.vocab();
  // mass[prev][hit]; prev = v means BOS
  std::vector<std::vector<double>> mass(v + 1, std::vector<double>(2, 0.0));
  mass[v][0] = 1.0;
  double hit_done = 0.0;
  for (int t = 0; t < max_len; ++t) {
    std::vector<std::vector<double>> next(v + 1, std::vector<double>(2, 0.0));
    for (int prev = 0; prev <= v; ++prev) {
      const std::vector<double> p = policy.probs(prev, 1.0);
      for (int hit = 0; hit < 2; ++hit) {
        const double m = mass[prev][hit];
        if (m == 0.0) continue;
        hit_done += hit ? m * p[policy.eos()] : 0.0;
        for (int tok = 0; tok < v; ++tok) {
          const bool now_hit =
              hit == 1 || (prev == token && tok == token && prev != v);
          next[tok][now_hit ? 1 : 0] += m * p[tok];
        }
      }
    }
    mass = std::move(next);
  }
  for (int prev = 0; prev <= v; ++prev) hit_done += mass[prev][1];
  return hit_done;
}

}  // namespace dataforge::rl
