// dataforge/rl/reward.h

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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/audio/clip.h"
#include "dataforge/error.h"
#include "dataforge/phoneme/g2p.h"
#include "dataforge/text/normalize.h"

namespace dataforge::rl {

/// Per-rollout raw reward scores. CER is lower-better and enters fusion
/// negated; laugh is absent (not-applicable) when the laughter rule does not
/// apply to the rollout.
struct RewardVector {
  double cer = 0.0;                 // error fraction, lower better
  double sim = 0.0;                 // cosine similarity in [-1, 1]
  double emo = 0.0;                 // [0, 1]
  std::optional<double> laugh;      // {0, 1} or not-applicable
};

/// Fusion weights. CER/SIM/EMO default to 1; the laughter weight defaults to
/// the middle of the studied {2, 5, 10} settings.
struct RewardWeights {
  double cer = 1.0;
  double sim = 1.0;
  double emo = 1.0;
  double laugh = 5.0;
};

/// Variance floor under which a reward dimension (or a fused group) counts
/// as degenerate and regularizes to zeros.
inline constexpr double kDegenerateStd = 1e-8;

namespace detail {

inline double population_std(const std::vector<double>& v, double mean) {
  double sq = 0.0;
  for (double x : v) sq += (x - mean) * (x - mean);
  return std::sqrt(sq / static_cast<double>(v.size()));
}

inline double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace detail

/// Z-score with population std; a degenerate dimension maps to all zeros.
inline std::vector<double> regularize_dim(const std::vector<double>& values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.size() < 2) return out;
  const double mean = detail::mean_of(values);
  const double std = detail::population_std(values, mean);
  if (std < kDegenerateStd) return out;
  for (std::size_t i = 0; i < values.size(); ++i)
    out[i] = (values[i] - mean) / std;
  return out;
}

/// Weighted fusion of per-dimension z-scores. CER is negated before
/// regularization. Not-applicable laughter entries are excluded from the
/// laughter z-score population and contribute 0; the dimension is skipped
/// entirely when fewer than two entries are applicable.
inline std::vector<double> fuse(const std::vector<RewardVector>& rewards,
                                const RewardWeights& weights) {
  const std::size_t g = rewards.size();
  std::vector<double> cer(g), sim(g), emo(g);
  for (std::size_t i = 0; i < g; ++i) {
    cer[i] = -rewards[i].cer;
    sim[i] = rewards[i].sim;
    emo[i] = rewards[i].emo;
  }
  const std::vector<double> cer_z = regularize_dim(cer);
  const std::vector<double> sim_z = regularize_dim(sim);
  const std::vector<double> emo_z = regularize_dim(emo);

  std::vector<std::size_t> laugh_idx;
  std::vector<double> laugh_vals;
  for (std::size_t i = 0; i < g; ++i)
    if (rewards[i].laugh.has_value()) {
      laugh_idx.push_back(i);
      laugh_vals.push_back(*rewards[i].laugh);
    }
  std::vector<double> laugh_z(g, 0.0);
  if (laugh_idx.size() >= 2) {
    const std::vector<double> z = regularize_dim(laugh_vals);
    for (std::size_t k = 0; k < laugh_idx.size(); ++k)
      laugh_z[laugh_idx[k]] = z[k];
  }

  std::vector<double> fused(g, 0.0);
  for (std::size_t i = 0; i < g; ++i)
    fused[i] = weights.cer * cer_z[i] + weights.sim * sim_z[i] +
               weights.emo * emo_z[i] + weights.laugh * laugh_z[i];
  return fused;
}

/// Overall regularization: a second z-score over the fused rewards. The
/// degenerate case is the "zero advantages" condition that dynamic sampling
/// watches for.
inline std::vector<double> group_advantages(const std::vector<double>& fused) {
  return regularize_dim(fused);
}

/// Full ladder: individual regularization -> weighted fusion -> overall
/// regularization.
inline std::vector<double> compute_group_advantages(
    const std::vector<RewardVector>& rewards, const RewardWeights& weights) {
  return group_advantages(fuse(rewards, weights));
}

/// True when the group's advantages would be all zeros. With exclude_sim the
/// SIM weight is forced to 0 first, so variance coming only from SIM does
/// not count as heterogeneous.
inline bool is_homogeneous(const std::vector<RewardVector>& rewards,
                           const RewardWeights& weights, bool exclude_sim) {
  RewardWeights w = weights;
  if (exclude_sim) w.sim = 0.0;
  const std::vector<double> fused = fuse(rewards, w);
  const double mean = detail::mean_of(fused);
  return detail::population_std(fused, mean) < kDegenerateStd;
}

/// Laughter reward rule: applicable only when the text has two or more
/// consecutive laughter words AND the detector found a laughter segment.
/// The reward is 1 when ASR transcribed the segment as a deletion (empty
/// string) and 0 when it produced text.
inline std::optional<double> laughter_reward(
    std::string_view t, const std::set<std::string>& laughter_words,
    text::Lang lang, const std::vector<audio::Segment>& detector_segments,
    std::string_view asr_segment_text) {
  const std::vector<std::string> units = phoneme::split_units(t, lang);
  bool consecutive = false;
  for (std::size_t i = 0; i + 1 < units.size(); ++i)
    if (laughter_words.count(units[i]) && laughter_words.count(units[i + 1])) {
      consecutive = true;
      break;
    }
  if (!consecutive || detector_segments.empty()) return std::nullopt;
  bool empty = true;
  for (char c : asr_segment_text)
    if (!std::isspace(static_cast<unsigned char>(c))) empty = false;
  return empty ? 1.0 : 0.0;
}

inline const std::set<std::string>& default_laughter_words() {
  static const std::set<std::string> words = {"哈", "嘿", "呵", "ha", "hey",
                                              "haha", "heh"};
  return words;
}

inline double cosine_similarity(const std::vector<double>& a,
                                const std::vector<double>& b) {
  if (a.empty() || b.empty() || a.size() != b.size()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

// ---------------------------------------------------------------------------
// Audio-side reward backends. Production models sit behind these interfaces;
// the stubs are table-driven by clip source_id for deterministic tests.

class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::vector<double> embed(const audio::AudioClip& clip) = 0;
};

class EmotionClassifier {
 public:
  virtual ~EmotionClassifier() = default;
  virtual double score(const audio::AudioClip& clip) = 0;  // in [0, 1]
};

class LaughterDetector {
 public:
  virtual ~LaughterDetector() = default;
  virtual std::vector<audio::Segment> detect(const audio::AudioClip& clip) = 0;
};

class TableEmbeddingProvider final : public EmbeddingProvider {
 public:
  explicit TableEmbeddingProvider(
      std::map<std::string, std::vector<double>> table)
      : table_(std::move(table)) {}
  std::vector<double> embed(const audio::AudioClip& clip) override {
    const auto it = table_.find(clip.source_id);
    if (it == table_.end())
      throw BackendError("embedding stub: unknown clip '" + clip.source_id +
                         "'");
    return it->second;
  }

 private:
  std::map<std::string, std::vector<double>> table_;
};

/// Emotion stub; scores cluster near 0 and 1, mirroring the bimodal
/// distribution real classifiers produce.
class TableEmotionClassifier final : public EmotionClassifier {
 public:
  explicit TableEmotionClassifier(std::map<std::string, double> table)
      : table_(std::move(table)) {}
  double score(const audio::AudioClip& clip) override {
    const auto it = table_.find(clip.source_id);
    if (it == table_.end())
      throw BackendError("emotion stub: unknown clip '" + clip.source_id +
                         "'");
    return it->second;
  }

 private:
  std::map<std::string, double> table_;
};

class TableLaughterDetector final : public LaughterDetector {
 public:
  explicit TableLaughterDetector(
      std::map<std::string, std::vector<audio::Segment>> table)
      : table_(std::move(table)) {}
  std::vector<audio::Segment> detect(const audio::AudioClip& clip) override {
    const auto it = table_.find(clip.source_id);
    return it == table_.end() ? std::vector<audio::Segment>{} : it->second;
  }

 private:
  std::map<std::string, std::vector<audio::Segment>> table_;
};

}  // namespace dataforge::rl
