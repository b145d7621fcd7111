// dataforge/phoneme/hybrid.h

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
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/phoneme/g2p.h"
#include "dataforge/rng.h"
#include "dataforge/text/edit_distance.h"
#include "dataforge/utf8.h"

#include <json.hpp>

namespace dataforge::phoneme {

enum class UnitKind { TEXT, PHONEME };

/// One unit of a mixed text/phoneme model input. payload carries the surface
/// for TEXT units and the phoneme symbols for PHONEME units; surface always
/// keeps the original text so the source is reconstructable.
struct HybridUnit {
  UnitKind kind = UnitKind::TEXT;
  std::string payload;
  std::string surface;
  std::size_t origin_index = 0;
};

struct HybridSequence {
  std::vector<HybridUnit> units;
  text::Lang lang = text::Lang::zh;

  /// Source text: TEXT payloads plus the original surfaces of PHONEME units,
  /// in origin order (en units rejoin with single spaces).
  std::string reconstruct_text() const {
    std::string out;
    for (const HybridUnit& u : units) {
      if (lang == text::Lang::en && !out.empty()) out += ' ';
      out += u.kind == UnitKind::TEXT ? u.payload : u.surface;
    }
    return out;
  }

  std::size_t phoneme_count() const {
    std::size_t n = 0;
    for (const HybridUnit& u : units)
      if (u.kind == UnitKind::PHONEME) ++n;
    return n;
  }

  /// Human rendering: PHONEME units bracketed, e.g. 重{zhong4}要.
  std::string render() const {
    std::string out;
    for (const HybridUnit& u : units) {
      if (lang == text::Lang::en && !out.empty()) out += ' ';
      if (u.kind == UnitKind::PHONEME)
        out += u.surface + "{" + u.payload + "}";
      else
        out += u.payload;
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const HybridUnit& u : units)
      arr.push_back({{"kind", u.kind == UnitKind::TEXT ? "TEXT" : "PHONEME"},
                     {"payload", u.payload},
                     {"origin_index", u.origin_index}});
    return arr;
  }
};

/// Units that carry pronounceable letters; digits and punctuation have no
/// G2P and never take part in random replacement.
inline bool is_pronounceable_unit(std::string_view unit) {
  std::size_t pos = 0;
  while (pos < unit.size()) {
    const char32_t cp = utf8::decode_one(unit, pos);
    if (utf8::is_cjk_ideograph(cp) || utf8::is_ascii_alpha(cp)) return true;
  }
  return false;
}

struct AugmentParams {
  double p = 0.2;          // stage-1 trigger probability
  double max_ratio = 0.5;  // stage-2 uniform ratio ceiling
};

/// Per-unit protection mask: true where a lexicon match covers the unit.
inline std::vector<bool> lexicon_protection(
    const std::vector<std::string>& units, const Lexicon& lexicon,
    text::Lang lang) {
  std::vector<bool> mask(units.size(), false);
  for (const LexiconSpan& span : lexicon_cover(units, lexicon, lang))
    for (std::size_t i = span.begin; i < span.end; ++i) mask[i] = true;
  return mask;
}

/// Two-stage probabilistic phoneme replacement for training data.
///
/// Stage 1 triggers with probability p (one uniform01 draw). Stage 2 draws
/// ratio ~ Uniform(0, max_ratio) (one uniform01 draw scaled), converts
/// k = floor(ratio * n_eligible) eligible units to PHONEME, chosen uniformly
/// without replacement (k uniform_int draws via partial Fisher-Yates).
/// Lexicon-covered units and units without letters are never eligible.
inline HybridSequence train_augment(const std::vector<std::string>& units,
                                    Rng& rng, const Lexicon& lexicon,
                                    const BaseDict& base_dict, text::Lang lang,
                                    AugmentParams params = {}) {
  HybridSequence seq;
  seq.lang = lang;
  seq.units.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i)
    seq.units.push_back({UnitKind::TEXT, units[i], units[i], i});

  const bool triggered = rng.chance(params.p);
  if (!triggered) return seq;

  const std::vector<bool> protect = lexicon_protection(units, lexicon, lang);
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < units.size(); ++i)
    if (!protect[i] && is_pronounceable_unit(units[i])) eligible.push_back(i);

  const double ratio = rng.uniform01() * params.max_ratio;
  const std::size_t k = static_cast<std::size_t>(
      std::floor(ratio * static_cast<double>(eligible.size())));
  if (k == 0) return seq;

  const std::vector<std::string> phonemes = g2p(units, lexicon, base_dict, lang);
  for (const std::size_t pick : rng.sample_indices(eligible.size(), k)) {
    const std::size_t i = eligible[pick];
    seq.units[i].kind = UnitKind::PHONEME;
    seq.units[i].payload = phonemes[i];
  }
  return seq;
}

/// Inference-time hybridization: a full phoneme list is generated, then every
/// unit covered by a polyphone/rare lexicon match is replaced with its
/// aligned phonemes; all other units stay TEXT. Deterministic.
inline HybridSequence inference_hybridize(std::string_view t,
                                          const Lexicon& lexicon,
                                          const BaseDict& base_dict,
                                          text::Lang lang) {
  const std::vector<std::string> units = split_units(t, lang);
  const std::vector<std::string> phonemes = g2p(units, lexicon, base_dict, lang);
  const std::vector<bool> replace = lexicon_protection(units, lexicon, lang);
  HybridSequence seq;
  seq.lang = lang;
  seq.units.reserve(units.size());
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (replace[i])
      seq.units.push_back({UnitKind::PHONEME, phonemes[i], units[i], i});
    else
      seq.units.push_back({UnitKind::TEXT, units[i], units[i], i});
  }
  return seq;
}

/// Phoneme error rate over symbol sequences.
inline double per(const std::vector<std::string>& ref_phonemes,
                  const std::vector<std::string>& hyp_phonemes) {
  return text::error_rate(text::edit_distance(ref_phonemes, hyp_phonemes));
}

}  // namespace dataforge::phoneme
