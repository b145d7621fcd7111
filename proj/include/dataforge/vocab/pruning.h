// dataforge/vocab/pruning.h

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
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/error.h"
#include "dataforge/utf8.h"

namespace dataforge::vocab {

struct VocabEntry {
  std::int64_t token_id = 0;
  std::string surface;

  bool operator==(const VocabEntry&) const = default;
};

/// Code points in the CJK Unified Ideographs ranges.
inline int chinese_char_count(std::string_view surface) {
  int count = 0;
  std::size_t pos = 0;
  while (pos < surface.size())
    if (utf8::is_cjk_ideograph(utf8::decode_one(surface, pos))) ++count;
  return count;
}

struct PruneResult {
  std::vector<VocabEntry> kept;
  std::vector<VocabEntry> removed;
};

/// Drops tokens composed of more than two Chinese characters; everything
/// else is retained in the original order.
inline PruneResult prune_vocab(const std::vector<VocabEntry>& entries) {
  PruneResult result;
  for (const VocabEntry& e : entries) {
    if (chinese_char_count(e.surface) >= 3)
      result.removed.push_back(e);
    else
      result.kept.push_back(e);
  }
  return result;
}

inline constexpr double kSpeechTokenRateHz = 25.0;

/// Speech token count at the 25 Hz token rate, rounded half-up.
inline std::int64_t speech_token_count(double duration_s) {
  if (duration_s < 0 || !std::isfinite(duration_s))
    throw InvalidDuration("negative or non-finite duration");
  return static_cast<std::int64_t>(
      std::floor(kSpeechTokenRateHz * duration_s + 0.5));
}

inline constexpr double kRatioLo = 2.0;
inline constexpr double kRatioHi = 20.0;

struct RatioCheck {
  double ratio = 0.0;
  bool accepted = false;
};

/// Speech-to-text length ratio gate over the closed interval [lo, hi].
inline RatioCheck ratio_check(std::int64_t n_text_tokens,
                              std::int64_t n_speech_tokens,
                              double lo = kRatioLo, double hi = kRatioHi) {
  if (n_text_tokens <= 0) throw EmptyText("ratio undefined for empty text");
  RatioCheck rc;
  rc.ratio = static_cast<double>(n_speech_tokens) /
             static_cast<double>(n_text_tokens);
  rc.accepted = rc.ratio >= lo && rc.ratio <= hi;
  return rc;
}

/// Vocabulary files are TSV: token_id <tab> surface, one token per line.
inline std::vector<VocabEntry> load_vocab(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open vocab file: " + path);
  std::vector<VocabEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("missing tab in vocab line " + std::to_string(line_no) +
                       " of " + path);
    VocabEntry e;
    try {
      e.token_id = std::stoll(line.substr(0, tab));
    } catch (const std::exception&) {
      throw ParseError("bad token id in vocab line " +
                       std::to_string(line_no) + " of " + path);
    }
    e.surface = line.substr(tab + 1);
    if (e.surface.empty())
      throw ParseError("empty surface in vocab line " +
                       std::to_string(line_no) + " of " + path);
    entries.push_back(std::move(e));
  }
  return entries;
}

inline void save_vocab(const std::string& path,
                       const std::vector<VocabEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot write vocab file: " + path);
  for (const VocabEntry& e : entries)
    out << e.token_id << '\t' << e.surface << '\n';
}

}  // namespace dataforge::vocab
