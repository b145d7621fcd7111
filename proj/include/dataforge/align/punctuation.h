// dataforge/align/punctuation.h

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
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/error.h"
#include "dataforge/text/normalize.h"
#include "dataforge/utf8.h"

#include <json.hpp>

namespace dataforge::align {

/// One transcript character time-aligned to its audio span.
struct CharAlignment {
  std::string unit;
  double start_s = 0.0;
  double end_s = 0.0;

  double duration_s() const { return end_s - start_s; }
};

struct DurationStats {
  double mean = 0.0;
  double variance = 0.0;  // population variance, seconds^2
};

inline DurationStats duration_stats(const std::vector<CharAlignment>& aligns) {
  if (aligns.empty()) throw EmptyAlignment("no character alignments");
  double sum = 0.0;
  for (const auto& a : aligns) sum += a.duration_s();
  const double mean = sum / static_cast<double>(aligns.size());
  double sq = 0.0;
  for (const auto& a : aligns) {
    const double d = a.duration_s() - mean;
    sq += d * d;
  }
  return {mean, sq / static_cast<double>(aligns.size())};
}

inline constexpr double kPunctVarianceCoeff = 2.6;

/// Pause threshold: mean + 2.6 * variance. The variance form is the written
/// rule; use_std switches to the dimensionally conventional mean + 2.6 * std.
inline double punct_threshold(double mean, double variance,
                              bool use_std = false) {
  return mean + kPunctVarianceCoeff * (use_std ? std::sqrt(variance) : variance);
}

inline double punct_threshold(const DurationStats& stats,
                              bool use_std = false) {
  return punct_threshold(stats.mean, stats.variance, use_std);
}

/// Re-punctuates text from inter-character pauses. For every adjacent pair
/// of aligned characters: a gap above threshold keeps the existing marks (or
/// inserts a comma when there are none), a gap at or below it removes them.
/// Terminal punctuation after the last character is always retained, as is
/// anything before the first.
inline std::string optimize_punctuation(
    std::string_view t, const std::vector<CharAlignment>& aligns,
    double threshold, text::Lang lang) {
  const std::vector<std::string> cps = utf8::split_codepoints(t);
  struct Piece {
    std::string ch;
    bool punct;
  };
  std::vector<Piece> pieces;
  pieces.reserve(cps.size());
  for (const auto& c : cps) {
    std::size_t pos = 0;
    const char32_t cp = utf8::decode_one(c, pos);
    pieces.push_back({c, utf8::is_punctuation(cp)});
  }

  std::vector<std::size_t> char_pos;  // indices of non-punctuation pieces
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (!pieces[i].punct) char_pos.push_back(i);
  if (char_pos.size() != aligns.size())
    throw AlignmentMismatch("text has " + std::to_string(char_pos.size()) +
                            " characters but alignment has " +
                            std::to_string(aligns.size()));
  for (std::size_t k = 0; k < char_pos.size(); ++k)
    if (pieces[char_pos[k]].ch != aligns[k].unit)
      throw AlignmentMismatch("character '" + pieces[char_pos[k]].ch +
                              "' does not match aligned unit '" +
                              aligns[k].unit + "' at position " +
                              std::to_string(k));

  const std::string comma = lang == text::Lang::zh ? "，" : ",";
  std::string out;
  // leading punctuation, untouched
  for (std::size_t i = 0; !char_pos.empty() && i < char_pos.front(); ++i)
    out += pieces[i].ch;
  for (std::size_t k = 0; k < char_pos.size(); ++k) {
    out += pieces[char_pos[k]].ch;
    const bool last = k + 1 == char_pos.size();
    std::string between;
    const std::size_t stop = last ? pieces.size() : char_pos[k + 1];
    for (std::size_t i = char_pos[k] + 1; i < stop; ++i)
      between += pieces[i].ch;
    if (last) {
      out += between;  // terminal punctuation survives
      break;
    }
    const double gap = aligns[k + 1].start_s - aligns[k].end_s;
    if (gap > threshold) out += between.empty() ? comma : between;
  }
  if (char_pos.empty())
    for (const auto& p : pieces) out += p.ch;
  return out;
}

/// Alignment files are JSONL: one {char, start_s, end_s} object per line.
inline std::vector<CharAlignment> load_alignments(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open alignment file: " + path);
  std::vector<CharAlignment> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("char") || !j.contains("start_s") ||
        !j.contains("end_s"))
      throw ParseError("bad alignment record at " + path + ":" +
                       std::to_string(line_no));
    out.push_back({j["char"].get<std::string>(), j["start_s"].get<double>(),
                   j["end_s"].get<double>()});
  }
  return out;
}

}  // namespace dataforge::align
