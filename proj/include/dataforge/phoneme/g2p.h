// dataforge/phoneme/g2p.h

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

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dataforge/error.h"
#include "dataforge/phoneme/lexicon.h"
#include "dataforge/text/normalize.h"
#include "dataforge/utf8.h"

namespace dataforge::phoneme {

/// Per-unit fallback pronunciations (unit -> space-separated symbols).
using BaseDict = std::map<std::string, std::string>;

/// Pronunciation assigned to units with no lexicon or base-dict coverage.
inline constexpr const char* kUnkPhoneme = "UNK";

/// Text units: single code points for zh, whitespace words for en.
inline std::vector<std::string> split_units(std::string_view t,
                                            text::Lang lang) {
  if (lang == text::Lang::zh) return utf8::split_codepoints(t);
  std::vector<std::string> units;
  std::string word;
  std::size_t pos = 0;
  while (pos < t.size()) {
    const std::size_t start = pos;
    const char32_t cp = utf8::decode_one(t, pos);
    if (utf8::is_whitespace(cp)) {
      if (!word.empty()) {
        units.push_back(word);
        word.clear();
      }
    } else {
      word.append(t.substr(start, pos - start));
    }
  }
  if (!word.empty()) units.push_back(word);
  return units;
}

inline std::string join_units(const std::vector<std::string>& units,
                              std::size_t begin, std::size_t end,
                              text::Lang lang) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (lang == text::Lang::en && i > begin) out += ' ';
    out += units[i];
  }
  return out;
}

/// A lexicon hit covering units [begin, end).
struct LexiconSpan {
  std::size_t begin = 0;
  std::size_t end = 0;
  const LexiconEntry* entry = nullptr;
};

/// Deterministic longest-match scan: at each position the longest surface
/// present in the lexicon wins; unmatched positions advance by one unit.
inline std::vector<LexiconSpan> lexicon_cover(
    const std::vector<std::string>& units, const Lexicon& lexicon,
    text::Lang lang) {
  std::vector<LexiconSpan> spans;
  if (lexicon.empty()) return spans;
  const std::size_t max_units = lexicon.max_match_units();
  std::size_t i = 0;
  while (i < units.size()) {
    std::size_t matched = 0;
    const LexiconEntry* entry = nullptr;
    const std::size_t cap = std::min(max_units, units.size() - i);
    for (std::size_t len = cap; len >= 1; --len) {
      entry = lexicon.find(join_units(units, i, i + len, lang));
      if (entry != nullptr) {
        matched = len;
        break;
      }
    }
    if (matched > 0) {
      spans.push_back({i, i + matched, entry});
      i += matched;
    } else {
      ++i;
    }
  }
  return spans;
}

inline std::vector<std::string> split_symbols(std::string_view phonemes) {
  std::vector<std::string> symbols;
  std::istringstream iss{std::string(phonemes)};
  std::string sym;
  while (iss >> sym) symbols.push_back(sym);
  return symbols;
}

/// Complete phoneme list aligned one-to-one with the text units. Lexicon
/// matches take precedence over the base dictionary; unknown units map to
/// UNK. A multi-unit match distributes its symbols contiguously across the
/// span, earlier units taking the larger chunks when counts differ.
inline std::vector<std::string> g2p(const std::vector<std::string>& units,
                                    const Lexicon& lexicon,
                                    const BaseDict& base_dict,
                                    text::Lang lang) {
  std::vector<std::string> out(units.size());
  std::vector<bool> covered(units.size(), false);
  for (const LexiconSpan& span : lexicon_cover(units, lexicon, lang)) {
    const std::vector<std::string> symbols = split_symbols(span.entry->phonemes);
    const std::size_t k = span.end - span.begin;
    const std::size_t m = symbols.size();
    std::size_t next = 0;
    for (std::size_t t = 0; t < k; ++t) {
      std::size_t take = m / k + (t < m % k ? 1 : 0);
      std::string chunk;
      for (std::size_t s = 0; s < take && next < m; ++s, ++next) {
        if (!chunk.empty()) chunk += ' ';
        chunk += symbols[next];
      }
      out[span.begin + t] = chunk.empty() ? kUnkPhoneme : chunk;
      covered[span.begin + t] = true;
    }
  }
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (covered[i]) continue;
    const auto it = base_dict.find(units[i]);
    out[i] = it == base_dict.end() ? kUnkPhoneme : it->second;
  }
  return out;
}

/// Base dictionaries are TSV: unit <tab> phonemes.
inline BaseDict load_base_dict(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open base dict: " + path);
  BaseDict dict;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
      throw ParseError("malformed base dict line " + std::to_string(line_no) +
                       " of " + path);
    dict[line.substr(0, tab)] = line.substr(tab + 1);
  }
  return dict;
}

}  // namespace dataforge::phoneme
