// dataforge/phoneme/lexicon.h

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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dataforge/error.h"
#include "dataforge/utf8.h"

namespace dataforge::phoneme {

enum class LexiconKind { polyphone, rare };

inline LexiconKind parse_kind(std::string_view s) {
  if (s == "polyphone") return LexiconKind::polyphone;
  if (s == "rare") return LexiconKind::rare;
  throw ParseError("unknown lexicon kind: " + std::string(s));
}

inline const char* kind_name(LexiconKind k) {
  return k == LexiconKind::polyphone ? "polyphone" : "rare";
}

struct LexiconEntry {
  std::string phonemes;  // space-separated symbols, e.g. "zhong4 yao4"
  LexiconKind kind = LexiconKind::polyphone;
};

/// Pronunciation table for polyphones and rare words. Lookup is exact on the
/// surface string; longest-match scanning lives in g2p.h. Reads may run
/// concurrently; add/remove require external serialization (single writer).
class Lexicon {
 public:
  void add(std::string surface, std::string phonemes, LexiconKind kind) {
    if (surface.empty()) throw ParseError("empty lexicon surface");
    if (phonemes.empty())
      throw ParseError("empty phoneme sequence for '" + surface + "'");
    const std::size_t units = surface_units(surface);
    entries_[std::move(surface)] = LexiconEntry{std::move(phonemes), kind};
    if (units > max_units_) max_units_ = units;
  }

  bool remove(const std::string& surface) {
    return entries_.erase(surface) > 0;
  }

  const LexiconEntry* find(const std::string& surface) const {
    const auto it = entries_.find(surface);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool contains(const std::string& surface) const {
    return entries_.count(surface) > 0;
  }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Upper bound on entry length in text units, for longest-match scans.
  /// Not lowered on remove; only ever an upper bound.
  std::size_t max_match_units() const { return max_units_ == 0 ? 1 : max_units_; }

  const std::map<std::string, LexiconEntry>& entries() const {
    return entries_;
  }

  /// Unit count of a surface: words when it contains spaces, code points
  /// otherwise.
  static std::size_t surface_units(std::string_view surface) {
    if (surface.find(' ') != std::string_view::npos) {
      std::size_t words = 1;
      for (char c : surface)
        if (c == ' ') ++words;
      return words;
    }
    return utf8::decode(surface).size();
  }

 private:
  std::map<std::string, LexiconEntry> entries_;
  std::size_t max_units_ = 0;
};

struct LexiconLoadResult {
  Lexicon lexicon;
  std::vector<std::string> warnings;
};

/// Loads a TSV lexicon: surface <tab> phonemes <tab> kind. A surface listed
/// twice keeps the last entry and emits a warning.
inline LexiconLoadResult lexicon_load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open lexicon file: " + path);
  LexiconLoadResult result;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos
                               ? std::string::npos
                               : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      throw ParseError("malformed lexicon line " + std::to_string(line_no) +
                       " of " + path);
    const std::string surface = line.substr(0, t1);
    const std::string phonemes = line.substr(t1 + 1, t2 - t1 - 1);
    LexiconKind kind;
    try {
      kind = parse_kind(line.substr(t2 + 1));
    } catch (const ParseError&) {
      throw ParseError("bad kind at lexicon line " + std::to_string(line_no) +
                       " of " + path);
    }
    if (surface.empty() || phonemes.empty())
      throw ParseError("malformed lexicon line " + std::to_string(line_no) +
                       " of " + path);
    if (result.lexicon.contains(surface))
      result.warnings.push_back("duplicate surface '" + surface + "' at line " +
                                std::to_string(line_no) +
                                " overrides the earlier entry");
    result.lexicon.add(surface, phonemes, kind);
  }
  return result;
}

inline void lexicon_save(const std::string& path, const Lexicon& lexicon) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw ParseError("cannot write lexicon file: " + path);
  for (const auto& [surface, entry] : lexicon.entries())
    out << surface << '\t' << entry.phonemes << '\t' << kind_name(entry.kind)
        << '\n';
}

}  // namespace dataforge::phoneme
