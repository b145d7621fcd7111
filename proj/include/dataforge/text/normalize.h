// dataforge/text/normalize.h

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

#include <string>
#include <string_view>
#include <vector>

#include "dataforge/error.h"
#include "dataforge/utf8.h"

namespace dataforge::text {

enum class Lang { zh, en };

inline Lang parse_lang(std::string_view s) {
  if (s == "zh") return Lang::zh;
  if (s == "en") return Lang::en;
  throw UnsupportedLanguage("unsupported language: " + std::string(s));
}

inline const char* lang_name(Lang lang) {
  return lang == Lang::zh ? "zh" : "en";
}

/// Normalizes text into scoring tokens.
///
/// en: lowercase, punctuation stripped, whitespace-split words (WER units).
/// zh: punctuation and whitespace stripped, one token per code point
///     (CER units). Digits pass through verbatim in both languages.
inline std::vector<std::string> text_normalize(std::string_view raw,
                                               Lang lang) {
  std::vector<std::string> tokens;
  if (lang == Lang::en) {
    std::string word;
    std::size_t pos = 0;
    const auto flush = [&] {
      if (!word.empty()) {
        tokens.push_back(word);
        word.clear();
      }
    };
    while (pos < raw.size()) {
      char32_t cp = utf8::decode_one(raw, pos);
      if (utf8::is_whitespace(cp)) {
        flush();
        continue;
      }
      if (utf8::is_punctuation(cp)) continue;
      if (cp >= 'A' && cp <= 'Z') cp = cp - 'A' + 'a';
      utf8::append(word, cp);
    }
    flush();
  } else {
    std::size_t pos = 0;
    while (pos < raw.size()) {
      const char32_t cp = utf8::decode_one(raw, pos);
      if (utf8::is_whitespace(cp) || utf8::is_punctuation(cp)) continue;
      tokens.push_back(utf8::encode(cp));
    }
  }
  return tokens;
}

}  // namespace dataforge::text
