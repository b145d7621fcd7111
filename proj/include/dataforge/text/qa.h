// dataforge/text/qa.h

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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dataforge/audio/clip.h"
#include "dataforge/error.h"
#include "dataforge/text/edit_distance.h"
#include "dataforge/text/normalize.h"

namespace dataforge::text {

/// Outcome of the double-check retention gate.
struct QaVerdict {
  std::vector<double> rates;
  bool kept = false;
  double threshold = kRetentionThreshold;
};

/// Pluggable speech recognizer. Production backends sit behind this
/// signature; tests use the deterministic table stub below.
class AsrBackend {
 public:
  virtual ~AsrBackend() = default;
  virtual std::string name() const = 0;
  virtual std::string transcribe(const audio::AudioClip& clip) = 0;
};

/// Table-driven stub keyed by clip source_id.
class TableAsrBackend final : public AsrBackend {
 public:
  TableAsrBackend(std::string name, std::map<std::string, std::string> table)
      : name_(std::move(name)), table_(std::move(table)) {}

  std::string name() const override { return name_; }

  std::string transcribe(const audio::AudioClip& clip) override {
    const auto it = table_.find(clip.source_id);
    if (it == table_.end())
      throw BackendError(name_ + ": no transcript for '" + clip.source_id +
                         "'");
    return it->second;
  }

  void set(const std::string& source_id, const std::string& transcript) {
    table_[source_id] = transcript;
  }

 private:
  std::string name_;
  std::map<std::string, std::string> table_;
};

/// Double-check retention gate: both backends transcribe the clip, the error
/// rate of each hypothesis is computed against the normalized reference, and
/// the utterance is kept only when every rate is strictly below threshold.
inline QaVerdict double_check_filter(std::string_view utterance_text,
                                     const audio::AudioClip& clip,
                                     AsrBackend& backend_a,
                                     AsrBackend& backend_b, Lang lang,
                                     double threshold = kRetentionThreshold) {
  const std::vector<std::string> ref = text_normalize(utterance_text, lang);
  QaVerdict verdict;
  verdict.threshold = threshold;
  verdict.kept = true;
  for (AsrBackend* backend : {&backend_a, &backend_b}) {
    std::string hyp_text;
    try {
      hyp_text = backend->transcribe(clip);
    } catch (const BackendError&) {
      throw;
    } catch (const std::exception& e) {
      throw BackendError(backend->name() + ": " + e.what());
    }
    const std::vector<std::string> hyp = text_normalize(hyp_text, lang);
    const double rate = error_rate(edit_distance(ref, hyp));
    verdict.rates.push_back(rate);
    if (!(rate < threshold)) verdict.kept = false;
  }
  return verdict;
}

}  // namespace dataforge::text
