// dataforge/text/edit_distance.h

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

#include <cstddef>
#include <vector>

#include "dataforge/error.h"

namespace dataforge::text {

/// Operation counts of a minimal-cost alignment between a reference and a
/// hypothesis sequence, plus the reference length the rate is computed over.
struct EditOps {
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  int ref_len = 0;

  int total() const { return substitutions + deletions + insertions; }

  bool operator==(const EditOps&) const = default;
};

/// Levenshtein alignment with unit costs. Ties are broken deterministically,
/// preferring substitution over insertion over deletion, so the (S, D, I)
/// decomposition is reproducible even when several optimal scripts exist.
template <typename Token>
EditOps edit_distance(const std::vector<Token>& ref,
                      const std::vector<Token>& hyp) {
  struct Cell {
    int cost;
    int subs;
    int dels;
    int ins;
  };
  const std::size_t m = ref.size();
  const std::size_t n = hyp.size();
  std::vector<Cell> prev(n + 1), cur(n + 1);
  for (std::size_t j = 0; j <= n; ++j)
    prev[j] = {static_cast<int>(j), 0, 0, static_cast<int>(j)};
  for (std::size_t i = 1; i <= m; ++i) {
    cur[0] = {static_cast<int>(i), 0, static_cast<int>(i), 0};
    for (std::size_t j = 1; j <= n; ++j) {
      const bool match = ref[i - 1] == hyp[j - 1];
      Cell diag = prev[j - 1];
      diag.cost += match ? 0 : 1;
      diag.subs += match ? 0 : 1;
      Cell ins = cur[j - 1];
      ins.cost += 1;
      ins.ins += 1;
      Cell del = prev[j];
      del.cost += 1;
      del.dels += 1;
      // substitution > insertion > deletion on cost ties
      Cell best = diag;
      if (ins.cost < best.cost) best = ins;
      if (del.cost < best.cost) best = del;
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  const Cell& end = prev[n];
  return EditOps{end.subs, end.dels, end.ins, static_cast<int>(m)};
}

/// (S + D + I) / ref_len. A zero-length reference is only defined when there
/// are no edits at all.
inline double error_rate(const EditOps& ops) {
  if (ops.ref_len == 0) {
    if (ops.total() != 0)
      throw UndefinedRate("error rate undefined for empty reference");
    return 0.0;
  }
  return static_cast<double>(ops.total()) / static_cast<double>(ops.ref_len);
}

/// Retention gate: utterances are kept only when every backend's rate is
/// strictly below this.
inline constexpr double kRetentionThreshold = 0.05;

}  // namespace dataforge::text
