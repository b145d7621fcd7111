// tests/oracles.h

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

// Independent reference implementations used as test oracles. These must
// stay decoupled from the library code paths they are checking.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracles {

/// Top-down recursive Levenshtein distance with memoization. Distance-only
/// and recursion-shaped, unlike the library's bottom-up tabulation.
template <typename Token>
class RecursiveEditDistance {
 public:
  int distance(const std::vector<Token>& ref, const std::vector<Token>& hyp) {
    memo_.assign((ref.size() + 1) * (hyp.size() + 1), -1);
    width_ = hyp.size() + 1;
    return solve(ref, hyp, ref.size(), hyp.size());
  }

 private:
  int solve(const std::vector<Token>& ref, const std::vector<Token>& hyp,
            std::size_t i, std::size_t j) {
    if (i == 0) return static_cast<int>(j);
    if (j == 0) return static_cast<int>(i);
    int& slot = memo_[i * width_ + j];
    if (slot >= 0) return slot;
    const int sub = solve(ref, hyp, i - 1, j - 1) +
                    (ref[i - 1] == hyp[j - 1] ? 0 : 1);
    const int del = solve(ref, hyp, i - 1, j) + 1;
    const int ins = solve(ref, hyp, i, j - 1) + 1;
    return slot = std::min({sub, del, ins});
  }

  std::vector<int> memo_;
  std::size_t width_ = 1;
};

/// Exhaustive enumeration of every edit script for tiny sequences; returns
/// the set of (subs, dels, ins) decompositions with minimal total cost.
template <typename Token>
std::vector<std::tuple<int, int, int>> optimal_decompositions(
    const std::vector<Token>& ref, const std::vector<Token>& hyp) {
  std::vector<std::tuple<int, int, int>> all;
  int best = 1 << 20;
  const std::function<void(std::size_t, std::size_t, int, int, int)> walk =
      [&](std::size_t i, std::size_t j, int s, int d, int n) {
        if (s + d + n > best) return;
        if (i == ref.size() && j == hyp.size()) {
          const int total = s + d + n;
          if (total < best) {
            best = total;
            all.clear();
          }
          if (total == best) all.emplace_back(s, d, n);
          return;
        }
        if (i < ref.size() && j < hyp.size())
          walk(i + 1, j + 1, s + (ref[i] == hyp[j] ? 0 : 1), d, n);
        if (i < ref.size()) walk(i + 1, j, s, d + 1, n);
        if (j < hyp.size()) walk(i, j + 1, s, d, n + 1);
      };
  walk(0, 0, 0, 0, 0);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

/// Linear-interpolation resampling oracle in long double over the same
/// sample grid the library defines (output i reads source at i * src/dst).
inline std::vector<double> resample_oracle(const std::vector<double>& in,
                                           int src_rate, int dst_rate) {
  const std::size_t n_out = static_cast<std::size_t>(std::llround(
      static_cast<long double>(in.size()) * dst_rate / src_rate));
  std::vector<double> out(n_out);
  for (std::size_t i = 0; i < n_out; ++i) {
    const long double pos =
        static_cast<long double>(i) * src_rate / dst_rate;
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= in.size()) {
      out[i] = in.back();
      continue;
    }
    const long double frac = pos - static_cast<long double>(lo);
    out[i] = static_cast<double>(in[lo] +
                                 (in[lo + 1] - in[lo]) * frac);
  }
  return out;
}

/// Per-frame RMS computed independently for VAD boundary checks.
inline std::vector<double> frame_rms_oracle(const std::vector<double>& samples,
                                            std::size_t frame_len) {
  std::vector<double> rms;
  for (std::size_t off = 0; off < samples.size(); off += frame_len) {
    const std::size_t end = std::min(samples.size(), off + frame_len);
    long double acc = 0.0;
    for (std::size_t i = off; i < end; ++i)
      acc += static_cast<long double>(samples[i]) * samples[i];
    rms.push_back(static_cast<double>(
        std::sqrt(acc / static_cast<long double>(end - off))));
  }
  return rms;
}

/// Population mean/variance with long double accumulation.
inline std::pair<double, double> mean_var_oracle(
    const std::vector<double>& xs) {
  long double sum = 0.0;
  for (double x : xs) sum += x;
  const long double mean = sum / static_cast<long double>(xs.size());
  long double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {static_cast<double>(mean),
          static_cast<double>(sq / static_cast<long double>(xs.size()))};
}

}  // namespace oracles
