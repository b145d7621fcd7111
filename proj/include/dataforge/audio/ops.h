// dataforge/audio/ops.h

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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dataforge/audio/clip.h"
#include "dataforge/error.h"

namespace dataforge::audio {

/// Multi-channel raw audio as it comes off a container file.
struct RawAudio {
  std::vector<std::vector<double>> channels;
  int sample_rate = 0;
};

/// Default packing targets for the concatenation passes.
inline constexpr double kCoarseTargetSeconds = 600.0;  // ~10 minutes
inline constexpr double kSpeakerCapSeconds = 40.0;

namespace detail {

/// Linear-interpolation resampler. Output sample i is read at source
/// position i * src/dst; the tail clamps to the last source sample.
inline std::vector<double> resample_linear(const std::vector<double>& in,
                                           int src_rate, int dst_rate) {
  if (src_rate == dst_rate) return in;
  const std::size_t n_out = static_cast<std::size_t>(std::llround(
      static_cast<double>(in.size()) * dst_rate / src_rate));
  std::vector<double> out(n_out);
  const double step = static_cast<double>(src_rate) / dst_rate;
  for (std::size_t i = 0; i < n_out; ++i) {
    const double pos = static_cast<double>(i) * step;
    std::size_t lo = static_cast<std::size_t>(pos);
    if (lo >= in.size() - 1) {
      out[i] = in.back();
      continue;
    }
    const double frac = pos - static_cast<double>(lo);
    out[i] = in[lo] + (in[lo + 1] - in[lo]) * frac;
  }
  return out;
}

inline std::size_t sample_index(double t_s, int rate, std::size_t n) {
  const auto idx = static_cast<long long>(std::llround(t_s * rate));
  return std::min<std::size_t>(n, static_cast<std::size_t>(std::max(0LL, idx)));
}

}  // namespace detail

/// Unifies raw audio: channels averaged to mono, linear-resampled to
/// target_rate, peak clamped into [-1, 1].
inline AudioClip standardize(const RawAudio& raw, int target_rate,
                             std::string source_id = {}) {
  if (target_rate <= 0 || raw.sample_rate <= 0)
    throw CorruptAudio("non-positive sample rate");
  if (raw.channels.empty() || raw.channels.front().empty())
    throw EmptyAudio("no samples in input audio");
  const std::size_t len = raw.channels.front().size();
  for (const auto& ch : raw.channels)
    if (ch.size() != len)
      throw CorruptAudio("channel lengths differ");

  std::vector<double> mono(len, 0.0);
  for (const auto& ch : raw.channels)
    for (std::size_t i = 0; i < len; ++i) {
      if (!std::isfinite(ch[i])) throw CorruptAudio("non-finite sample");
      mono[i] += ch[i];
    }
  const double inv = 1.0 / static_cast<double>(raw.channels.size());
  for (auto& s : mono) s *= inv;

  AudioClip clip;
  clip.samples = detail::resample_linear(mono, raw.sample_rate, target_rate);
  clip.sample_rate = target_rate;
  clip.source_id = std::move(source_id);
  for (auto& s : clip.samples) s = std::clamp(s, -1.0, 1.0);
  return clip;
}

/// Energy VAD: frames of frame_ms with RMS >= energy_threshold are speech,
/// adjacent speech frames merge, and silent gaps shorter than min_gap_ms
/// are bridged. Segments come back sorted and non-overlapping.
inline std::vector<Segment> detect_speech(const AudioClip& clip,
                                          double frame_ms,
                                          double energy_threshold,
                                          double min_gap_ms) {
  std::vector<Segment> segments;
  if (clip.samples.empty() || frame_ms <= 0) return segments;
  const std::size_t frame_len = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(frame_ms / 1000.0 *
                                               clip.sample_rate)));
  const std::size_t n = clip.samples.size();
  const double rate = clip.sample_rate;

  bool in_speech = false;
  double seg_start = 0.0;
  for (std::size_t off = 0; off < n; off += frame_len) {
    const std::size_t end = std::min(n, off + frame_len);
    double acc = 0.0;
    for (std::size_t i = off; i < end; ++i)
      acc += clip.samples[i] * clip.samples[i];
    const double rms = std::sqrt(acc / static_cast<double>(end - off));
    const bool speech = rms >= energy_threshold;
    const double t0 = static_cast<double>(off) / rate;
    const double t1 = static_cast<double>(end) / rate;
    if (speech && !in_speech) {
      seg_start = t0;
      in_speech = true;
    } else if (!speech && in_speech) {
      segments.push_back({seg_start, t0});
      in_speech = false;
    }
    if (speech && end == n) segments.push_back({seg_start, t1});
  }

  // bridge sub-threshold gaps
  std::vector<Segment> merged;
  const double min_gap_s = min_gap_ms / 1000.0;
  for (const Segment& seg : segments) {
    if (!merged.empty() && seg.start_s - merged.back().end_s < min_gap_s) {
      merged.back().end_s = seg.end_s;
    } else {
      merged.push_back(seg);
    }
  }
  return merged;
}

/// Greedy in-order packing of speech segments into long clips: segments are
/// appended to the open group until its duration reaches target_s, then the
/// group closes. The last group may come out short.
inline std::vector<AudioClip> coarse_concat(
    const std::vector<std::pair<std::shared_ptr<const AudioClip>, Segment>>&
        segments,
    double target_s = kCoarseTargetSeconds) {
  std::vector<AudioClip> out;
  AudioClip open;
  double open_dur = 0.0;
  const auto close = [&] {
    if (!open.samples.empty()) {
      open.source_id = "coarse-" + std::to_string(out.size());
      out.push_back(std::move(open));
      open = AudioClip{};
      open_dur = 0.0;
    }
  };
  for (const auto& [clip, seg] : segments) {
    if (!clip) continue;
    if (open.sample_rate == 0) open.sample_rate = clip->sample_rate;
    if (clip->sample_rate != open.sample_rate)
      throw SampleRateMismatch("coarse_concat requires a uniform sample rate");
    const std::size_t lo = detail::sample_index(seg.start_s, clip->sample_rate,
                                                clip->samples.size());
    const std::size_t hi = detail::sample_index(seg.end_s, clip->sample_rate,
                                                clip->samples.size());
    open.samples.insert(open.samples.end(), clip->samples.begin() + lo,
                        clip->samples.begin() + hi);
    open_dur += static_cast<double>(hi - lo) / clip->sample_rate;
    if (open_dur >= target_s) close();
  }
  close();
  return out;
}

inline constexpr double kDefaultPeakDb = -3.0;

/// Scales by a single factor so the peak magnitude lands on
/// 10^(target_peak_db/20). Silent clips pass through unchanged.
inline AudioClip normalize_amplitude(const AudioClip& clip,
                                     double target_peak_db = kDefaultPeakDb) {
  double peak = 0.0;
  for (double s : clip.samples) peak = std::max(peak, std::abs(s));
  if (peak < 1e-12) return clip;
  const double target = std::pow(10.0, target_peak_db / 20.0);
  const double scale = target / peak;
  AudioClip out = clip;
  for (auto& s : out.samples) s *= scale;
  return out;
}

/// A packed single-speaker clip; oversize marks a lone fragment that already
/// exceeded the cap and was kept whole rather than truncated.
struct SpeakerClip {
  AudioClip clip;
  bool oversize = false;
};

/// Greedy per-speaker packing: a fragment joins the open clip only while the
/// result stays within cap_s, otherwise the clip closes and a new one opens.
inline std::vector<SpeakerClip> speaker_concat(
    const std::vector<Fragment>& fragments,
    double cap_s = kSpeakerCapSeconds) {
  std::vector<SpeakerClip> out;
  if (fragments.empty()) return out;
  const std::string& speaker = fragments.front().speaker_id;
  for (const Fragment& f : fragments)
    if (f.speaker_id != speaker)
      throw SpeakerMismatch("fragments span speakers '" + speaker + "' and '" +
                            f.speaker_id + "'");

  AudioClip open;
  double open_dur = 0.0;
  const auto close = [&](bool oversize) {
    if (!open.samples.empty()) {
      open.source_id = speaker + "-" + std::to_string(out.size());
      out.push_back({std::move(open), oversize});
      open = AudioClip{};
      open_dur = 0.0;
    }
  };
  for (const Fragment& f : fragments) {
    if (!f.clip) continue;
    const std::size_t lo = detail::sample_index(
        f.segment.start_s, f.clip->sample_rate, f.clip->samples.size());
    const std::size_t hi = detail::sample_index(
        f.segment.end_s, f.clip->sample_rate, f.clip->samples.size());
    const double dur = static_cast<double>(hi - lo) / f.clip->sample_rate;
    if (open.sample_rate == 0) open.sample_rate = f.clip->sample_rate;
    if (f.clip->sample_rate != open.sample_rate)
      throw SampleRateMismatch("speaker_concat requires a uniform sample rate");
    if (!open.samples.empty() && open_dur + dur > cap_s) close(false);
    if (open.samples.empty() && dur > cap_s) {
      open.samples.assign(f.clip->samples.begin() + lo,
                          f.clip->samples.begin() + hi);
      open.sample_rate = f.clip->sample_rate;
      close(true);
      continue;
    }
    open.samples.insert(open.samples.end(), f.clip->samples.begin() + lo,
                        f.clip->samples.begin() + hi);
    open_dur += dur;
  }
  close(false);
  return out;
}

}  // namespace dataforge::audio
