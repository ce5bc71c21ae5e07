// bsm/speech/pitch.hpp

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BSM_SPEECH_PITCH_HPP
#define BSM_SPEECH_PITCH_HPP

#include <vector>

#include "bsm/speech/wav.hpp"

namespace bsm::speech {

constexpr double kF0Min = 50.0;
constexpr double kF0Max = 500.0;
constexpr double kFrameSeconds = 0.040;
constexpr double kHopSeconds = 0.010;
constexpr double kVoicingThreshold = 0.45;  // on the normalized autocorr peak
constexpr double kMinVoicedSeconds = 0.060;

/// Per-frame fundamental frequency track; 0 marks an unvoiced frame.
struct F0Contour {
  std::vector<double> f0;  // Hz, 0 = unvoiced
  double hop = kHopSeconds;
  double frame_length = kFrameSeconds;

  std::size_t num_frames() const { return f0.size(); }
  double frame_start(std::size_t i) const {
    return static_cast<double>(i) * hop;
  }

  void validate() const {
    require(hop > 0.0 && frame_length > 0.0, "F0Contour: bad framing");
    for (double v : f0)
      require(v == 0.0 || (v >= kF0Min && v <= kF0Max),
              "F0Contour: voiced value out of the search band");
  }
};

/// Half-open time interval of consecutive voiced frames.
struct VoicedSegment {
  double start = 0.0;  // seconds
  double end = 0.0;
  std::size_t first_frame = 0;
  std::size_t num_frames = 0;

  double duration() const { return end - start; }
};

/// Autocorrelation pitch tracker: 40 ms frames, 10 ms hop, biased
/// normalized autocorrelation searched over the 50-500 Hz lag band with
/// parabolic peak refinement. A frame is voiced when the normalized peak
/// reaches the voicing threshold.
inline F0Contour estimate_f0(const SpeechRecording& rec) {
  rec.validate_for_features();
  const double fs = rec.sample_rate;
  const auto frame_len = static_cast<std::size_t>(std::lround(kFrameSeconds * fs));
  const auto hop = static_cast<std::size_t>(std::lround(kHopSeconds * fs));
  require(rec.samples.size() >= frame_len,
          "estimate_f0: recording shorter than one frame");
  const auto lag_min = static_cast<std::size_t>(std::floor(fs / kF0Max));
  const auto lag_max = static_cast<std::size_t>(std::ceil(fs / kF0Min));
  require(lag_max < frame_len, "estimate_f0: frame too short for the F0 band");

  F0Contour contour;
  const std::size_t n_frames = (rec.samples.size() - frame_len) / hop + 1;
  contour.f0.resize(n_frames, 0.0);
  std::vector<double> frame(frame_len);
  for (std::size_t i = 0; i < n_frames; ++i) {
    const double* src = rec.samples.data() + i * hop;
    double mean = 0.0;
    for (std::size_t j = 0; j < frame_len; ++j) mean += src[j];
    mean /= static_cast<double>(frame_len);
    double r0 = 0.0;
    for (std::size_t j = 0; j < frame_len; ++j) {
      frame[j] = src[j] - mean;
      r0 += frame[j] * frame[j];
    }
    if (r0 < 1e-10) continue;  // digital silence stays unvoiced

    // Biased autocorrelation over the lag band.
    std::vector<double> r(lag_max + 1, 0.0);
    for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
      double acc = 0.0;
      for (std::size_t j = 0; j + lag < frame_len; ++j)
        acc += frame[j] * frame[j + lag];
      r[lag] = acc / r0;
    }
    std::size_t best = lag_min;
    for (std::size_t lag = lag_min + 1; lag <= lag_max; ++lag)
      if (r[lag] > r[best]) best = lag;
    if (r[best] < kVoicingThreshold) continue;

    double lag_refined = static_cast<double>(best);
    if (best > lag_min && best < lag_max) {
      const double a = r[best - 1], b = r[best], c = r[best + 1];
      const double denom = a - 2.0 * b + c;
      if (std::abs(denom) > 1e-12) {
        const double shift = 0.5 * (a - c) / denom;
        if (std::abs(shift) <= 1.0) lag_refined += shift;
      }
    }
    double f0 = fs / lag_refined;
    f0 = std::min(std::max(f0, kF0Min), kF0Max);
    contour.f0[i] = f0;
  }
  return contour;
}

/// Maximal runs of consecutive voiced frames, dropping runs shorter than
/// the minimum voiced-segment length. Sorted and non-overlapping.
inline std::vector<VoicedSegment> segment_voiced(const F0Contour& contour) {
  contour.validate();
  std::vector<VoicedSegment> segments;
  std::size_t i = 0;
  const std::size_t n = contour.num_frames();
  while (i < n) {
    if (contour.f0[i] == 0.0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && contour.f0[j] != 0.0) ++j;
    const std::size_t run = j - i;
    const double duration = static_cast<double>(run) * contour.hop;
    if (duration >= kMinVoicedSeconds - 1e-12) {
      VoicedSegment seg;
      seg.first_frame = i;
      seg.num_frames = run;
      seg.start = contour.frame_start(i);
      seg.end = seg.start + duration;
      segments.push_back(seg);
    }
    i = j;
  }
  return segments;
}

}  // namespace bsm::speech

#endif  // BSM_SPEECH_PITCH_HPP
