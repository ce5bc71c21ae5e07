// bsm/speech/articulation.hpp

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

#ifndef BSM_SPEECH_ARTICULATION_HPP
#define BSM_SPEECH_ARTICULATION_HPP

#include <array>
#include <vector>

#include "bsm/core/fft.hpp"
#include "bsm/core/frame_sequence.hpp"
#include "bsm/speech/pitch.hpp"

namespace bsm::speech {

constexpr int kNumBarkBands = 22;
constexpr int kNumMfcc = 12;
constexpr int kNumMelFilters = 26;
constexpr int kArticulationDim = kNumBarkBands + 3 * kNumMfcc;  // 58
constexpr double kOnsetHalfSeconds = 0.040;  // 40 ms each side of the border

/// 80 ms of signal around one unvoiced-to-voiced border.
struct OnsetSegment {
  std::vector<double> samples;
  double center_time = 0.0;  // seconds, the border position
};

/// Zwicker critical-band edges truncated at 8 kHz: 22 bands.
inline const std::array<double, kNumBarkBands + 1>& bark_edges() {
  static const std::array<double, kNumBarkBands + 1> edges = {
      0,    100,  200,  300,  400,  510,  630,  770,
      920,  1080, 1270, 1480, 1720, 2000, 2320, 2700,
      3150, 3700, 4400, 5300, 6400, 7700, 8000};
  return edges;
}

/// One onset per unvoiced-to-voiced border: 40 ms to each side of the
/// border, clipped at the recording edges. A segment that starts the
/// recording has no preceding unvoiced frame and produces no onset.
/// The border is placed at the center of the first voiced frame, since a
/// frame turns voiced once voicing covers about half of it.
inline std::vector<OnsetSegment> detect_onsets(const SpeechRecording& rec,
                                               const F0Contour& contour) {
  rec.validate_for_features();
  const auto segments = segment_voiced(contour);
  const double fs = rec.sample_rate;
  std::vector<OnsetSegment> onsets;
  for (const auto& seg : segments) {
    if (seg.first_frame == 0) continue;
    const double border = seg.start + 0.5 * contour.frame_length;
    const auto lo = static_cast<std::size_t>(
        std::max(0.0, std::lround((border - kOnsetHalfSeconds) * fs) * 1.0));
    const auto hi = std::min(
        rec.samples.size(),
        static_cast<std::size_t>(std::lround((border + kOnsetHalfSeconds) * fs)));
    if (hi <= lo) continue;
    OnsetSegment onset;
    onset.center_time = border;
    onset.samples.assign(rec.samples.begin() + static_cast<std::ptrdiff_t>(lo),
                         rec.samples.begin() + static_cast<std::ptrdiff_t>(hi));
    onsets.push_back(std::move(onset));
  }
  return onsets;
}

namespace detail {

inline double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
inline double mel_to_hz(double m) {
  return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0);
}

/// 12 MFCCs of one sub-frame: 26-filter mel bank over 0-8 kHz, log, DCT-II,
/// coefficients 1..12 (the energy coefficient is excluded).
inline std::array<double, kNumMfcc> mfcc_subframe(const std::vector<double>& x,
                                                  double fs) {
  const std::size_t nfft = next_pow2(std::max<std::size_t>(x.size(), 256));
  const std::vector<double> spec = power_spectrum(x, nfft);
  const double mel_max = hz_to_mel(8000.0);
  std::array<double, kNumMelFilters + 2> centers_hz{};
  for (int i = 0; i < kNumMelFilters + 2; ++i)
    centers_hz[static_cast<std::size_t>(i)] =
        mel_to_hz(mel_max * i / (kNumMelFilters + 1));
  std::array<double, kNumMelFilters> loge{};
  for (int m = 0; m < kNumMelFilters; ++m) {
    const double fl = centers_hz[static_cast<std::size_t>(m)];
    const double fc = centers_hz[static_cast<std::size_t>(m + 1)];
    const double fr = centers_hz[static_cast<std::size_t>(m + 2)];
    double e = 0.0;
    for (std::size_t k = 0; k < spec.size(); ++k) {
      const double f = bin_freq(k, nfft, fs);
      double w = 0.0;
      if (f > fl && f < fc)
        w = (f - fl) / (fc - fl);
      else if (f >= fc && f < fr)
        w = (fr - f) / (fr - fc);
      e += w * spec[k];
    }
    loge[static_cast<std::size_t>(m)] = std::log(e + 1e-30);
  }
  std::array<double, kNumMfcc> c{};
  for (int j = 1; j <= kNumMfcc; ++j) {
    double acc = 0.0;
    for (int m = 0; m < kNumMelFilters; ++m)
      acc += loge[static_cast<std::size_t>(m)] *
             std::cos(kPi * j * (m + 0.5) / kNumMelFilters);
    c[static_cast<std::size_t>(j - 1)] = acc;
  }
  return c;
}

inline std::vector<std::array<double, kNumMfcc>> delta(
    const std::vector<std::array<double, kNumMfcc>>& c) {
  const std::size_t n = c.size();
  std::vector<std::array<double, kNumMfcc>> d(n);
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t prev = t > 0 ? t - 1 : 0;
    const std::size_t next = t + 1 < n ? t + 1 : n - 1;
    const double span = next > prev ? static_cast<double>(next - prev) : 1.0;
    for (int j = 0; j < kNumMfcc; ++j)
      d[t][static_cast<std::size_t>(j)] =
          (c[next][static_cast<std::size_t>(j)] -
           c[prev][static_cast<std::size_t>(j)]) /
          span;
  }
  return d;
}

}  // namespace detail

/// Per-onset 58-dimensional vector: 22 log Bark-band energies of the whole
/// segment plus 12 MFCCs and their first two derivatives computed on 25 ms
/// sub-frames and averaged.
inline FrameSequence articulation_features(
    const std::vector<OnsetSegment>& segments, double fs) {
  require(!segments.empty(), "articulation_features: empty onset list");
  require(fs == static_cast<double>(kExpectedSampleRate),
          "articulation_features: expected a 16 kHz signal");
  const auto sub_len = static_cast<std::size_t>(std::lround(0.025 * fs));
  const auto sub_hop = static_cast<std::size_t>(std::lround(0.010 * fs));
  const auto& edges = bark_edges();

  FrameSequence out;
  out.frames.resize(static_cast<Eigen::Index>(segments.size()),
                    kArticulationDim);
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& x = segments[s].samples;
    require(!x.empty(), "articulation_features: empty segment");

    const std::size_t nfft = next_pow2(std::max<std::size_t>(x.size(), 256));
    const std::vector<double> spec = power_spectrum(x, nfft);
    for (int b = 0; b < kNumBarkBands; ++b) {
      const double e =
          band_power(spec, nfft, fs, edges[static_cast<std::size_t>(b)],
                     edges[static_cast<std::size_t>(b + 1)]);
      out.frames(static_cast<Eigen::Index>(s), b) = std::log(e + 1e-30);
    }

    std::vector<std::array<double, kNumMfcc>> coeffs;
    if (x.size() <= sub_len) {
      coeffs.push_back(detail::mfcc_subframe(x, fs));
    } else {
      for (std::size_t off = 0; off + sub_len <= x.size(); off += sub_hop)
        coeffs.push_back(detail::mfcc_subframe(
            std::vector<double>(x.begin() + static_cast<std::ptrdiff_t>(off),
                                x.begin() +
                                    static_cast<std::ptrdiff_t>(off + sub_len)),
            fs));
    }
    const auto d1 = detail::delta(coeffs);
    const auto d2 = detail::delta(d1);
    auto put_mean = [&](const std::vector<std::array<double, kNumMfcc>>& v,
                        int col0) {
      for (int j = 0; j < kNumMfcc; ++j) {
        double mean = 0.0;
        for (const auto& row : v) mean += row[static_cast<std::size_t>(j)];
        out.frames(static_cast<Eigen::Index>(s), col0 + j) =
            mean / static_cast<double>(v.size());
      }
    };
    put_mean(coeffs, kNumBarkBands);
    put_mean(d1, kNumBarkBands + kNumMfcc);
    put_mean(d2, kNumBarkBands + 2 * kNumMfcc);
  }
  out.frame_period = 0.0;  // event-based
  out.source = "speech/articulation";
  out.validate();
  return out;
}

}  // namespace bsm::speech

#endif  // BSM_SPEECH_ARTICULATION_HPP
