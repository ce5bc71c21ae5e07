// bsm/speech/phonation.hpp

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

#ifndef BSM_SPEECH_PHONATION_HPP
#define BSM_SPEECH_PHONATION_HPP

#include <vector>

#include "bsm/core/frame_sequence.hpp"
#include "bsm/speech/pitch.hpp"

namespace bsm::speech {

constexpr int kPhonationDim = 7;  // jitter, shimmer, APQ, PPQ, dF0, ddF0, logE

/// One glottal-cycle landmark: the cycle-start position (an upward zero
/// crossing, fractional samples) and the peak height within the cycle.
struct PitchMark {
  double position;
  double amplitude;
};

namespace detail {

/// Cycle marking over one voiced segment, guided by the F0 contour.
/// Cycle boundaries are the upward zero crossings of the mean-removed
/// signal, each located nearest to the previous mark plus the local
/// period and interpolated to sub-sample precision, so that inter-mark
/// intervals track the instantaneous period directly. The amplitude of a
/// cycle is the maximum of the mean-removed signal within it.
inline std::vector<PitchMark> mark_cycles(const std::vector<double>& x,
                                          double fs, const F0Contour& contour,
                                          const VoicedSegment& seg) {
  const auto s0 = static_cast<std::size_t>(std::lround(seg.start * fs));
  const auto s1 = std::min(x.size(),
                           static_cast<std::size_t>(std::lround(seg.end * fs)));
  std::vector<PitchMark> marks;
  if (s1 <= s0 + 2) return marks;

  double mean = 0.0;
  for (std::size_t i = s0; i < s1; ++i) mean += x[i];
  mean /= static_cast<double>(s1 - s0);
  auto v = [&](std::size_t i) { return x[i] - mean; };
  // Fractional position of the upward zero crossing in [i, i+1), or -1.
  auto crossing_at = [&](std::size_t i) -> double {
    if (i + 1 >= s1) return -1.0;
    if (!(v(i) <= 0.0 && v(i + 1) > 0.0)) return -1.0;
    const double denom = v(i + 1) - v(i);
    return static_cast<double>(i) + (denom > 0.0 ? -v(i) / denom : 0.0);
  };

  auto period_at = [&](double sample_pos) {
    auto frame = static_cast<std::size_t>(sample_pos / (contour.hop * fs));
    frame = std::min(frame, contour.num_frames() - 1);
    std::size_t fr = std::max(frame, seg.first_frame);
    fr = std::min(fr, seg.first_frame + seg.num_frames - 1);
    const double f0 = contour.f0[fr];
    return fs / (f0 > 0.0 ? f0 : 0.5 * (kF0Min + kF0Max));
  };

  // First mark: earliest upward crossing within one period of the start.
  const double t0 = period_at(static_cast<double>(s0));
  const std::size_t lim =
      std::min(s1 - 1, s0 + static_cast<std::size_t>(std::ceil(t0)) + 1);
  double first = -1.0;
  for (std::size_t i = s0; i < lim; ++i) {
    first = crossing_at(i);
    if (first >= 0.0) break;
  }
  if (first < 0.0) return marks;
  marks.push_back({first, 0.0});

  // Guided walk: pick the crossing nearest the expected next boundary.
  while (true) {
    const double period = period_at(marks.back().position);
    const double expected = marks.back().position + period;
    const double radius = 0.35 * period;
    const auto lo = static_cast<std::size_t>(std::max(
        std::ceil(expected - radius), marks.back().position + 2.0));
    const auto hi = static_cast<std::size_t>(
        std::min(std::floor(expected + radius), static_cast<double>(s1 - 2)));
    if (lo >= hi) break;
    double best = -1.0;
    for (std::size_t i = lo; i <= hi; ++i) {
      const double c = crossing_at(i);
      if (c < 0.0) continue;
      if (best < 0.0 || std::abs(c - expected) < std::abs(best - expected))
        best = c;
    }
    if (best < 0.0 || best <= marks.back().position + 1.0) break;
    marks.push_back({best, 0.0});
  }

  // Cycle amplitudes: peak of the mean-removed signal within each cycle.
  for (std::size_t m = 0; m + 1 < marks.size(); ++m) {
    const auto a = static_cast<std::size_t>(std::ceil(marks[m].position));
    const auto b = std::min(
        s1, static_cast<std::size_t>(std::ceil(marks[m + 1].position)));
    double peak = 0.0;
    for (std::size_t i = a; i < b; ++i) peak = std::max(peak, v(i));
    marks[m].amplitude = peak;
  }
  if (marks.size() >= 2) {
    // Last mark inherits the peak of the remaining tail of its cycle.
    const auto a = static_cast<std::size_t>(std::ceil(marks.back().position));
    double peak = 0.0;
    for (std::size_t i = a; i < s1; ++i) peak = std::max(peak, v(i));
    marks.back().amplitude =
        peak > 0.0 ? peak : marks[marks.size() - 2].amplitude;
  }
  return marks;
}

inline double mean_abs_consecutive_diff_ratio(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double mean = 0.0, acc = 0.0;
  for (double t : v) mean += t;
  mean /= static_cast<double>(v.size());
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    acc += std::abs(v[i + 1] - v[i]);
  acc /= static_cast<double>(v.size() - 1);
  return mean > 0.0 ? acc / mean : 0.0;
}

/// Five-point perturbation quotient (zero when fewer than 5 values).
inline double quotient5(const std::vector<double>& v) {
  if (v.size() < 5) return 0.0;
  double mean = 0.0;
  for (double t : v) mean += t;
  mean /= static_cast<double>(v.size());
  if (!(mean > 0.0)) return 0.0;
  double acc = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 2; i + 2 < v.size(); ++i) {
    double local = 0.0;
    for (std::size_t j = i - 2; j <= i + 2; ++j) local += v[j];
    local /= 5.0;
    acc += std::abs(v[i] - local);
    ++count;
  }
  return acc / static_cast<double>(count) / mean;
}

}  // namespace detail

/// Per-40-ms-voiced-frame phonation descriptors: jitter, shimmer, 5-point
/// amplitude and pitch perturbation quotients, first and second F0
/// derivatives, and log-energy.
inline FrameSequence phonation_features(const SpeechRecording& rec,
                                        const F0Contour& contour) {
  rec.validate_for_features();
  const auto segments = segment_voiced(contour);
  if (segments.empty())
    throw ValidationError("phonation_features: no voiced content");
  const double fs = rec.sample_rate;
  const auto frame_len =
      static_cast<std::size_t>(std::lround(contour.frame_length * fs));
  const auto hop = static_cast<std::size_t>(std::lround(contour.hop * fs));

  std::vector<Eigen::VectorXd> rows;
  for (const auto& seg : segments) {
    const auto marks = detail::mark_cycles(rec.samples, fs, contour, seg);
    for (std::size_t k = 0; k < seg.num_frames; ++k) {
      const std::size_t fr = seg.first_frame + k;
      const std::size_t w0 = fr * hop;
      const std::size_t w1 = std::min(w0 + frame_len, rec.samples.size());
      if (w1 <= w0) continue;

      std::vector<double> periods, amps;
      for (std::size_t m = 0; m < marks.size(); ++m) {
        const double p = marks[m].position;
        if (p < static_cast<double>(w0) || p >= static_cast<double>(w1))
          continue;
        amps.push_back(std::max(marks[m].amplitude, 0.0));
        if (m + 1 < marks.size() &&
            marks[m + 1].position < static_cast<double>(w1))
          periods.push_back(marks[m + 1].position - p);
      }

      // Contour derivatives by central differences inside the voiced run.
      const double f_prev = k > 0 ? contour.f0[fr - 1] : contour.f0[fr];
      const double f_cur = contour.f0[fr];
      const double f_next =
          k + 1 < seg.num_frames ? contour.f0[fr + 1] : contour.f0[fr];
      const double df0 = (f_next - f_prev) /
                         ((k > 0 && k + 1 < seg.num_frames ? 2.0 : 1.0) *
                          contour.hop);
      const double ddf0 =
          (f_next - 2.0 * f_cur + f_prev) / (contour.hop * contour.hop);

      double energy = 0.0;
      for (std::size_t i = w0; i < w1; ++i)
        energy += rec.samples[i] * rec.samples[i];

      Eigen::VectorXd row(kPhonationDim);
      row(0) = periods.size() >= 2
                   ? detail::mean_abs_consecutive_diff_ratio(periods)
                   : 0.0;
      row(1) = detail::mean_abs_consecutive_diff_ratio(amps);
      row(2) = detail::quotient5(amps);
      row(3) = detail::quotient5(periods);
      row(4) = df0;
      row(5) = ddf0;
      row(6) = std::log(energy + 1e-300);
      rows.push_back(row);
    }
  }
  require(!rows.empty(), "phonation_features: no voiced frames");

  FrameSequence out;
  out.frames.resize(static_cast<Eigen::Index>(rows.size()), kPhonationDim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.frames.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  out.frame_period = contour.hop;
  out.source = "speech/phonation";
  out.validate();
  return out;
}

}  // namespace bsm::speech

#endif  // BSM_SPEECH_PHONATION_HPP
