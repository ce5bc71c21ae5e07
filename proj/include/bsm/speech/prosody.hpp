// bsm/speech/prosody.hpp

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

#ifndef BSM_SPEECH_PROSODY_HPP
#define BSM_SPEECH_PROSODY_HPP

#include <vector>

#include "bsm/core/frame_sequence.hpp"
#include "bsm/speech/pitch.hpp"

namespace bsm::speech {

constexpr int kProsodyNodes = 6;  // node values of the degree-5 interpolant
constexpr int kProsodyDim = 2 * kProsodyNodes + 1;  // 13

namespace detail {

/// Samples a per-frame contour at `kProsodyNodes` equidistant points over
/// normalized segment time, by linear interpolation in frame-index space.
/// The node values parameterize the degree-5 Lagrange interpolant.
inline std::array<double, kProsodyNodes> contour_nodes(
    const std::vector<double>& contour) {
  std::array<double, kProsodyNodes> nodes{};
  const std::size_t n = contour.size();
  for (int j = 0; j < kProsodyNodes; ++j) {
    const double pos = static_cast<double>(j) / (kProsodyNodes - 1) *
                       static_cast<double>(n - 1);
    const auto k = static_cast<std::size_t>(std::floor(pos));
    const double w = pos - static_cast<double>(k);
    nodes[static_cast<std::size_t>(j)] =
        k + 1 < n ? (1.0 - w) * contour[k] + w * contour[k + 1] : contour[k];
  }
  return nodes;
}

}  // namespace detail

/// Per-voiced-segment 13-vector: 6 node values of the log-F0 contour,
/// 6 of the log-energy contour, and the segment duration in seconds.
inline FrameSequence prosody_features(const SpeechRecording& rec,
                                      const std::vector<VoicedSegment>& segments,
                                      const F0Contour& contour) {
  rec.validate_for_features();
  require(!segments.empty(), "prosody_features: no voiced segments");
  const double fs = rec.sample_rate;
  const auto frame_len =
      static_cast<std::size_t>(std::lround(contour.frame_length * fs));
  const auto hop = static_cast<std::size_t>(std::lround(contour.hop * fs));

  std::vector<Eigen::VectorXd> rows;
  for (const auto& seg : segments) {
    if (seg.num_frames < static_cast<std::size_t>(kProsodyNodes))
      throw ValidationError(
          "prosody_features: voiced segment too short for 6 nodes");
    std::vector<double> log_f0, log_energy;
    for (std::size_t k = 0; k < seg.num_frames; ++k) {
      const std::size_t fr = seg.first_frame + k;
      log_f0.push_back(std::log(contour.f0[fr]));
      const std::size_t w0 = fr * hop;
      const std::size_t w1 = std::min(w0 + frame_len, rec.samples.size());
      double e = 0.0;
      for (std::size_t i = w0; i < w1; ++i)
        e += rec.samples[i] * rec.samples[i];
      log_energy.push_back(std::log(e + 1e-300));
    }
    const auto f0_nodes = detail::contour_nodes(log_f0);
    const auto en_nodes = detail::contour_nodes(log_energy);
    Eigen::VectorXd row(kProsodyDim);
    for (int j = 0; j < kProsodyNodes; ++j) {
      row(j) = f0_nodes[static_cast<std::size_t>(j)];
      row(kProsodyNodes + j) = en_nodes[static_cast<std::size_t>(j)];
    }
    row(2 * kProsodyNodes) = seg.duration();
    rows.push_back(row);
  }

  FrameSequence out;
  out.frames.resize(static_cast<Eigen::Index>(rows.size()), kProsodyDim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    out.frames.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  out.frame_period = 0.0;  // one row per segment
  out.source = "speech/prosody";
  out.validate();
  return out;
}

}  // namespace bsm::speech

#endif  // BSM_SPEECH_PROSODY_HPP
