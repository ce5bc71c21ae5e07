// bsm/core/frame_sequence.hpp

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

#ifndef BSM_CORE_FRAME_SEQUENCE_HPP
#define BSM_CORE_FRAME_SEQUENCE_HPP

#include <string>
#include <vector>

#include "bsm/core/common.hpp"

namespace bsm {

/// Time-ordered matrix of fixed-dimension feature vectors, one row per frame.
/// The universal currency between feature extractors and model trainers.
struct FrameSequence {
  Eigen::MatrixXd frames;     // T x D
  double frame_period = 0.0;  // seconds between rows; 0 = event-based/irregular
  std::string source;         // "modality/feature-set" descriptor

  Eigen::Index num_frames() const { return frames.rows(); }
  Eigen::Index dim() const { return frames.cols(); }

  void validate() const {
    require(frames.rows() >= 1, "FrameSequence: need at least one frame");
    require(frames.cols() >= 1, "FrameSequence: need at least one dimension");
    require(frame_period >= 0.0, "FrameSequence: negative frame period");
    if (!all_finite(frames))
      throw ValidationError("FrameSequence: non-finite entries in '" + source +
                            "'");
  }

  /// Row-wise concatenation; all parts must share the dimension.
  static FrameSequence concat(const std::vector<FrameSequence>& parts) {
    require(!parts.empty(), "FrameSequence::concat: empty input");
    Eigen::Index total = 0;
    const Eigen::Index d = parts.front().dim();
    for (const auto& p : parts) {
      require(p.dim() == d, "FrameSequence::concat: dimension mismatch");
      total += p.num_frames();
    }
    FrameSequence out;
    out.frames.resize(total, d);
    Eigen::Index row = 0;
    for (const auto& p : parts) {
      out.frames.middleRows(row, p.num_frames()) = p.frames;
      row += p.num_frames();
    }
    out.frame_period = parts.front().frame_period;
    out.source = parts.front().source;
    return out;
  }
};

}  // namespace bsm

#endif  // BSM_CORE_FRAME_SEQUENCE_HPP
