// bsm/speech/phonological.hpp

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

#ifndef BSM_SPEECH_PHONOLOGICAL_HPP
#define BSM_SPEECH_PHONOLOGICAL_HPP

#include <string>

#include "bsm/core/csv.hpp"
#include "bsm/core/frame_sequence.hpp"

namespace bsm::speech {

constexpr int kNumPhonologicalClasses = 18;

/// Ingests a precomputed phonological-posterior stream: a CSV with a time
/// column followed by 18 per-class posterior columns. The frame period is
/// inferred from the time column. Posterior estimation itself is outside
/// this toolkit.
inline FrameSequence load_phonological(const std::string& path) {
  const csv::Table t = csv::read_file(path, /*expect_header=*/true);
  require(t.header.size() == kNumPhonologicalClasses + 1,
          "phonological '" + path + "': wrong column count (expected time + " +
              std::to_string(kNumPhonologicalClasses) + " posteriors)");
  require(!t.rows.empty(), "phonological '" + path + "': no data rows");

  FrameSequence out;
  out.frames.resize(static_cast<Eigen::Index>(t.rows.size()),
                    kNumPhonologicalClasses);
  double prev_time = -std::numeric_limits<double>::infinity();
  double first_time = 0.0, last_time = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    require(row.size() == kNumPhonologicalClasses + 1,
            "phonological '" + path + "': wrong column count in row " +
                std::to_string(r + 1));
    const double time = csv::parse_double(row[0], "phonological time");
    if (!(time > prev_time))
      throw ValidationError("phonological '" + path +
                            "': non-monotone time column");
    prev_time = time;
    if (r == 0) first_time = time;
    last_time = time;
    for (int c = 0; c < kNumPhonologicalClasses; ++c) {
      const double v = csv::parse_double(row[static_cast<std::size_t>(c + 1)],
                                         "phonological posterior");
      if (v < 0.0 || v > 1.0)
        throw ValidationError("phonological '" + path + "': posterior " +
                              std::to_string(v) + " outside [0, 1]");
      out.frames(static_cast<Eigen::Index>(r), c) = v;
    }
  }
  out.frame_period =
      t.rows.size() > 1
          ? (last_time - first_time) / static_cast<double>(t.rows.size() - 1)
          : 0.0;
  out.source = "speech/phonological";
  out.validate();
  return out;
}

}  // namespace bsm::speech

#endif  // BSM_SPEECH_PHONOLOGICAL_HPP
