// bsm/handwriting/pen_stream.hpp

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

#ifndef BSM_HANDWRITING_PEN_STREAM_HPP
#define BSM_HANDWRITING_PEN_STREAM_HPP

#include <string>
#include <vector>

#include "bsm/core/common.hpp"
#include "bsm/core/csv.hpp"

namespace bsm::handwriting {

constexpr double kNominalSampleRate = 180.0;  // Hz

struct PenSample {
  double t = 0.0;         // seconds
  double x = 0.0;         // tablet units
  double y = 0.0;
  double pressure = 0.0;  // device units, 0 iff in air
  double azimuth = 0.0;   // radians
  double altitude = 0.0;  // radians
  bool on_surface = false;
};

/// Contiguous run of samples sharing a pen state.
struct Stroke {
  enum class Kind { on_surface, in_air };
  Kind kind = Kind::on_surface;
  std::vector<PenSample> samples;

  void validate() const {
    require(samples.size() >= 2, "Stroke: needs at least 2 samples");
  }
};

/// Parses a pen-stream CSV `t,x,y,pressure,azimuth,altitude,state` with
/// state 0 = in air, 1 = on surface. Enforces strictly increasing time
/// and the pressure/pen-state consistency rule (pressure is zero exactly
/// when the pen is in the air).
inline std::vector<PenSample> parse_pen_stream(const std::string& path) {
  const csv::Table t = csv::read_file(path);
  require(t.header == std::vector<std::string>({"t", "x", "y", "pressure",
                                                "azimuth", "altitude",
                                                "state"}),
          "pen stream '" + path +
              "': expected header 't,x,y,pressure,azimuth,altitude,state'");
  std::vector<PenSample> samples;
  samples.reserve(t.rows.size());
  double prev_t = -std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string ctx =
        "pen stream '" + path + "' row " + std::to_string(r + 1);
    require(row.size() == 7, ctx + ": wrong column count");
    PenSample s;
    s.t = csv::parse_double(row[0], ctx);
    s.x = csv::parse_double(row[1], ctx);
    s.y = csv::parse_double(row[2], ctx);
    s.pressure = csv::parse_double(row[3], ctx);
    s.azimuth = csv::parse_double(row[4], ctx);
    s.altitude = csv::parse_double(row[5], ctx);
    const long state = csv::parse_int(row[6], ctx);
    require(state == 0 || state == 1, ctx + ": state must be 0 or 1");
    s.on_surface = state == 1;
    if (!(s.t > prev_t))
      throw ValidationError(ctx + ": non-monotone timestamp");
    prev_t = s.t;
    require(s.pressure >= 0.0, ctx + ": negative pressure");
    if (s.on_surface && s.pressure == 0.0)
      throw ValidationError(ctx + ": on-surface sample with zero pressure");
    if (!s.on_surface && s.pressure != 0.0)
      throw ValidationError(ctx + ": in-air sample with non-zero pressure");
    samples.push_back(s);
  }
  return samples;
}

/// Maximal constant-pen-state runs. Runs of a single sample are absorbed
/// into the previous stroke (or into the following run at the start), so
/// every stroke keeps at least 2 samples.
inline std::vector<Stroke> segment_strokes(const std::vector<PenSample>& samples) {
  require(samples.size() >= 2, "segment_strokes: need at least 2 samples");
  // Split into maximal runs first.
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // [begin, end)
  std::size_t i = 0;
  while (i < samples.size()) {
    std::size_t j = i + 1;
    while (j < samples.size() && samples[j].on_surface == samples[i].on_surface)
      ++j;
    runs.emplace_back(i, j);
    i = j;
  }

  std::vector<Stroke> strokes;
  std::vector<PenSample> pending;  // leading singleton(s) merged forward
  for (const auto& [b, e] : runs) {
    const std::size_t len = e - b;
    if (len == 1 && !strokes.empty() && pending.empty()) {
      strokes.back().samples.push_back(samples[b]);
      continue;
    }
    Stroke stroke;
    stroke.kind = samples[b].on_surface ? Stroke::Kind::on_surface
                                        : Stroke::Kind::in_air;
    stroke.samples = pending;
    pending.clear();
    stroke.samples.insert(stroke.samples.end(),
                          samples.begin() + static_cast<std::ptrdiff_t>(b),
                          samples.begin() + static_cast<std::ptrdiff_t>(e));
    if (stroke.samples.size() == 1) {
      pending = stroke.samples;  // orphan head, merge into the next run
      continue;
    }
    strokes.push_back(std::move(stroke));
  }
  if (!pending.empty() && !strokes.empty())
    strokes.back().samples.insert(strokes.back().samples.end(),
                                  pending.begin(), pending.end());
  for (const auto& s : strokes) s.validate();
  return strokes;
}

}  // namespace bsm::handwriting

#endif  // BSM_HANDWRITING_PEN_STREAM_HPP
