// bsm/gait/recording.hpp

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

#ifndef BSM_GAIT_RECORDING_HPP
#define BSM_GAIT_RECORDING_HPP

#include <string>
#include <vector>

#include "bsm/core/common.hpp"
#include "bsm/core/csv.hpp"

namespace bsm::gait {

constexpr int kNumChannels = 6;  // 3 accelerometer + 3 gyroscope
constexpr double kNominalSampleRate = 100.0;

// Windowing defaults: short windows for spectral features, long ones for
// the nonlinear estimators.
constexpr double kHarmonicWindowSeconds = 3.0;
constexpr double kNonlinearWindowSeconds = 10.0;
constexpr double kWindowOverlap = 0.5;

/// Six-channel inertial record from one foot during one task.
struct InertialRecording {
  Eigen::MatrixXd channels;  // N x 6: ax, ay, az, gx, gy, gz
  double sample_rate = kNominalSampleRate;
  std::string foot;
  std::string task;

  Eigen::Index num_samples() const { return channels.rows(); }
  double duration() const {
    return static_cast<double>(num_samples()) / sample_rate;
  }

  void validate() const {
    require(sample_rate > 0.0, "InertialRecording: non-positive sample rate");
    require(channels.cols() == kNumChannels,
            "InertialRecording: expected 6 channels");
    require(channels.rows() >= 2, "InertialRecording: too few samples");
    if (!all_finite(channels))
      throw ValidationError("InertialRecording: non-finite samples");
  }
};

/// Loads a gait CSV `t,ax,ay,az,gx,gy,gz`; the rate is inferred from the
/// time column.
inline InertialRecording load_gait_csv(const std::string& path) {
  const csv::Table t = csv::read_file(path);
  require(t.header == std::vector<std::string>({"t", "ax", "ay", "az", "gx",
                                                "gy", "gz"}),
          "gait '" + path + "': expected header 't,ax,ay,az,gx,gy,gz'");
  require(t.rows.size() >= 2, "gait '" + path + "': too few rows");
  InertialRecording rec;
  rec.channels.resize(static_cast<Eigen::Index>(t.rows.size()), kNumChannels);
  double prev_t = -std::numeric_limits<double>::infinity();
  double first_t = 0.0, last_t = 0.0;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string ctx = "gait '" + path + "' row " + std::to_string(r + 1);
    require(row.size() == kNumChannels + 1, ctx + ": wrong column count");
    const double time = csv::parse_double(row[0], ctx);
    if (!(time > prev_t)) throw ValidationError(ctx + ": non-monotone time");
    prev_t = time;
    if (r == 0) first_t = time;
    last_t = time;
    for (int c = 0; c < kNumChannels; ++c)
      rec.channels(static_cast<Eigen::Index>(r), c) =
          csv::parse_double(row[static_cast<std::size_t>(c + 1)], ctx);
  }
  rec.sample_rate =
      static_cast<double>(t.rows.size() - 1) / (last_t - first_t);
  rec.validate();
  return rec;
}

/// One fixed-length multichannel window.
struct SignalWindow {
  Eigen::MatrixXd samples;  // n x 6
  double start = 0.0;       // seconds
  double sample_rate = kNominalSampleRate;
};

/// Fixed-length windows with fractional overlap; the trailing remainder
/// that does not fill a window is dropped.
inline std::vector<SignalWindow> window_signal(const InertialRecording& rec,
                                               double length_s,
                                               double overlap = kWindowOverlap) {
  rec.validate();
  require(length_s > 0.0, "window_signal: non-positive window length");
  require(overlap >= 0.0 && overlap < 1.0,
          "window_signal: overlap must be in [0, 1)");
  const auto win = static_cast<Eigen::Index>(std::lround(length_s * rec.sample_rate));
  require(win >= 2, "window_signal: window too short");
  if (win > rec.num_samples())
    throw ValidationError("window_signal: recording shorter than one window");
  const auto step = std::max<Eigen::Index>(
      1, static_cast<Eigen::Index>(std::lround((1.0 - overlap) * win)));
  std::vector<SignalWindow> windows;
  for (Eigen::Index start = 0; start + win <= rec.num_samples(); start += step) {
    SignalWindow w;
    w.samples = rec.channels.middleRows(start, win);
    w.start = static_cast<double>(start) / rec.sample_rate;
    w.sample_rate = rec.sample_rate;
    windows.push_back(std::move(w));
  }
  return windows;
}

}  // namespace bsm::gait

#endif  // BSM_GAIT_RECORDING_HPP
