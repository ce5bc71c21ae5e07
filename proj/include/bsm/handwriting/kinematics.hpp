// bsm/handwriting/kinematics.hpp

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

#ifndef BSM_HANDWRITING_KINEMATICS_HPP
#define BSM_HANDWRITING_KINEMATICS_HPP

#include <vector>

#include "bsm/core/frame_sequence.hpp"
#include "bsm/handwriting/pen_stream.hpp"

namespace bsm::handwriting {

constexpr int kKinematicDim = 21;

/// Origin for the radial/angular coordinates: the centroid of the full
/// task trace by default, or a caller-supplied fixed point.
struct OriginPolicy {
  bool use_centroid = true;
  double x = 0.0, y = 0.0;

  static OriginPolicy centroid() { return {}; }
  static OriginPolicy fixed(double px, double py) {
    return {false, px, py};
  }
};

namespace detail {

/// First derivative on actual timestamps: central differences inside,
/// one-sided at the ends.
inline std::vector<double> deriv(const std::vector<double>& t,
                                 const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> d(n, 0.0);
  if (n < 2) return d;
  d[0] = (v[1] - v[0]) / (t[1] - t[0]);
  d[n - 1] = (v[n - 1] - v[n - 2]) / (t[n - 1] - t[n - 2]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = (v[i + 1] - v[i - 1]) / (t[i + 1] - t[i - 1]);
  return d;
}

inline std::vector<double> unwrap(std::vector<double> theta) {
  for (std::size_t i = 1; i < theta.size(); ++i) {
    double delta = theta[i] - theta[i - 1];
    while (delta > kPi) {
      theta[i] -= kTwoPi;
      delta = theta[i] - theta[i - 1];
    }
    while (delta < -kPi) {
      theta[i] += kTwoPi;
      delta = theta[i] - theta[i - 1];
    }
  }
  return theta;
}

}  // namespace detail

/// Per-sample 21-dimensional kinematic vector over all strokes:
/// positions (vertical, horizontal, radial, angular), their velocities and
/// accelerations, pressure/azimuth/altitude and their derivatives, path
/// speed, path acceleration, and the in-air flag. Derivatives use central
/// differences on the actual timestamps; the angular coordinate is
/// unwrapped per stroke before differentiation. Strokes of 2 samples get a
/// zero-order hold on accelerations and are flagged through `warnings`.
inline FrameSequence kinematic_features(const std::vector<Stroke>& strokes,
                                        const OriginPolicy& origin =
                                            OriginPolicy::centroid(),
                                        Warnings* warnings = nullptr) {
  require(!strokes.empty(), "kinematic_features: no strokes");
  for (const auto& s : strokes) s.validate();

  double cx = origin.x, cy = origin.y;
  if (origin.use_centroid) {
    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (const auto& s : strokes)
      for (const auto& p : s.samples) {
        sx += p.x;
        sy += p.y;
        ++n;
      }
    cx = sx / static_cast<double>(n);
    cy = sy / static_cast<double>(n);
  }

  std::size_t total = 0;
  for (const auto& s : strokes) total += s.samples.size();
  FrameSequence out;
  out.frames.resize(static_cast<Eigen::Index>(total), kKinematicDim);

  Eigen::Index row = 0;
  for (const auto& stroke : strokes) {
    const std::size_t n = stroke.samples.size();
    std::vector<double> t(n), x(n), y(n), r(n), theta(n), pressure(n),
        azimuth(n), altitude(n);
    for (std::size_t i = 0; i < n; ++i) {
      const PenSample& p = stroke.samples[i];
      t[i] = p.t;
      x[i] = p.x;
      y[i] = p.y;
      r[i] = std::hypot(p.x - cx, p.y - cy);
      theta[i] = std::atan2(p.y - cy, p.x - cx);
      pressure[i] = p.pressure;
      azimuth[i] = p.azimuth;
      altitude[i] = p.altitude;
    }
    theta = detail::unwrap(theta);

    const auto vx = detail::deriv(t, x), vy = detail::deriv(t, y);
    const auto vr = detail::deriv(t, r), vth = detail::deriv(t, theta);
    std::vector<double> speed(n);
    for (std::size_t i = 0; i < n; ++i) speed[i] = std::hypot(vx[i], vy[i]);

    std::vector<double> ax(n, 0.0), ay(n, 0.0), ar(n, 0.0), ath(n, 0.0),
        aspeed(n, 0.0);
    if (n >= 3) {
      ax = detail::deriv(t, vx);
      ay = detail::deriv(t, vy);
      ar = detail::deriv(t, vr);
      ath = detail::deriv(t, vth);
      aspeed = detail::deriv(t, speed);
    } else {
      warn(warnings,
           "kinematic_features: stroke of 2 samples, accelerations held at 0");
    }
    const auto dp = detail::deriv(t, pressure);
    const auto daz = detail::deriv(t, azimuth);
    const auto dal = detail::deriv(t, altitude);

    const double air = stroke.kind == Stroke::Kind::in_air ? 1.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i, ++row) {
      Eigen::RowVectorXd f(kKinematicDim);
      f << y[i], x[i], r[i], theta[i], vy[i], vx[i], vr[i], vth[i], ay[i],
          ax[i], ar[i], ath[i], pressure[i], azimuth[i], altitude[i], dp[i],
          daz[i], dal[i], speed[i], aspeed[i], air;
      out.frames.row(row) = f;
    }
  }
  out.frame_period = 1.0 / kNominalSampleRate;
  out.source = "handwriting/kinematic";
  out.validate();
  return out;
}

}  // namespace bsm::handwriting

#endif  // BSM_HANDWRITING_KINEMATICS_HPP
