// bsm/gait/cwt.hpp

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

#ifndef BSM_GAIT_CWT_HPP
#define BSM_GAIT_CWT_HPP

#include <vector>

#include "bsm/core/common.hpp"

namespace bsm::gait {

constexpr int kNumScales = 16;
constexpr double kScaleFreqLo = 0.3;  // Hz
constexpr double kScaleFreqHi = 12.0;

/// Scale-by-time energy map of a continuous wavelet transform.
struct Scalogram {
  Eigen::MatrixXd energy;            // n_scales x T, squared magnitude
  std::vector<double> pseudo_freqs;  // Hz per scale row
};

/// 16 log-spaced pseudo-frequencies over the 0.3-12 Hz gait band.
inline std::vector<double> default_scalogram_freqs() {
  return log_spaced(kScaleFreqLo, kScaleFreqHi, kNumScales);
}

/// CWT against the first derivative of a Gaussian, L1-normalized so that a
/// tone responds maximally on the scale row tuned to its frequency.
/// Pseudo-frequency f maps to scale s = fs / (2 pi f) samples; the wavelet
/// is truncated at 4 standard deviations and applied as a same-size
/// zero-padded convolution.
inline Scalogram cwt_scalogram(const Eigen::VectorXd& x, double fs,
                               const std::vector<double>& pseudo_freqs =
                                   default_scalogram_freqs()) {
  require(x.size() >= 1, "cwt_scalogram: empty window");
  require(fs > 0.0, "cwt_scalogram: non-positive sample rate");
  require(static_cast<double>(x.size()) / fs >= 1.0,
          "cwt_scalogram: window shorter than 1 s");
  require(!pseudo_freqs.empty(), "cwt_scalogram: no scales");

  const Eigen::Index n = x.size();
  Scalogram sg;
  sg.pseudo_freqs = pseudo_freqs;
  sg.energy.resize(static_cast<Eigen::Index>(pseudo_freqs.size()), n);

  for (std::size_t si = 0; si < pseudo_freqs.size(); ++si) {
    const double f = pseudo_freqs[si];
    require(f > 0.0, "cwt_scalogram: non-positive pseudo-frequency");
    const double scale = fs / (kTwoPi * f);  // samples
    const auto half = std::max<Eigen::Index>(
        1, static_cast<Eigen::Index>(std::ceil(4.0 * scale)));
    std::vector<double> psi(static_cast<std::size_t>(2 * half + 1));
    double l1 = 0.0;
    for (Eigen::Index k = -half; k <= half; ++k) {
      const double u = static_cast<double>(k) / scale;
      const double v = -u * std::exp(-0.5 * u * u);
      psi[static_cast<std::size_t>(k + half)] = v;
      l1 += std::abs(v);
    }
    if (l1 > 0.0)
      for (double& v : psi) v /= l1;

    for (Eigen::Index i = 0; i < n; ++i) {
      double acc = 0.0;
      const Eigen::Index lo = std::max<Eigen::Index>(0, i - half);
      const Eigen::Index hi = std::min<Eigen::Index>(n - 1, i + half);
      for (Eigen::Index j = lo; j <= hi; ++j)
        acc += x(j) * psi[static_cast<std::size_t>(j - i + half)];
      sg.energy(static_cast<Eigen::Index>(si), i) = acc * acc;
    }
  }
  return sg;
}

}  // namespace bsm::gait

#endif  // BSM_GAIT_CWT_HPP
