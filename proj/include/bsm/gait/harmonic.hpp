// bsm/gait/harmonic.hpp

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

#ifndef BSM_GAIT_HARMONIC_HPP
#define BSM_GAIT_HARMONIC_HPP

#include <vector>

#include "bsm/core/fft.hpp"
#include "bsm/gait/cwt.hpp"
#include "bsm/gait/recording.hpp"

namespace bsm::gait {

constexpr int kNumScalogramBands = 8;
constexpr int kHarmonicPerChannel = 17;  // 8 bands + 3 centroids + 3 quartile
                                         // energies + locomotor + freeze + FI
constexpr int kHarmonicDim = kHarmonicPerChannel * kNumChannels;  // 102
constexpr double kLocomotorLo = 0.5, kLocomotorHi = 3.0;  // Hz
constexpr double kFreezeLo = 3.0, kFreezeHi = 8.0;

namespace detail {

/// Aggregates the 16 scalogram rows into 8 log-spaced bands (adjacent
/// pairs) and returns total energy per band.
inline std::array<double, kNumScalogramBands> scalogram_bands(
    const Scalogram& sg) {
  std::array<double, kNumScalogramBands> bands{};
  for (int b = 0; b < kNumScalogramBands; ++b)
    bands[static_cast<std::size_t>(b)] =
        sg.energy.row(2 * b).sum() + sg.energy.row(2 * b + 1).sum();
  return bands;
}

/// Geometric center frequency of aggregated band b.
inline double band_center_freq(const Scalogram& sg, int b) {
  return std::sqrt(sg.pseudo_freqs[static_cast<std::size_t>(2 * b)] *
                   sg.pseudo_freqs[static_cast<std::size_t>(2 * b + 1)]);
}

}  // namespace detail

/// 17 descriptors for one channel of one window:
///  - 8 scalogram band energies (log-spaced over 0.3-12 Hz),
///  - 3 spectral centroids of the band-energy distribution over three
///    octave groups of the bands,
///  - cumulative energies at the 1st, 2nd and 3rd quartiles of the FFT
///    power distribution,
///  - locomotor-band (0.5-3 Hz) and freeze-band (3-8 Hz) energy,
///  - freeze index = freeze energy / locomotor energy.
inline Eigen::VectorXd harmonic_channel_features(const Eigen::VectorXd& x,
                                                 double fs) {
  const double total_sq = x.squaredNorm();
  if (!(total_sq > 0.0))
    throw NumericalError(
        "harmonic_features: all-zero window, freeze index undefined");

  Eigen::VectorXd f(kHarmonicPerChannel);
  const Scalogram sg = cwt_scalogram(x, fs);
  const auto bands = detail::scalogram_bands(sg);
  for (int b = 0; b < kNumScalogramBands; ++b)
    f(b) = bands[static_cast<std::size_t>(b)];

  // Three centroids over octave groups {0..2}, {3..5}, {6..7} of the bands.
  const std::array<std::pair<int, int>, 3> groups = {
      std::pair<int, int>{0, 3}, {3, 6}, {6, 8}};
  for (int g = 0; g < 3; ++g) {
    double num = 0.0, den = 0.0, gmean = 0.0;
    for (int b = groups[static_cast<std::size_t>(g)].first;
         b < groups[static_cast<std::size_t>(g)].second; ++b) {
      const double fc = detail::band_center_freq(sg, b);
      num += fc * bands[static_cast<std::size_t>(b)];
      den += bands[static_cast<std::size_t>(b)];
      gmean += std::log(fc);
    }
    gmean = std::exp(gmean / (groups[static_cast<std::size_t>(g)].second -
                              groups[static_cast<std::size_t>(g)].first));
    f(kNumScalogramBands + g) = den > 0.0 ? num / den : gmean;
  }

  // FFT power spectrum of the Hann-windowed channel.
  std::vector<double> xs(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    xs[static_cast<std::size_t>(i)] = x(i);
  const std::size_t nfft = next_pow2(std::max<std::size_t>(xs.size(), 64));
  const std::vector<double> spec = power_spectrum(xs, nfft);

  // Cumulative energies at the spectral quartiles (DC excluded).
  double total = 0.0;
  for (std::size_t k = 1; k < spec.size(); ++k) total += spec[k];
  for (int q = 1; q <= 3; ++q) {
    const double target = 0.25 * q * total;
    double acc = 0.0;
    for (std::size_t k = 1; k < spec.size(); ++k) {
      acc += spec[k];
      if (acc >= target) break;
    }
    f(kNumScalogramBands + 3 + (q - 1)) = std::min(acc, total);
  }

  const double loco = band_power(spec, nfft, fs, kLocomotorLo, kLocomotorHi);
  const double freeze = band_power(spec, nfft, fs, kFreezeLo, kFreezeHi);
  f(kNumScalogramBands + 6) = loco;
  f(kNumScalogramBands + 7) = freeze;
  f(kNumScalogramBands + 8) =
      freeze / std::max(loco, 1e-12 * std::max(total, 1.0));
  return f;
}

/// Concatenation of the per-channel descriptors over the 6 channels.
inline Eigen::VectorXd harmonic_features(const SignalWindow& window) {
  require(window.samples.cols() == kNumChannels,
          "harmonic_features: expected a 6-channel window");
  Eigen::VectorXd out(kHarmonicDim);
  for (int c = 0; c < kNumChannels; ++c)
    out.segment(c * kHarmonicPerChannel, kHarmonicPerChannel) =
        harmonic_channel_features(window.samples.col(c), window.sample_rate);
  return out;
}

}  // namespace bsm::gait

#endif  // BSM_GAIT_HARMONIC_HPP
