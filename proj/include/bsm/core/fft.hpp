// bsm/core/fft.hpp

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

#ifndef BSM_CORE_FFT_HPP
#define BSM_CORE_FFT_HPP

#include <complex>
#include <vector>

#include "bsm/core/common.hpp"

namespace bsm {

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// In-place iterative radix-2 FFT. Size must be a power of two.
inline void fft_inplace(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw ValidationError("fft_inplace: size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -kTwoPi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

inline std::vector<double> hann_window(std::size_t n) {
  std::vector<double> w(n, 1.0);
  if (n < 2) return w;
  for (std::size_t i = 0; i < n; ++i)
    w[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) /
                                static_cast<double>(n - 1));
  return w;
}

/// One-sided power spectrum |X_k|^2 for k = 0..nfft/2 of a Hann-windowed,
/// zero-padded signal. nfft = 0 picks the next power of two >= signal size.
inline std::vector<double> power_spectrum(const std::vector<double>& x,
                                          std::size_t nfft = 0,
                                          bool window = true) {
  if (x.empty()) throw ValidationError("power_spectrum: empty signal");
  if (nfft == 0) nfft = next_pow2(x.size());
  require(nfft >= x.size(), "power_spectrum: nfft smaller than signal");
  std::vector<std::complex<double>> buf(nfft, 0.0);
  if (window) {
    const std::vector<double> w = hann_window(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i] * w[i];
  } else {
    for (std::size_t i = 0; i < x.size(); ++i) buf[i] = x[i];
  }
  fft_inplace(buf);
  std::vector<double> p(nfft / 2 + 1);
  for (std::size_t k = 0; k <= nfft / 2; ++k) p[k] = std::norm(buf[k]);
  return p;
}

/// Frequency of bin k in a spectrum of size nfft at rate fs.
inline double bin_freq(std::size_t k, std::size_t nfft, double fs) {
  return fs * static_cast<double>(k) / static_cast<double>(nfft);
}

/// Sum of power-spectrum bins whose frequency falls in [f_lo, f_hi).
inline double band_power(const std::vector<double>& spec, std::size_t nfft,
                         double fs, double f_lo, double f_hi) {
  double e = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double f = bin_freq(k, nfft, fs);
    if (f >= f_lo && f < f_hi) e += spec[k];
  }
  return e;
}

}  // namespace bsm

#endif  // BSM_CORE_FFT_HPP
