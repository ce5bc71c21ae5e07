// bsm/gait/nonlinear.hpp

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

#ifndef BSM_GAIT_NONLINEAR_HPP
#define BSM_GAIT_NONLINEAR_HPP

#include <algorithm>
#include <vector>

#include "bsm/core/fft.hpp"
#include "bsm/gait/embedding.hpp"
#include "bsm/gait/recording.hpp"

namespace bsm::gait {

constexpr int kNonlinearPerChannel = 6;
constexpr int kNonlinearDim = kNonlinearPerChannel * kNumChannels;  // 36

namespace detail {

inline double chebyshev(const Eigen::MatrixXd& e, long i, long j) {
  double d = 0.0;
  for (Eigen::Index c = 0; c < e.cols(); ++c)
    d = std::max(d, std::abs(e(i, c) - e(j, c)));
  return d;
}

inline double series_std(const std::vector<double>& x) {
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  return std::sqrt(var / static_cast<double>(x.size()));
}

/// Dominant period in samples from the FFT power spectrum (DC excluded);
/// used as the temporal exclusion horizon in the Rosenstein method.
inline long dominant_period(const std::vector<double>& x) {
  const std::size_t nfft = next_pow2(std::max<std::size_t>(x.size(), 64));
  const std::vector<double> spec = power_spectrum(x, nfft);
  std::size_t best = 1;
  for (std::size_t k = 2; k < spec.size(); ++k)
    if (spec[k] > spec[best]) best = k;
  return std::max<long>(1, static_cast<long>(nfft / best));
}

}  // namespace detail

/// Grassberger-Procaccia correlation dimension: slope of log C(r) against
/// log r over the middle third (in log scale) of the observed distance
/// range, with Theiler exclusion of temporal neighbors.
inline double correlation_dimension(const std::vector<double>& x,
                                    const EmbeddingConfig& cfg) {
  require(x.size() >= 1000, "correlation_dimension: need at least 1000 points");
  const Eigen::MatrixXd e = embed(x, cfg);
  const long n = e.rows();
  const long w = cfg.effective_theiler();

  // Pass 1: distance range from a coarse pair subsample.
  double d_min = std::numeric_limits<double>::infinity(), d_max = 0.0;
  const long stride = std::max<long>(1, n / 400);
  for (long i = 0; i < n; i += stride)
    for (long j = i + w + 1; j < n; j += stride) {
      const double d = detail::chebyshev(e, i, j);
      if (d > 0.0) d_min = std::min(d_min, d);
      d_max = std::max(d_max, d);
    }
  if (!(d_max > 0.0) || !std::isfinite(d_min))
    throw NumericalError("correlation_dimension: degenerate distances");
  d_min = std::max(d_min, d_max * 1e-6);

  // Pass 2: histogram of log-distances over all valid pairs.
  constexpr int kBins = 64;
  const double log_lo = std::log(d_min), log_hi = std::log(d_max) + 1e-12;
  const double bin_w = (log_hi - log_lo) / kBins;
  std::vector<double> hist(kBins + 1, 0.0);  // +1 catches underflow at [0]
  double total_pairs = 0.0;
  for (long i = 0; i < n; ++i)
    for (long j = i + w + 1; j < n; ++j) {
      const double d = detail::chebyshev(e, i, j);
      total_pairs += 1.0;
      if (d <= 0.0) {
        hist[0] += 1.0;
        continue;
      }
      int b = static_cast<int>((std::log(d) - log_lo) / bin_w) + 1;
      b = std::min(std::max(b, 0), kBins);
      hist[static_cast<std::size_t>(b)] += 1.0;
    }

  // Cumulative correlation sums at the bin upper edges.
  std::vector<double> log_r, log_c;
  double cum = 0.0;
  for (int b = 0; b <= kBins; ++b) {
    cum += hist[static_cast<std::size_t>(b)];
    if (b == 0) continue;
    const double r_edge = log_lo + b * bin_w;
    if (cum <= 0.0 || cum >= total_pairs) continue;
    log_r.push_back(r_edge);
    log_c.push_back(std::log(cum / total_pairs));
  }
  if (log_r.size() < 4)
    throw NumericalError("correlation_dimension: no scaling region found");

  // Middle third of the usable log-r span.
  const double lo = log_r.front(), hi = log_r.back();
  const double a = lo + (hi - lo) / 3.0, b2 = lo + 2.0 * (hi - lo) / 3.0;
  std::vector<double> fx, fy;
  for (std::size_t i = 0; i < log_r.size(); ++i)
    if (log_r[i] >= a && log_r[i] <= b2) {
      fx.push_back(log_r[i]);
      fy.push_back(log_c[i]);
    }
  if (fx.size() < 3)
    throw NumericalError("correlation_dimension: no scaling region found");
  return fit_slope(fx, fy);
}

/// Largest Lyapunov exponent by the Rosenstein method, in 1/samples:
/// nearest-neighbor divergence curves are averaged in log space and the
/// initial rise is fit with least squares up to the point where the curve
/// has covered 70% of its total rise.
inline double largest_lyapunov(const std::vector<double>& x,
                               const EmbeddingConfig& cfg) {
  cfg.validate();
  const long span = static_cast<long>(cfg.m - 1) * cfg.tau;
  require(static_cast<long>(x.size()) - span >= 200,
          "largest_lyapunov: too few points after embedding");
  const Eigen::MatrixXd e = embed(x, cfg);
  const long n = e.rows();
  const long period = detail::dominant_period(x);
  const long exclude = std::max<long>(period, cfg.effective_theiler());
  const long k_max = std::min<long>(n / 5, std::max<long>(30, 3 * period));

  // Nearest neighbor for each reference point, outside the exclusion zone
  // and with enough future samples to track.
  const long usable = n - k_max;
  if (usable < 10)
    throw NumericalError("largest_lyapunov: series too short to track");
  std::vector<long> nn(static_cast<std::size_t>(usable), -1);
  for (long i = 0; i < usable; ++i) {
    double best = std::numeric_limits<double>::infinity();
    long best_j = -1;
    for (long j = 0; j < usable; ++j) {
      if (std::abs(i - j) <= exclude) continue;
      const double d = detail::chebyshev(e, i, j);
      if (d > 0.0 && d < best) {
        best = d;
        best_j = j;
      }
    }
    nn[static_cast<std::size_t>(i)] = best_j;
  }

  std::vector<double> curve;
  for (long k = 0; k <= k_max; ++k) {
    double acc = 0.0;
    long count = 0;
    for (long i = 0; i < usable; ++i) {
      const long j = nn[static_cast<std::size_t>(i)];
      if (j < 0) continue;
      const double d = detail::chebyshev(e, i + k, j + k);
      if (d > 0.0) {
        acc += std::log(d);
        ++count;
      }
    }
    if (count == 0) break;
    curve.push_back(acc / static_cast<double>(count));
  }
  if (curve.size() < 3)
    throw NumericalError("largest_lyapunov: divergence curve too short");

  const double y0 = curve.front();
  const double y_max = *std::max_element(curve.begin(), curve.end());
  if (!(y_max > y0)) return 0.0;  // no divergence at all
  const double target = y0 + 0.7 * (y_max - y0);
  std::size_t k_fit = 1;
  while (k_fit + 1 < curve.size() && curve[k_fit] < target) ++k_fit;
  k_fit = std::max<std::size_t>(k_fit, 2);

  std::vector<double> fx, fy;
  for (std::size_t k = 0; k <= k_fit; ++k) {
    fx.push_back(static_cast<double>(k));
    fy.push_back(curve[k]);
  }
  return fit_slope(fx, fy);
}

/// Rescaled-range Hurst exponent: slope of log(R/S) over log-spaced block
/// sizes 16..N/4.
inline double hurst(const std::vector<double>& x) {
  const auto n = static_cast<long>(x.size());
  require(n >= 500, "hurst: need at least 500 points");
  if (!(detail::series_std(x) > 0.0))
    throw NumericalError("hurst: constant series has zero range");

  const auto sizes_d = log_spaced(16.0, static_cast<double>(n / 4), 10);
  std::vector<double> fx, fy;
  long prev_size = -1;
  for (double sd : sizes_d) {
    const long size = static_cast<long>(std::lround(sd));
    if (size == prev_size || size < 4) continue;
    prev_size = size;
    const long blocks = n / size;
    if (blocks < 1) continue;
    double rs_sum = 0.0;
    long rs_count = 0;
    for (long b = 0; b < blocks; ++b) {
      const double* seg = x.data() + b * size;
      double mean = 0.0;
      for (long i = 0; i < size; ++i) mean += seg[i];
      mean /= static_cast<double>(size);
      double cum = 0.0, cmin = 0.0, cmax = 0.0, var = 0.0;
      for (long i = 0; i < size; ++i) {
        cum += seg[i] - mean;
        cmin = std::min(cmin, cum);
        cmax = std::max(cmax, cum);
        var += (seg[i] - mean) * (seg[i] - mean);
      }
      const double s = std::sqrt(var / static_cast<double>(size));
      if (s > 0.0) {
        rs_sum += (cmax - cmin) / s;
        ++rs_count;
      }
    }
    if (rs_count == 0) continue;
    fx.push_back(std::log(static_cast<double>(size)));
    fy.push_back(std::log(rs_sum / static_cast<double>(rs_count)));
  }
  if (fx.size() < 3) throw NumericalError("hurst: too few usable block sizes");
  return fit_slope(fx, fy);
}

/// Order-1 detrended fluctuation analysis: integrate, detrend linearly in
/// log-spaced boxes 4..N/4, slope of log F(n) against log n.
inline double dfa(const std::vector<double>& x) {
  const auto n = static_cast<long>(x.size());
  require(n >= 500, "dfa: need at least 500 points");
  if (!(detail::series_std(x) > 0.0))
    throw NumericalError("dfa: constant series");

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> profile(static_cast<std::size_t>(n));
  double cum = 0.0;
  for (long i = 0; i < n; ++i) {
    cum += x[static_cast<std::size_t>(i)] - mean;
    profile[static_cast<std::size_t>(i)] = cum;
  }

  const auto sizes_d = log_spaced(4.0, static_cast<double>(n / 4), 14);
  std::vector<double> fx, fy;
  long prev_size = -1;
  for (double sd : sizes_d) {
    const long size = static_cast<long>(std::lround(sd));
    if (size == prev_size || size < 4) continue;
    prev_size = size;
    const long boxes = n / size;
    if (boxes < 1) continue;
    double ssq = 0.0;
    for (long b = 0; b < boxes; ++b) {
      const double* seg = profile.data() + b * size;
      // Least-squares line over i = 0..size-1.
      double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
      for (long i = 0; i < size; ++i) {
        sx += static_cast<double>(i);
        sy += seg[i];
        sxx += static_cast<double>(i) * static_cast<double>(i);
        sxy += static_cast<double>(i) * seg[i];
      }
      const double denom =
          static_cast<double>(size) * sxx - sx * sx;
      const double slope = (static_cast<double>(size) * sxy - sx * sy) / denom;
      const double icpt = (sy - slope * sx) / static_cast<double>(size);
      for (long i = 0; i < size; ++i) {
        const double r = seg[i] - (icpt + slope * static_cast<double>(i));
        ssq += r * r;
      }
    }
    const double f = std::sqrt(ssq / static_cast<double>(boxes * size));
    if (!(f > 0.0)) continue;
    fx.push_back(std::log(static_cast<double>(size)));
    fy.push_back(std::log(f));
  }
  if (fx.size() < 3) throw NumericalError("dfa: too few usable box sizes");
  return fit_slope(fx, fy);
}

/// Sample entropy -ln(A/B) with Chebyshev distance, template length m and
/// tolerance r_frac times the series deviation; self-matches excluded.
/// A constant series matches everywhere and yields 0 by the A = B case.
inline double sample_entropy(const std::vector<double>& x, int m = 2,
                             double r_frac = 0.2) {
  const auto n = static_cast<long>(x.size());
  require(n >= 200, "sample_entropy: need at least 200 points");
  require(m >= 1, "sample_entropy: template length must be >= 1");
  const double r = r_frac * detail::series_std(x);

  long a = 0, b = 0;
  const long count = n - m;
  for (long i = 0; i < count; ++i) {
    for (long j = i + 1; j < count; ++j) {
      bool match_m = true;
      for (int k = 0; k < m; ++k)
        if (std::abs(x[static_cast<std::size_t>(i + k)] -
                     x[static_cast<std::size_t>(j + k)]) > r) {
          match_m = false;
          break;
        }
      if (!match_m) continue;
      ++b;
      if (std::abs(x[static_cast<std::size_t>(i + m)] -
                   x[static_cast<std::size_t>(j + m)]) <= r)
        ++a;
    }
  }
  if (b == 0)
    throw NumericalError("sample_entropy: no template matches, undefined");
  if (a == 0)
    throw NumericalError("sample_entropy: no m+1 matches, undefined");
  return -std::log(static_cast<double>(a) / static_cast<double>(b));
}

/// Lempel-Ziv (LZ76) complexity of the median-binarized series, normalized
/// by n / log2(n).
inline double lempel_ziv(const std::vector<double>& x) {
  const auto n = static_cast<long>(x.size());
  require(n >= 100, "lempel_ziv: need at least 100 points");
  std::vector<double> sorted = x;
  std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
  const double median = sorted[static_cast<std::size_t>(n / 2)];
  std::vector<char> s(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i)
    s[static_cast<std::size_t>(i)] =
        x[static_cast<std::size_t>(i)] > median ? 1 : 0;

  // LZ76 phrase counting (Kaspar-Schuster formulation).
  long c = 1, i = 0, k = 1, k_max = 1;
  long j = 1;
  if (n >= 2) {
    while (true) {
      if (s[static_cast<std::size_t>(i + k - 1)] ==
          s[static_cast<std::size_t>(j + k - 1)]) {
        ++k;
        if (j + k > n) {
          ++c;
          break;
        }
      } else {
        k_max = std::max(k_max, k);
        ++i;
        if (i == j) {
          ++c;
          j += k_max;
          if (j + 1 > n) break;
          i = 0;
          k = 1;
          k_max = 1;
        } else {
          k = 1;
        }
      }
    }
  }
  return static_cast<double>(c) * std::log2(static_cast<double>(n)) /
         static_cast<double>(n);
}

}  // namespace bsm::gait

#endif  // BSM_GAIT_NONLINEAR_HPP
