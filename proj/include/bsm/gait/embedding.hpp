// bsm/gait/embedding.hpp

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

#ifndef BSM_GAIT_EMBEDDING_HPP
#define BSM_GAIT_EMBEDDING_HPP

#include <vector>

#include "bsm/core/common.hpp"

namespace bsm::gait {

/// Delay-coordinate reconstruction parameters.
struct EmbeddingConfig {
  int m = 4;        // embedding dimension
  int tau = 1;      // delay in samples
  int theiler = 0;  // temporal exclusion window; 0 = (m-1)*tau

  int effective_theiler() const { return theiler > 0 ? theiler : (m - 1) * tau; }

  void validate() const {
    require(m >= 2, "EmbeddingConfig: dimension must be >= 2");
    require(tau >= 1, "EmbeddingConfig: delay must be >= 1");
    require(theiler >= 0, "EmbeddingConfig: negative Theiler window");
  }
};

/// Takens delay embedding: row i = (x_i, x_{i+tau}, ..., x_{i+(m-1)tau}).
inline Eigen::MatrixXd embed(const std::vector<double>& x,
                             const EmbeddingConfig& cfg) {
  cfg.validate();
  const auto n = static_cast<long>(x.size());
  const long span = static_cast<long>(cfg.m - 1) * cfg.tau;
  require(n > span + 1, "embed: series too short for the embedding");
  const long rows = n - span;
  Eigen::MatrixXd e(rows, cfg.m);
  for (long i = 0; i < rows; ++i)
    for (int j = 0; j < cfg.m; ++j)
      e(i, j) = x[static_cast<std::size_t>(i + j * cfg.tau)];
  return e;
}

/// First minimum of the auto mutual information (16-bin histogram
/// estimate), the customary delay choice. Falls back to the first lag
/// where the autocorrelation drops below 1/e when no minimum appears.
inline int auto_delay(const std::vector<double>& x, int max_lag) {
  const auto n = static_cast<long>(x.size());
  require(n >= 16, "auto_delay: series too short");
  max_lag = std::min<int>(max_lag, static_cast<int>(n / 4));
  require(max_lag >= 1, "auto_delay: max lag too small");

  double lo = x[0], hi = x[0];
  for (double v : x) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(hi > lo)) return 1;  // constant series, delay is immaterial
  constexpr int kBins = 16;
  auto bin_of = [&](double v) {
    int b = static_cast<int>((v - lo) / (hi - lo) * kBins);
    return std::min(std::max(b, 0), kBins - 1);
  };
  std::vector<int> bins(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) bins[i] = bin_of(x[i]);

  auto mutual_information = [&](int lag) {
    std::array<double, kBins> px{}, py{};
    std::array<std::array<double, kBins>, kBins> pxy{};
    const long count = n - lag;
    for (long i = 0; i < count; ++i) {
      const int a = bins[static_cast<std::size_t>(i)];
      const int b = bins[static_cast<std::size_t>(i + lag)];
      px[static_cast<std::size_t>(a)] += 1.0;
      py[static_cast<std::size_t>(b)] += 1.0;
      pxy[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += 1.0;
    }
    double mi = 0.0;
    for (int a = 0; a < kBins; ++a)
      for (int b = 0; b < kBins; ++b) {
        const double j = pxy[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (j <= 0.0) continue;
        const double pj = j / static_cast<double>(count);
        mi += pj * std::log(pj * static_cast<double>(count) *
                            static_cast<double>(count) /
                            (px[static_cast<std::size_t>(a)] *
                             py[static_cast<std::size_t>(b)]));
      }
    return mi;
  };

  double prev = mutual_information(1);
  for (int lag = 2; lag <= max_lag; ++lag) {
    const double cur = mutual_information(lag);
    if (cur > prev) return lag - 1;  // previous lag was a local minimum
    prev = cur;
  }

  // Autocorrelation 1/e fallback.
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  if (var <= 0.0) return 1;
  for (int lag = 1; lag <= max_lag; ++lag) {
    double acc = 0.0;
    for (long i = 0; i + lag < n; ++i)
      acc += (x[static_cast<std::size_t>(i)] - mean) *
             (x[static_cast<std::size_t>(i + lag)] - mean);
    if (acc / var < std::exp(-1.0)) return lag;
  }
  return max_lag;
}

}  // namespace bsm::gait

#endif  // BSM_GAIT_EMBEDDING_HPP
