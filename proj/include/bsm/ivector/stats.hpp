// bsm/ivector/stats.hpp

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

#ifndef BSM_IVECTOR_STATS_HPP
#define BSM_IVECTOR_STATS_HPP

#include "bsm/gmm/diag_gmm.hpp"

namespace bsm::ivector {

/// Zero-order soft counts and UBM-centered first-order sums, the
/// sufficient statistics feeding total-variability training and
/// i-vector extraction.
struct BaumWelchStats {
  Eigen::VectorXd n;  // K, n_k = sum_t gamma_tk
  Eigen::MatrixXd f;  // K x D, F_k = sum_t gamma_tk (x_t - mu_k)

  Eigen::Index num_components() const { return n.size(); }
  Eigen::Index dim() const { return f.cols(); }

  void validate(double total_frames = -1.0) const {
    require(n.size() >= 1 && f.rows() == n.size() && f.cols() >= 1,
            "BaumWelchStats: inconsistent dimensions");
    require((n.array() >= 0.0).all(), "BaumWelchStats: negative count");
    if (!all_finite(n) || !all_finite(f))
      throw ValidationError("BaumWelchStats: non-finite statistics");
    if (total_frames >= 0.0)
      require(std::abs(n.sum() - total_frames) <= 1e-6,
              "BaumWelchStats: counts do not sum to the frame count");
  }
};

inline BaumWelchStats accumulate_stats(const gmm::DiagGmm& ubm,
                                       const FrameSequence& seq) {
  ubm.validate();
  seq.validate();
  require(seq.dim() == ubm.dim(), "accumulate_stats: dimension mismatch");
  const Eigen::MatrixXd gamma = ubm.responsibilities(seq);  // T x K
  BaumWelchStats stats;
  stats.n = gamma.colwise().sum();
  stats.f = gamma.transpose() * seq.frames;  // K x D, uncentered so far
  stats.f.noalias() -= stats.n.asDiagonal() * ubm.means;
  stats.validate(static_cast<double>(seq.num_frames()));
  return stats;
}

}  // namespace bsm::ivector

#endif  // BSM_IVECTOR_STATS_HPP
