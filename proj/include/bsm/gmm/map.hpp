// bsm/gmm/map.hpp

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

#ifndef BSM_GMM_MAP_HPP
#define BSM_GMM_MAP_HPP

#include "bsm/gmm/diag_gmm.hpp"

namespace bsm::gmm {

struct MapConfig {
  double relevance = 16.0;  // relevance factor r >= 0
  bool adapt_means = true;
  bool adapt_variances = true;
  bool adapt_weights = false;

  void validate() const {
    require(relevance >= 0.0, "MapConfig: relevance factor must be >= 0");
    require(adapt_means || adapt_variances || adapt_weights,
            "MapConfig: at least one adaptation flag must be set");
  }
};

/// Relevance-factor MAP adaptation of a UBM toward subject data. The
/// per-component coefficient alpha_k = n_k / (n_k + r) interpolates the
/// posterior-weighted sufficient statistics with the UBM parameters;
/// component order (and hence UBM correspondence) is preserved.
inline DiagGmm map_adapt(const DiagGmm& ubm, const FrameSequence& seq,
                         const MapConfig& cfg) {
  cfg.validate();
  ubm.validate();
  seq.validate();
  require(seq.dim() == ubm.dim(), "map_adapt: frame dimension mismatch");

  const Eigen::MatrixXd& x = seq.frames;
  const Eigen::Index t = x.rows();
  const Eigen::Index k = ubm.num_components();

  const Eigen::MatrixXd gamma = ubm.responsibilities(seq);       // T x K
  const Eigen::VectorXd n = gamma.colwise().sum();               // K
  const Eigen::MatrixXd sx = gamma.transpose() * x;              // K x D
  const Eigen::MatrixXd sxx = gamma.transpose() * x.cwiseAbs2(); // K x D

  DiagGmm out = ubm;
  Eigen::VectorXd new_weights = ubm.weights;
  for (Eigen::Index c = 0; c < k; ++c) {
    const double denom = n(c) + cfg.relevance;
    const double alpha = denom > 0.0 ? n(c) / denom : 0.0;
    if (n(c) <= 0.0) continue;  // no evidence, component stays at the UBM
    const Eigen::RowVectorXd ex = sx.row(c) / n(c);
    const Eigen::RowVectorXd exx = sxx.row(c) / n(c);
    const Eigen::RowVectorXd new_mean =
        cfg.adapt_means ? (alpha * ex + (1.0 - alpha) * ubm.means.row(c)).eval()
                        : ubm.means.row(c).eval();
    if (cfg.adapt_variances) {
      const Eigen::RowVectorXd blended =
          alpha * exx +
          (1.0 - alpha) *
              (ubm.variances.row(c) + ubm.means.row(c).cwiseAbs2());
      out.variances.row(c) = (blended - new_mean.cwiseAbs2())
                                 .cwiseMax(ubm.var_floor.transpose());
    }
    if (cfg.adapt_means) out.means.row(c) = new_mean;
    if (cfg.adapt_weights)
      new_weights(c) = alpha * n(c) / static_cast<double>(t) +
                       (1.0 - alpha) * ubm.weights(c);
  }
  if (cfg.adapt_weights) out.weights = new_weights / new_weights.sum();
  out.validate();
  return out;
}

}  // namespace bsm::gmm

#endif  // BSM_GMM_MAP_HPP
