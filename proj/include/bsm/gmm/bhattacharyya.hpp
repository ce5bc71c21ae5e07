// bsm/gmm/bhattacharyya.hpp

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

#ifndef BSM_GMM_BHATTACHARYYA_HPP
#define BSM_GMM_BHATTACHARYYA_HPP

#include "bsm/gmm/diag_gmm.hpp"

namespace bsm::gmm {

/// Closed-form Bhattacharyya distance between diagonal Gaussians:
///   (1/8) sum_d (dmu_d)^2 / sbar2_d
/// + (1/2) sum_d ln( sbar2_d / sqrt(s2_1d * s2_2d) ),
/// with sbar2_d = (s2_1d + s2_2d) / 2. Symmetric, non-negative, zero only
/// for identical parameters.
inline double bhattacharyya_gaussian(const Eigen::VectorXd& mean1,
                                     const Eigen::VectorXd& var1,
                                     const Eigen::VectorXd& mean2,
                                     const Eigen::VectorXd& var2) {
  const Eigen::Index d = mean1.size();
  require(mean2.size() == d && var1.size() == d && var2.size() == d,
          "bhattacharyya_gaussian: dimension mismatch");
  require((var1.array() > 0.0).all() && (var2.array() > 0.0).all(),
          "bhattacharyya_gaussian: non-positive variance");
  double dist = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double sbar2 = 0.5 * (var1(j) + var2(j));
    dist += 0.125 * sqr(mean1(j) - mean2(j)) / sbar2;
    dist += 0.5 * std::log(sbar2 / std::sqrt(var1(j) * var2(j)));
  }
  return dist;
}

/// UBM-weighted matched-component Bhattacharyya sum. MAP adaptation keeps
/// the component correspondence, which makes the per-component pairing
/// meaningful; the result is an approximation of a mixture-level distance.
inline double gmm_distance(const DiagGmm& ubm, const DiagGmm& adapted) {
  require(ubm.num_components() == adapted.num_components(),
          "gmm_distance: component count mismatch");
  require(ubm.dim() == adapted.dim(), "gmm_distance: dimension mismatch");
  double dist = 0.0;
  for (Eigen::Index c = 0; c < ubm.num_components(); ++c)
    dist += ubm.weights(c) *
            bhattacharyya_gaussian(
                ubm.means.row(c).transpose(), ubm.variances.row(c).transpose(),
                adapted.means.row(c).transpose(),
                adapted.variances.row(c).transpose());
  return dist;
}

}  // namespace bsm::gmm

#endif  // BSM_GMM_BHATTACHARYYA_HPP
