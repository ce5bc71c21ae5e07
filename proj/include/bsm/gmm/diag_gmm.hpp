// bsm/gmm/diag_gmm.hpp

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

#ifndef BSM_GMM_DIAG_GMM_HPP
#define BSM_GMM_DIAG_GMM_HPP

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "bsm/core/common.hpp"
#include "bsm/core/frame_sequence.hpp"
#include "bsm/core/serial.hpp"

namespace bsm::gmm {

/// Weighted diagonal-covariance Gaussian mixture. Serves both as the
/// population reference model (UBM) and as the per-subject adapted model.
struct DiagGmm {
  Eigen::VectorXd weights;    // K
  Eigen::MatrixXd means;      // K x D
  Eigen::MatrixXd variances;  // K x D, strictly positive
  Eigen::VectorXd var_floor;  // D, floor in effect when trained/adapted

  Eigen::Index num_components() const { return weights.size(); }
  Eigen::Index dim() const { return means.cols(); }

  void validate() const {
    const Eigen::Index k = num_components(), d = dim();
    require(k >= 1 && d >= 1, "DiagGmm: empty model");
    require(means.rows() == k && variances.rows() == k &&
                variances.cols() == d,
            "DiagGmm: inconsistent dimensions");
    require(var_floor.size() == d, "DiagGmm: floor dimension mismatch");
    require((weights.array() >= 0.0).all(), "DiagGmm: negative weight");
    require(std::abs(weights.sum() - 1.0) <= 1e-9,
            "DiagGmm: weights do not sum to 1");
    require((variances.array() > 0.0).all(), "DiagGmm: non-positive variance");
    for (Eigen::Index c = 0; c < k; ++c)
      require((variances.row(c).transpose().array() >=
               var_floor.array() * (1.0 - 1e-12))
                  .all(),
              "DiagGmm: variance below floor");
    if (!all_finite(weights) || !all_finite(means) || !all_finite(variances))
      throw ValidationError("DiagGmm: non-finite parameters");
  }

  /// Per-frame log-densities under each component, T x K:
  /// log w_k - 0.5 sum_d [ log(2 pi s2_kd) + (x_d - m_kd)^2 / s2_kd ].
  Eigen::MatrixXd component_log_densities(const Eigen::MatrixXd& frames) const {
    const Eigen::Index k = num_components(), d = dim();
    require(frames.cols() == d, "DiagGmm: frame dimension mismatch");
    const Eigen::MatrixXd inv_var = variances.cwiseInverse();  // K x D
    Eigen::VectorXd cterm(k);
    for (Eigen::Index c = 0; c < k; ++c) {
      double s = std::log(weights(c) > 0 ? weights(c) : 1e-300);
      for (Eigen::Index j = 0; j < d; ++j) {
        s -= 0.5 * std::log(kTwoPi * variances(c, j));
        s -= 0.5 * means(c, j) * means(c, j) * inv_var(c, j);
      }
      cterm(c) = s;
    }
    // -(1/2) x^2 / s2 + x m / s2, expanded as two matrix products.
    Eigen::MatrixXd ld = frames.array().square().matrix() *
                         (-0.5 * inv_var).transpose();  // T x K
    ld.noalias() += frames * (means.cwiseProduct(inv_var)).transpose();
    ld.rowwise() += cterm.transpose();
    return ld;
  }

  /// Mean per-frame log-likelihood via log-sum-exp over components.
  double log_likelihood(const FrameSequence& seq) const {
    seq.validate();
    const Eigen::MatrixXd ld = component_log_densities(seq.frames);
    double total = 0.0;
    for (Eigen::Index t = 0; t < ld.rows(); ++t) {
      const double mx = ld.row(t).maxCoeff();
      total += mx + std::log((ld.row(t).array() - mx).exp().sum());
    }
    return total / static_cast<double>(ld.rows());
  }

  /// T x K posterior matrix; each row sums to 1.
  Eigen::MatrixXd responsibilities(const FrameSequence& seq) const {
    seq.validate();
    Eigen::MatrixXd ld = component_log_densities(seq.frames);
    for (Eigen::Index t = 0; t < ld.rows(); ++t) {
      const double mx = ld.row(t).maxCoeff();
      Eigen::ArrayXd e = (ld.row(t).array() - mx).exp();
      ld.row(t) = (e / e.sum()).matrix();
    }
    return ld;
  }

  void write(std::ostream& os) const {
    serial::write_tag(os, "<DiagGmm>");
    serial::write_int(os, num_components());
    serial::write_int(os, dim());
    os << '\n';
    serial::write_tag(os, "<Weights>");
    serial::write_vector(os, weights);
    serial::write_tag(os, "<Means>");
    serial::write_matrix(os, means);
    serial::write_tag(os, "<Variances>");
    serial::write_matrix(os, variances);
    serial::write_tag(os, "<VarianceFloor>");
    serial::write_vector(os, var_floor);
    serial::write_tag(os, "</DiagGmm>");
    os << '\n';
  }

  void read(std::istream& is) {
    serial::expect_tag(is, "<DiagGmm>");
    const long k = serial::read_int(is);
    const long d = serial::read_int(is);
    serial::expect_tag(is, "<Weights>");
    weights = serial::read_vector(is);
    serial::expect_tag(is, "<Means>");
    means = serial::read_matrix(is);
    serial::expect_tag(is, "<Variances>");
    variances = serial::read_matrix(is);
    serial::expect_tag(is, "<VarianceFloor>");
    var_floor = serial::read_vector(is);
    serial::expect_tag(is, "</DiagGmm>");
    require(weights.size() == k && means.rows() == k && means.cols() == d,
            "DiagGmm: corrupt model file");
    validate();
  }

  void save(const std::string& path) const { serial::save_text(*this, path); }
  static DiagGmm load(const std::string& path) {
    return serial::load_text<DiagGmm>(path);
  }
};

}  // namespace bsm::gmm

#endif  // BSM_GMM_DIAG_GMM_HPP
