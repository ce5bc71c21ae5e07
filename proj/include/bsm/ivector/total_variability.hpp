// bsm/ivector/total_variability.hpp

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

#ifndef BSM_IVECTOR_TOTAL_VARIABILITY_HPP
#define BSM_IVECTOR_TOTAL_VARIABILITY_HPP

#include <random>
#include <string>
#include <vector>

#include "bsm/ivector/stats.hpp"

namespace bsm::ivector {

struct TvConfig {
  int rank = 16;
  int iterations = 10;
  std::uint64_t seed = 0;

  void validate() const {
    require(rank >= 1, "TvConfig: rank must be >= 1");
    require(iterations >= 0, "TvConfig: negative iteration count");
  }
};

/// Low-dimensional summary of a recording's deviation from the UBM within
/// the learned total-variability subspace.
struct IVector {
  Eigen::VectorXd w;
  std::string subject_id;
  std::string feature_set;
};

/// UBM reference plus the low-rank loading matrix T mapping latent vectors
/// to supervector offsets: F_k ~ n_k T_k w.
struct TotalVariabilityModel {
  gmm::DiagGmm ubm;
  Eigen::MatrixXd t;  // (K*D) x R

  Eigen::Index rank() const { return t.cols(); }
  Eigen::Index supervector_dim() const { return t.rows(); }

  void validate() const {
    ubm.validate();
    require(t.rows() == ubm.num_components() * ubm.dim(),
            "TotalVariabilityModel: T row count mismatch");
    require(t.cols() >= 1 && t.cols() <= t.rows(),
            "TotalVariabilityModel: rank out of range");
    if (!all_finite(t))
      throw ValidationError("TotalVariabilityModel: non-finite T");
    // Numerical full-column-rank check.
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(t);
    qr.setThreshold(1e-10);
    if (qr.rank() < t.cols())
      throw NumericalError("TotalVariabilityModel: T is column-rank deficient");
  }

  /// Posterior precision L = I + T' N Sigma^-1 T for the given counts.
  Eigen::MatrixXd posterior_precision(const Eigen::VectorXd& n) const {
    const Eigen::Index k = ubm.num_components(), d = ubm.dim(), r = t.cols();
    Eigen::MatrixXd l = Eigen::MatrixXd::Identity(r, r);
    for (Eigen::Index c = 0; c < k; ++c) {
      const auto tc = t.middleRows(c * d, d);  // D x R
      const Eigen::VectorXd inv_var = ubm.variances.row(c).cwiseInverse();
      l.noalias() += n(c) * tc.transpose() * inv_var.asDiagonal() * tc;
    }
    return l;
  }

  void write(std::ostream& os) const {
    serial::write_tag(os, "<TotalVariability>");
    serial::write_int(os, rank());
    os << '\n';
    ubm.write(os);
    serial::write_tag(os, "<T>");
    serial::write_matrix(os, t);
    serial::write_tag(os, "</TotalVariability>");
    os << '\n';
  }

  void read(std::istream& is) {
    serial::expect_tag(is, "<TotalVariability>");
    const long r = serial::read_int(is);
    ubm.read(is);
    serial::expect_tag(is, "<T>");
    t = serial::read_matrix(is);
    serial::expect_tag(is, "</TotalVariability>");
    require(t.cols() == r, "TotalVariability: corrupt model file");
    validate();
  }

  void save(const std::string& path) const { serial::save_text(*this, path); }
  static TotalVariabilityModel load(const std::string& path) {
    return serial::load_text<TotalVariabilityModel>(path);
  }
};

/// EM training of the total-variability matrix on per-subject statistics.
/// E-step: posterior mean/covariance of w per subject; M-step: per-component
/// normal equations T_k = C_k A_k^-1. Initialization is a seeded random
/// orthonormal basis, returned unchanged when iterations == 0.
inline TotalVariabilityModel train_total_variability(
    const gmm::DiagGmm& ubm, const std::vector<BaumWelchStats>& stats,
    const TvConfig& cfg) {
  cfg.validate();
  ubm.validate();
  require(stats.size() >= 2,
          "train_total_variability: need at least 2 statistics objects");
  require(static_cast<int>(stats.size()) >= cfg.rank,
          "train_total_variability: fewer statistics objects than rank");
  const Eigen::Index k = ubm.num_components(), d = ubm.dim();
  const Eigen::Index sv = k * d;
  const Eigen::Index r = cfg.rank;
  require(r <= sv, "train_total_variability: rank exceeds K*D");
  for (const auto& s : stats) {
    s.validate();
    require(s.num_components() == k && s.dim() == d,
            "train_total_variability: statistics dimension mismatch");
  }

  TotalVariabilityModel model;
  model.ubm = ubm;
  {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd init(sv, r);
    for (Eigen::Index i = 0; i < sv; ++i)
      for (Eigen::Index j = 0; j < r; ++j) init(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(init);
    model.t = qr.householderQ() * Eigen::MatrixXd::Identity(sv, r);
  }

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    std::vector<Eigen::MatrixXd> a(
        static_cast<std::size_t>(k), Eigen::MatrixXd::Zero(r, r));
    Eigen::MatrixXd cmat = Eigen::MatrixXd::Zero(sv, r);
    for (const auto& s : stats) {
      const Eigen::MatrixXd l = model.posterior_precision(s.n);
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r);
      for (Eigen::Index c = 0; c < k; ++c) {
        const Eigen::VectorXd inv_var = ubm.variances.row(c).cwiseInverse();
        rhs.noalias() += model.t.middleRows(c * d, d).transpose() *
                         (inv_var.asDiagonal() * s.f.row(c).transpose());
      }
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(l);
      const Eigen::VectorXd wbar = ldlt.solve(rhs);
      const Eigen::MatrixXd wcov =
          ldlt.solve(Eigen::MatrixXd::Identity(r, r)) + wbar * wbar.transpose();
      for (Eigen::Index c = 0; c < k; ++c) {
        a[static_cast<std::size_t>(c)].noalias() += s.n(c) * wcov;
        cmat.middleRows(c * d, d).noalias() +=
            s.f.row(c).transpose() * wbar.transpose();
      }
    }
    for (Eigen::Index c = 0; c < k; ++c) {
      Eigen::MatrixXd ac = a[static_cast<std::size_t>(c)];
      ac.diagonal().array() += 1e-12;  // guards components with no mass
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(ac);
      // Solve T_k A_k = C_k row-block-wise: A_k X' = C_k'.
      model.t.middleRows(c * d, d) =
          ldlt.solve(cmat.middleRows(c * d, d).transpose()).transpose();
    }
    if (!all_finite(model.t))
      throw NumericalError("train_total_variability: diverged");
  }
  model.validate();
  return model;
}

/// Posterior-mean i-vector w = L^-1 T' Sigma^-1 F_vec.
inline IVector extract_ivector(const TotalVariabilityModel& tv,
                               const BaumWelchStats& stats) {
  stats.validate();
  require(stats.num_components() == tv.ubm.num_components() &&
              stats.dim() == tv.ubm.dim(),
          "extract_ivector: statistics dimension mismatch");
  const Eigen::Index k = tv.ubm.num_components(), d = tv.ubm.dim();
  const Eigen::Index r = tv.rank();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(r);
  for (Eigen::Index c = 0; c < k; ++c) {
    const Eigen::VectorXd inv_var = tv.ubm.variances.row(c).cwiseInverse();
    rhs.noalias() += tv.t.middleRows(c * d, d).transpose() *
                     (inv_var.asDiagonal() * stats.f.row(c).transpose());
  }
  const Eigen::MatrixXd l = tv.posterior_precision(stats.n);
  IVector iv;
  iv.w = Eigen::LDLT<Eigen::MatrixXd>(l).solve(rhs);
  if (!all_finite(iv.w))
    throw NumericalError("extract_ivector: singular posterior precision");
  return iv;
}

}  // namespace bsm::ivector

#endif  // BSM_IVECTOR_TOTAL_VARIABILITY_HPP
