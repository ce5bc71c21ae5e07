// bsm/gmm/em.hpp

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

#ifndef BSM_GMM_EM_HPP
#define BSM_GMM_EM_HPP

#include <random>
#include <vector>

#include "bsm/gmm/diag_gmm.hpp"

namespace bsm::gmm {

struct EmConfig {
  int n_components = 16;
  int max_iterations = 50;
  double tolerance = 1e-4;     // on mean per-frame log-likelihood delta
  double floor_factor = 0.01;  // of the global per-dimension variance
  std::uint64_t seed = 0;

  void validate() const {
    require(n_components >= 1, "EmConfig: n_components must be >= 1");
    require(max_iterations >= 0, "EmConfig: negative iteration count");
    require(tolerance > 0.0, "EmConfig: tolerance must be > 0");
    require(floor_factor > 0.0 && floor_factor <= 1.0,
            "EmConfig: floor factor must be in (0, 1]");
  }
};

/// Per-iteration record of EM progress (mean per-frame log-likelihood).
struct EmTrace {
  std::vector<double> loglik;
};

namespace detail {

/// k-means++ seeding: K distinct frames chosen with squared-distance
/// weighting under a fixed RNG. Throws when fewer distinct frames exist
/// than components requested.
inline std::vector<Eigen::Index> kmeanspp_seed(const Eigen::MatrixXd& frames,
                                               int k, std::uint64_t seed) {
  const Eigen::Index t = frames.rows();
  std::mt19937_64 rng(seed);
  std::vector<Eigen::Index> centers;
  centers.reserve(static_cast<std::size_t>(k));
  std::uniform_int_distribution<Eigen::Index> first(0, t - 1);
  centers.push_back(first(rng));
  Eigen::VectorXd d2 =
      (frames.rowwise() - frames.row(centers[0])).rowwise().squaredNorm();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (static_cast<int>(centers.size()) < k) {
    const double total = d2.sum();
    if (!(total > 0.0))
      throw ValidationError(
          "train_ubm: fewer distinct frames than mixture components");
    const double u = unit(rng) * total;
    double acc = 0.0;
    Eigen::Index pick = t - 1;
    for (Eigen::Index i = 0; i < t; ++i) {
      acc += d2(i);
      if (acc >= u) {
        pick = i;
        break;
      }
    }
    centers.push_back(pick);
    d2 = d2.cwiseMin(
        (frames.rowwise() - frames.row(pick)).rowwise().squaredNorm());
  }
  return centers;
}

}  // namespace detail

/// Trains a diagonal-covariance GMM by EM on pooled frames. The mean
/// per-frame log-likelihood is non-decreasing across iterations and the
/// result is deterministic for a fixed seed.
inline DiagGmm train_ubm(const FrameSequence& seq, const EmConfig& cfg,
                         EmTrace* trace = nullptr) {
  cfg.validate();
  seq.validate();
  const Eigen::MatrixXd& x = seq.frames;
  const Eigen::Index t = x.rows(), d = x.cols();
  const int k = cfg.n_components;
  require(t >= 10 * static_cast<Eigen::Index>(k),
          "train_ubm: too few frames (need at least 10 per component)");

  const Eigen::RowVectorXd gmean = x.colwise().mean();
  const Eigen::RowVectorXd gvar =
      (x.rowwise() - gmean).array().square().colwise().mean();

  DiagGmm model;
  model.var_floor =
      (cfg.floor_factor * gvar.transpose().array()).cwiseMax(1e-10).matrix();
  const auto centers = detail::kmeanspp_seed(x, k, cfg.seed);
  model.weights = Eigen::VectorXd::Constant(k, 1.0 / k);
  model.means.resize(k, d);
  model.variances.resize(k, d);
  for (int c = 0; c < k; ++c) {
    model.means.row(c) = x.row(centers[static_cast<std::size_t>(c)]);
    model.variances.row(c) =
        gvar.cwiseMax(model.var_floor.transpose());
  }

  double prev_ll = -std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    // E-step.
    Eigen::MatrixXd ld = model.component_log_densities(x);
    double ll = 0.0;
    for (Eigen::Index i = 0; i < t; ++i) {
      const double mx = ld.row(i).maxCoeff();
      Eigen::ArrayXd e = (ld.row(i).array() - mx).exp();
      const double s = e.sum();
      ll += mx + std::log(s);
      ld.row(i) = (e / s).matrix();
    }
    ll /= static_cast<double>(t);
    if (trace != nullptr) trace->loglik.push_back(ll);
    if (iter > 0 && ll - prev_ll < cfg.tolerance) break;
    prev_ll = ll;

    // M-step; near-empty components keep their previous parameters.
    const Eigen::VectorXd n = ld.colwise().sum();
    const Eigen::MatrixXd sx = ld.transpose() * x;                     // K x D
    const Eigen::MatrixXd sxx = ld.transpose() * x.cwiseAbs2().eval();  // K x D
    for (int c = 0; c < k; ++c) {
      if (n(c) < 1e-8) {
        model.weights(c) = n(c) / static_cast<double>(t);
        continue;
      }
      model.weights(c) = n(c) / static_cast<double>(t);
      const Eigen::RowVectorXd mu = sx.row(c) / n(c);
      model.means.row(c) = mu;
      model.variances.row(c) =
          ((sxx.row(c) / n(c)) - mu.cwiseAbs2())
              .cwiseMax(model.var_floor.transpose());
    }
    model.weights /= model.weights.sum();
  }
  model.validate();
  return model;
}

}  // namespace bsm::gmm

#endif  // BSM_GMM_EM_HPP
