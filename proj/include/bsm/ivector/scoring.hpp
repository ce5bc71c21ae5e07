// bsm/ivector/scoring.hpp

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

#ifndef BSM_IVECTOR_SCORING_HPP
#define BSM_IVECTOR_SCORING_HPP

#include <utility>
#include <vector>

#include "bsm/ivector/total_variability.hpp"
#include "bsm/pipeline/subject.hpp"

namespace bsm::ivector {

/// Cosine distance 1 - a.b / (|a||b|), in [0, 2].
inline double cosine_distance(const IVector& a, const IVector& b) {
  require(a.w.size() == b.w.size(), "cosine_distance: rank mismatch");
  const double na = a.w.norm(), nb = b.w.norm();
  if (!(na > 0.0) || !(nb > 0.0))
    throw NumericalError("cosine_distance: zero-norm i-vector");
  return 1.0 - a.w.dot(b.w) / (na * nb);
}

/// Mean i-vector over controls matching the patient's gender within the
/// age window. An empty match widens the window one year at a time; with
/// no same-gender control at all the widening is exhausted and this fails.
inline IVector build_reference(
    const std::vector<std::pair<IVector, pipeline::SubjectRecord>>& hc,
    const pipeline::SubjectRecord& patient, double age_window = 2.0) {
  require(!hc.empty(), "build_reference: empty control pool");
  require(age_window >= 0.0, "build_reference: negative age window");
  double max_gap = 0.0;
  bool any_same_gender = false;
  for (const auto& [iv, rec] : hc) {
    (void)iv;
    if (rec.gender == patient.gender) {
      any_same_gender = true;
      max_gap = std::max(max_gap, std::abs(rec.age - patient.age));
    }
  }
  if (!any_same_gender)
    throw ValidationError("build_reference: no control of gender '" +
                          std::string(1, patient.gender) + "' for subject '" +
                          patient.id + "'");
  double window = age_window;
  while (true) {
    Eigen::VectorXd sum;
    int count = 0;
    for (const auto& [iv, rec] : hc) {
      if (rec.gender != patient.gender) continue;
      if (std::abs(rec.age - patient.age) > window) continue;
      if (count == 0)
        sum = iv.w;
      else
        sum += iv.w;
      ++count;
    }
    if (count > 0) {
      IVector ref;
      ref.w = sum / static_cast<double>(count);
      ref.subject_id = "reference:" + patient.id;
      ref.feature_set = hc.front().first.feature_set;
      return ref;
    }
    window += 1.0;
    if (window > max_gap + 1.0)
      throw ValidationError("build_reference: widening exhausted for '" +
                            patient.id + "'");
  }
}

}  // namespace bsm::ivector

#endif  // BSM_IVECTOR_SCORING_HPP
