// bsm/pipeline/subject.hpp

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

#ifndef BSM_PIPELINE_SUBJECT_HPP
#define BSM_PIPELINE_SUBJECT_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bsm/core/common.hpp"
#include "bsm/core/csv.hpp"

namespace bsm::pipeline {

constexpr int kSeverityScaleMax = 132;  // MDS-UPDRS-III upper bound

struct SubjectRecord {
  std::string id;
  bool is_patient = false;
  char gender = 'M';  // 'F' or 'M'
  double age = 0.0;
  std::optional<int> severity;  // present iff patient

  void validate() const {
    require(!id.empty(), "SubjectRecord: empty id");
    require(gender == 'F' || gender == 'M',
            "SubjectRecord: gender must be F or M for '" + id + "'");
    require(age > 0.0, "SubjectRecord: non-positive age for '" + id + "'");
    if (is_patient) {
      require(severity.has_value(),
              "SubjectRecord: patient '" + id + "' without severity score");
      require(*severity >= 0 && *severity <= kSeverityScaleMax,
              "SubjectRecord: severity out of range for '" + id + "'");
    }
  }
};

/// Loads the cohort metadata CSV `id,group,gender,age,updrs`. A control
/// with a score present is a warning and the score is dropped; a patient
/// without a score is an error.
inline std::vector<SubjectRecord> load_metadata(const std::string& path,
                                                Warnings* warnings = nullptr) {
  const csv::Table t = csv::read_file(path);
  require(t.header ==
              std::vector<std::string>({"id", "group", "gender", "age",
                                        "updrs"}),
          "metadata: expected header 'id,group,gender,age,updrs'");
  std::vector<SubjectRecord> records;
  std::set<std::string> seen;
  for (const auto& row : t.rows) {
    require(row.size() == 5, "metadata: wrong column count in a row");
    SubjectRecord rec;
    rec.id = csv::trim(row[0]);
    require(seen.insert(rec.id).second, "metadata: duplicate id '" + rec.id +
                                            "'");
    const std::string group = csv::trim(row[1]);
    if (group == "patient")
      rec.is_patient = true;
    else if (group == "control")
      rec.is_patient = false;
    else
      throw ValidationError("metadata: unknown group '" + group + "'");
    const std::string g = csv::trim(row[2]);
    require(g.size() == 1, "metadata: bad gender field for '" + rec.id + "'");
    rec.gender = g[0];
    rec.age = csv::parse_double(row[3], "metadata age for '" + rec.id + "'");
    const std::string score = csv::trim(row[4]);
    if (rec.is_patient) {
      require(!score.empty(),
              "metadata: patient '" + rec.id + "' has an empty score");
      rec.severity = static_cast<int>(
          csv::parse_int(score, "metadata updrs for '" + rec.id + "'"));
    } else if (!score.empty()) {
      warn(warnings, "metadata: control '" + rec.id +
                         "' carries a score; ignored");
    }
    rec.validate();
    records.push_back(rec);
  }
  return records;
}

}  // namespace bsm::pipeline

#endif  // BSM_PIPELINE_SUBJECT_HPP
