// bsm/core/csv.hpp

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

#ifndef BSM_CORE_CSV_HPP
#define BSM_CORE_CSV_HPP

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bsm/core/common.hpp"

// Minimal comma-separated-values support for the plain numeric files this
// toolkit exchanges. No quoting or escaping.

namespace bsm::csv {

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

/// Reads a CSV file. When `expect_header` is true the first line is taken
/// as the header row; blank lines are skipped.
inline Table read_file(const std::string& path, bool expect_header = true) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open '" + path + "'");
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (trim(line).empty()) continue;
    auto fields = split_line(line);
    if (first && expect_header) {
      for (auto& f : fields) f = trim(f);
      t.header = fields;
      first = false;
      continue;
    }
    first = false;
    t.rows.push_back(fields);
  }
  return t;
}

inline double parse_double(const std::string& s, const std::string& context) {
  const std::string v = trim(s);
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError(context + ": malformed number '" + v + "'");
  }
}

inline long parse_int(const std::string& s, const std::string& context) {
  const std::string v = trim(s);
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ValidationError(context + ": malformed integer '" + v + "'");
  }
}

}  // namespace bsm::csv

#endif  // BSM_CORE_CSV_HPP
