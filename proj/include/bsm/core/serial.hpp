// bsm/core/serial.hpp

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

#ifndef BSM_CORE_SERIAL_HPP
#define BSM_CORE_SERIAL_HPP

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "bsm/core/common.hpp"

// Token-oriented text serialization. Doubles are written with max_digits10
// significant digits so that read-back is bit-exact.

namespace bsm::serial {

inline void write_tag(std::ostream& os, const std::string& tag) {
  os << tag << ' ';
}

inline void expect_tag(std::istream& is, const std::string& tag) {
  std::string got;
  if (!(is >> got) || got != tag)
    throw ValidationError("model file: expected token '" + tag + "', got '" +
                          got + "'");
}

inline void write_double(std::ostream& os, double v) {
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v
     << ' ';
}

inline double read_double(std::istream& is) {
  double v;
  if (!(is >> v)) throw ValidationError("model file: expected a number");
  return v;
}

inline void write_int(std::ostream& os, long v) { os << v << ' '; }

inline long read_int(std::istream& is) {
  long v;
  if (!(is >> v)) throw ValidationError("model file: expected an integer");
  return v;
}

inline void write_vector(std::ostream& os, const Eigen::VectorXd& v) {
  write_int(os, v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) write_double(os, v(i));
  os << '\n';
}

inline Eigen::VectorXd read_vector(std::istream& is) {
  const long n = read_int(is);
  require(n >= 0, "model file: negative vector size");
  Eigen::VectorXd v(n);
  for (long i = 0; i < n; ++i) v(i) = read_double(is);
  return v;
}

inline void write_matrix(std::ostream& os, const Eigen::MatrixXd& m) {
  write_int(os, m.rows());
  write_int(os, m.cols());
  os << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) write_double(os, m(r, c));
    os << '\n';
  }
}

inline Eigen::MatrixXd read_matrix(std::istream& is) {
  const long rows = read_int(is);
  const long cols = read_int(is);
  require(rows >= 0 && cols >= 0, "model file: negative matrix size");
  Eigen::MatrixXd m(rows, cols);
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) m(r, c) = read_double(is);
  return m;
}

template <typename Model>
void save_text(const Model& model, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open '" + path + "' for writing");
  model.write(os);
  if (!os) throw ValidationError("write failed for '" + path + "'");
}

template <typename Model>
Model load_text(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open '" + path + "'");
  Model model;
  model.read(is);
  return model;
}

}  // namespace bsm::serial

#endif  // BSM_CORE_SERIAL_HPP
