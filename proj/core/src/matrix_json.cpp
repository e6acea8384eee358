// Copyright 2026 The noisytel Authors
//
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

#include "noisytel/matrix_json.hpp"

#include <stdexcept>

#include "json.hpp"

namespace noisytel {

std::string matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json re_row = nlohmann::json::array();
    nlohmann::json im_row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  nlohmann::json doc;
  doc["dim"] = m.rows();
  doc["re"] = std::move(re);
  doc["im"] = std::move(im);
  return doc.dump();
}

ComplexMatrix matrix_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("matrix json: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("re") || !doc.contains("im")) {
    throw std::invalid_argument("matrix json: expected keys dim, re, im");
  }
  const auto dim = doc["dim"].get<Eigen::Index>();
  qubit_count(dim);
  const auto& re = doc["re"];
  const auto& im = doc["im"];
  auto check_rows = [dim](const nlohmann::json& rows) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) return false;
    for (const auto& row : rows) {
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) return false;
    }
    return true;
  };
  if (!check_rows(re) || !check_rows(im)) {
    throw std::invalid_argument("matrix json: re/im must be dim x dim arrays");
  }
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    }
  }
  validate_register_matrix(m);
  return m;
}

}  // namespace noisytel
