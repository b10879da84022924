// Copyright 2026 The qflow Authors
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

#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qflow/quantum.hpp"

namespace qflow::detail {

/// Error tied to a named JSON key.
class KeyError : public std::invalid_argument {
 public:
  KeyError(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

inline ComplexMatrix matrix_from_json(const nlohmann::json& j,
                                      const std::string& key) {
  if (!j.is_array() || j.empty()) {
    throw KeyError(key, "expected a square array of [re, im] pairs");
  }
  const std::size_t n = j.size();
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) {
      throw KeyError(key, "row " + std::to_string(i) + " has the wrong length");
    }
    for (std::size_t k = 0; k < n; ++k) {
      const auto& z = j[i][k];
      if (z.is_number()) {
        m(i, k) = z.get<double>();
      } else if (z.is_array() && z.size() == 2 && z[0].is_number() &&
                 z[1].is_number()) {
        m(i, k) = cplx{z[0].get<double>(), z[1].get<double>()};
      } else {
        throw KeyError(key, "entry (" + std::to_string(i) + "," +
                                std::to_string(k) + ") is not [re, im]");
      }
    }
  }
  return m;
}

inline DensityMatrix state_from_json(const nlohmann::json& j,
                                     const std::string& key) {
  const ComplexMatrix m = matrix_from_json(j, key);
  if (m.dim() != 2) throw KeyError(key, "expected a 2x2 matrix");
  try {
    return DensityMatrix::from_matrix(m);
  } catch (const StateError& e) {
    throw KeyError(key, e.what());
  }
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < m.dim(); ++k)
      row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(row);
  }
  return rows;
}

}  // namespace qflow::detail
