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

#pragma once

#include <string>
#include <string_view>

#include "noisytel/qstate.hpp"

namespace noisytel {

/// {"dim": d, "re": [[...]], "im": [[...]]}, rows in row-major order.
std::string matrix_to_json(const ComplexMatrix& m);

/// Parses the format written by matrix_to_json; throws
/// std::invalid_argument on malformed input.
ComplexMatrix matrix_from_json(std::string_view text);

}  // namespace noisytel
