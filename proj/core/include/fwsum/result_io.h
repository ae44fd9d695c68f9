// Copyright 2026 The fwsum Authors.
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

// JSON Lines records for solver results: one object per line holding the
// selected indices, final objective and gap, exit reason and the
// per-iteration history.

#ifndef FWSUM_RESULT_IO_H_
#define FWSUM_RESULT_IO_H_

#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "fwsum/fw_solver.h"

namespace fwsum::io {

nlohmann::json to_json(const solver::SolverResult& result,
                       std::string_view document_id);

// Single line, no trailing newline.
std::string to_json_line(const solver::SolverResult& result,
                         std::string_view document_id);

// Inverse of to_json_line; x_final is not serialized and comes back empty.
// Throws InputError on malformed input.
solver::SolverResult from_json_line(std::string_view line,
                                    std::string* document_id = nullptr);

}  // namespace fwsum::io

#endif  // FWSUM_RESULT_IO_H_
