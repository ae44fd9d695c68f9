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

#include "fwsum/result_io.h"

#include "fwsum/error.h"

namespace fwsum::io {

nlohmann::json to_json(const solver::SolverResult& result,
                       std::string_view document_id) {
  nlohmann::json history = nlohmann::json::array();
  for (const auto& record : result.history) {
    history.push_back({{"t", record.t},
                       {"objective", record.objective},
                       {"gap", record.gap},
                       {"step", record.step},
                       {"row", record.row}});
  }
  return {{"document", std::string(document_id)},
          {"selected", result.selected},
          {"objective", result.objective},
          {"gap", result.gap},
          {"iterations", result.iterations},
          {"exit_reason", std::string(solver::to_string(result.exit_reason))},
          {"history", std::move(history)}};
}

std::string to_json_line(const solver::SolverResult& result,
                         std::string_view document_id) {
  return to_json(result, document_id).dump();
}

solver::SolverResult from_json_line(std::string_view line,
                                    std::string* document_id) {
  try {
    const auto j = nlohmann::json::parse(line);
    solver::SolverResult result;
    result.selected = j.at("selected").get<std::vector<std::size_t>>();
    result.objective = j.at("objective").get<double>();
    result.gap = j.at("gap").get<double>();
    result.iterations = j.at("iterations").get<std::size_t>();
    result.exit_reason =
        solver::parse_exit_reason(j.at("exit_reason").get<std::string>());
    for (const auto& record : j.at("history")) {
      result.history.push_back({record.at("t").get<std::size_t>(),
                                record.at("objective").get<double>(),
                                record.at("gap").get<double>(),
                                record.at("step").get<double>(),
                                record.at("row").get<std::size_t>()});
    }
    if (document_id != nullptr) *document_id = j.at("document").get<std::string>();
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed result record: ") + e.what());
  }
}

}  // namespace fwsum::io
