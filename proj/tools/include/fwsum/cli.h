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


// The fwsum command-line front end: summarize one document, evaluate methods
// over a dataset, and time methods against summary length.
//
// Settings come from three layers. Built-in defaults are overridden by a flat
// key=value config file (--config, or the FWSUM_CONFIG environment variable),
// which is overridden by command-line flags. Config keys use the long flag
// names without the leading dashes.

#ifndef FWSUM_CLI_H_
#define FWSUM_CLI_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "fwsum/eval.h"
#include "fwsum/kernel.h"
#include "fwsum/pipeline.h"

namespace fwsum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitSolver = 4;

// key -> raw value
using Settings = std::map<std::string, std::string>;

// Keys accepted in config files and as flags.
const std::vector<std::string>& known_keys();

// Parses "key = value" lines; '#' starts a comment. Throws ConfigError on an
// unknown key or a line without '=' (message carries the line number).
Settings parse_config_text(std::string_view text);
Settings load_config_file(const std::filesystem::path& path);

// Flags win over the file. k and k-percent are one choice: a flag for either
// clears both from the file layer.
Settings merge_settings(const Settings& file, const Settings& flags);

struct RunConfig {
  pipeline::KernelKind kernel = pipeline::KernelKind::kBm25;
  std::optional<std::size_t> k;
  std::optional<double> k_percent;
  std::optional<double> beta;
  std::optional<double> eps;
  std::optional<std::size_t> max_iters;
  solver::StepRule step_rule = solver::StepRule::kLineSearch;
  bool nonneg = false;
  kernel::PsdRepair psd = kernel::PsdRepair::kNone;

  std::optional<std::filesystem::path> embeddings;
  std::optional<std::filesystem::path> frequencies;
  std::optional<std::filesystem::path> stopwords;
  std::optional<std::filesystem::path> out;

  std::vector<pipeline::Method> methods{pipeline::Method::kFwsumBm25,
                                        pipeline::Method::kTextRank};
  eval::MetricSelection metrics;
  eval::Composition composition = eval::Composition::kSum;
  double tau = eval::kDefaultSemanticLcsThreshold;
  double level = 0.95;
  std::size_t resamples = 1000;
  std::uint64_t seed = 20190101;

  std::vector<double> k_percents{5, 10, 15, 20, 25};
  std::size_t repeats = 3;
};

// Throws ConfigError naming the offending key on a bad value, and when both
// k and k-percent are present.
RunConfig resolve_config(const Settings& settings);

pipeline::PipelineOptions pipeline_options(const RunConfig& config);

// Each command returns an exit code; errors are reported on `err`.
int cmd_summarize(const std::filesystem::path& input, const RunConfig& config,
                  std::ostream& out, std::ostream& err);
int cmd_eval(const std::filesystem::path& root, const RunConfig& config,
             std::ostream& out, std::ostream& err);
int cmd_bench(const std::filesystem::path& input, const RunConfig& config,
              std::ostream& out, std::ostream& err);

struct BenchRow {
  std::string method;
  double k_percent = 0.0;
  double seconds = 0.0;
};

// Median wall time per (method, k_percent). Includes kernel or graph
// construction, excludes reading the document.
std::vector<BenchRow> run_bench(const corpus::Document& doc,
                                const RunConfig& config,
                                const kernel::EmbeddingTable* table = nullptr);

double median(std::vector<double> values);

// Full argument vector including the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace fwsum::cli

#endif  // FWSUM_CLI_H_
