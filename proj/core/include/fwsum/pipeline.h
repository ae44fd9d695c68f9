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

// End-to-end summarization methods: kernel construction plus Frank-Wolfe
// selection, and the TextRank baseline, behind one interface.

#ifndef FWSUM_PIPELINE_H_
#define FWSUM_PIPELINE_H_

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fwsum/corpus.h"
#include "fwsum/eval.h"
#include "fwsum/fw_solver.h"
#include "fwsum/kernel.h"
#include "fwsum/textrank.h"

namespace fwsum::pipeline {

enum class KernelKind { kBm25, kCosine, kSif };

// Summarizers known to the tooling. kGoldEcho returns the reference summary
// and exists to sanity-check the evaluation harness.
enum class Method { kFwsumBm25, kFwsumCosine, kFwsumSif, kTextRank, kGoldEcho };

std::string_view to_string(KernelKind kind);
std::string_view to_string(Method method);
KernelKind parse_kernel(std::string_view text);  // throws ConfigError
Method parse_method(std::string_view text);      // throws ConfigError

struct PipelineOptions {
  KernelKind kernel = KernelKind::kBm25;
  kernel::Bm25Params bm25;
  corpus::WeightScheme features = corpus::WeightScheme::kTfIdf;
  double sif_a = kernel::kDefaultSifSmoothing;
  const kernel::EmbeddingTable* embeddings = nullptr;  // required for kSif
  kernel::PsdRepair psd = kernel::PsdRepair::kNone;

  // Unset values take the solver defaults for the chosen k.
  std::optional<double> beta;
  std::optional<double> eps;
  std::optional<std::size_t> max_iters;
  solver::StepRule step_rule = solver::StepRule::kLineSearch;
  bool respect_nonnegativity = false;

  textrank::PageRankParams pagerank;
};

struct Summary {
  std::vector<std::size_t> indices;  // ascending sentence positions
  std::vector<std::string> sentences;
  std::optional<solver::SolverResult> solver;
};

// ceil(percent / 100 * n), at most n. Throws ConfigError outside [0, 100].
std::size_t resolve_k_percent(double percent, std::size_t n);

kernel::Kernel build_kernel(const corpus::Document& doc,
                            const PipelineOptions& options);

solver::SolverConfig make_solver_config(std::size_t k, const kernel::Kernel& k_mat,
                                        const PipelineOptions& options);

// Kernel + Frank-Wolfe with the kernel kind from `options`. k is clamped to
// the sentence count.
Summary fw_summarize(const corpus::Document& doc, std::size_t k,
                     const PipelineOptions& options);

Summary textrank_summarize(const corpus::Document& doc, std::size_t k,
                           const PipelineOptions& options);

// Dispatches on `method`; kFwsum* override options.kernel. kGoldEcho is only
// meaningful through make_summarizer and throws ConfigError here.
Summary summarize(const corpus::Document& doc, std::size_t k, Method method,
                  const PipelineOptions& options);

eval::Summarizer make_summarizer(Method method, const PipelineOptions& options);

}  // namespace fwsum::pipeline

#endif  // FWSUM_PIPELINE_H_
