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

#include "fwsum/pipeline.h"

#include <algorithm>
#include <cmath>

#include "fwsum/error.h"

namespace fwsum::pipeline {
namespace {

Summary with_sentences(const corpus::Document& doc,
                       std::vector<std::size_t> indices) {
  Summary summary;
  summary.indices = std::move(indices);
  for (std::size_t i : summary.indices) {
    summary.sentences.push_back(doc.sentences[i].raw);
  }
  return summary;
}

}  // namespace

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::kBm25:
      return "bm25";
    case KernelKind::kCosine:
      return "cosine";
    case KernelKind::kSif:
      break;
  }
  return "sif";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kFwsumBm25:
      return "fwsum-bm25";
    case Method::kFwsumCosine:
      return "fwsum-cosine";
    case Method::kFwsumSif:
      return "fwsum-sif";
    case Method::kTextRank:
      return "textrank";
    case Method::kGoldEcho:
      break;
  }
  return "gold-echo";
}

KernelKind parse_kernel(std::string_view text) {
  if (text == "bm25") return KernelKind::kBm25;
  if (text == "cosine") return KernelKind::kCosine;
  if (text == "sif") return KernelKind::kSif;
  throw ConfigError("unknown kernel '" + std::string(text) +
                    "' (expected bm25, cosine or sif)");
}

Method parse_method(std::string_view text) {
  for (Method m : {Method::kFwsumBm25, Method::kFwsumCosine, Method::kFwsumSif,
                   Method::kTextRank, Method::kGoldEcho}) {
    if (text == to_string(m)) return m;
  }
  throw ConfigError("unknown method '" + std::string(text) + "'");
}

std::size_t resolve_k_percent(double percent, std::size_t n) {
  if (!(percent >= 0.0 && percent <= 100.0)) {
    throw ConfigError("k-percent must be in (0, 100]");
  }
  // Round-off guard so that e.g. 5% of 2000 resolves to exactly 100.
  const double raw = percent / 100.0 * static_cast<double>(n);
  const auto k = static_cast<std::size_t>(std::ceil(raw - 1e-9));
  return std::min(k, n);
}

kernel::Kernel build_kernel(const corpus::Document& doc,
                            const PipelineOptions& options) {
  kernel::Kernel k;
  switch (options.kernel) {
    case KernelKind::kBm25:
      k = kernel::bm25_kernel(doc, options.bm25);
      break;
    case KernelKind::kCosine:
      k = kernel::cosine_kernel(
          corpus::build_feature_matrix(doc, options.features, true));
      break;
    case KernelKind::kSif:
      if (options.embeddings == nullptr) {
        throw ConfigError("sif kernel requires embeddings");
      }
      k = kernel::embedding_kernel(
          kernel::sif_embed(doc, *options.embeddings, options.sif_a));
      break;
  }
  return kernel::psd_repair(k, options.psd);
}

solver::SolverConfig make_solver_config(std::size_t k,
                                        const kernel::Kernel& k_mat,
                                        const PipelineOptions& options) {
  solver::SolverConfig config = solver::SolverConfig::defaults(k, k_mat);
  if (options.beta) config.beta = *options.beta;
  if (options.eps) config.eps = *options.eps;
  if (options.max_iters) config.max_iters = std::max(*options.max_iters, k);
  config.step_rule = options.step_rule;
  config.respect_nonnegativity = options.respect_nonnegativity;
  return config;
}

Summary fw_summarize(const corpus::Document& doc, std::size_t k,
                     const PipelineOptions& options) {
  if (k == 0) return {};
  k = std::min(k, doc.n());
  const kernel::Kernel kernel = build_kernel(doc, options);
  solver::SolverResult result =
      solver::solve(kernel, make_solver_config(k, kernel, options));
  Summary summary = with_sentences(doc, result.selected);
  summary.solver = std::move(result);
  return summary;
}

Summary textrank_summarize(const corpus::Document& doc, std::size_t k,
                           const PipelineOptions& options) {
  if (k == 0) return {};
  return with_sentences(
      doc, textrank::textrank_summarize(doc, k, options.pagerank));
}

Summary summarize(const corpus::Document& doc, std::size_t k, Method method,
                  const PipelineOptions& options) {
  PipelineOptions local = options;
  switch (method) {
    case Method::kFwsumBm25:
      local.kernel = KernelKind::kBm25;
      return fw_summarize(doc, k, local);
    case Method::kFwsumCosine:
      local.kernel = KernelKind::kCosine;
      return fw_summarize(doc, k, local);
    case Method::kFwsumSif:
      local.kernel = KernelKind::kSif;
      return fw_summarize(doc, k, local);
    case Method::kTextRank:
      return textrank_summarize(doc, k, local);
    case Method::kGoldEcho:
      break;
  }
  throw ConfigError("gold-echo needs a gold summary; use make_summarizer");
}

eval::Summarizer make_summarizer(Method method,
                                 const PipelineOptions& options) {
  if (method == Method::kGoldEcho) {
    return [](const corpus::DatasetEntry& entry, std::size_t) {
      std::vector<std::string> sentences;
      for (auto& s : corpus::segment_sentences(entry.gold)) {
        sentences.push_back(std::move(s.raw));
      }
      return sentences;
    };
  }
  return [method, options](const corpus::DatasetEntry& entry, std::size_t k) {
    return summarize(entry.document, k, method, options).sentences;
  };
}

}  // namespace fwsum::pipeline
