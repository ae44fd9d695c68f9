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

// Lexical and embedding-based ROUGE, bootstrap confidence intervals, and
// corpus-level evaluation of a summarizer.
//
// All scores are on a 0-100 scale. Summaries are compared as single flattened
// token sequences (no sentence-level union LCS).

#ifndef FWSUM_EVAL_H_
#define FWSUM_EVAL_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fwsum/corpus.h"
#include "fwsum/kernel.h"

namespace fwsum::eval {

using Tokens = std::vector<std::string>;

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::optional<std::pair<double, double>> ci;
};

// Builds P/R/F1 from a (possibly soft) match count and the two totals.
RougeScore make_score(double matched, std::size_t candidate_total,
                      std::size_t reference_total);

// Lowercased, punctuation stripped, stopwords kept, no stemming.
Tokens rouge_tokenize(std::string_view text);

RougeScore rouge_n(const Tokens& candidate, const Tokens& reference,
                   std::size_t n);

std::size_t lcs_length(const Tokens& a, const Tokens& b);

RougeScore rouge_l(const Tokens& candidate, const Tokens& reference);

// How an n-gram vector is built from its word vectors.
enum class Composition { kSum, kMultiply };

// Soft n-gram overlap: grams are embedded (normalized composition of word
// vectors; out-of-vocabulary words contribute nothing), similarities are
// cosines floored at 0, and grams are matched greedily in order of decreasing
// similarity, each occurrence at most once. Throws ConfigError when `table`
// is null.
RougeScore semantic_rouge_n(const Tokens& candidate, const Tokens& reference,
                            std::size_t n, const kernel::EmbeddingTable* table,
                            Composition composition = Composition::kSum);

inline constexpr double kDefaultSemanticLcsThreshold = 0.8;

// LCS where two in-vocabulary tokens match iff their cosine is >= tau.
RougeScore semantic_rouge_l(const Tokens& candidate, const Tokens& reference,
                            const kernel::EmbeddingTable* table,
                            double tau = kDefaultSemanticLcsThreshold);

// Percentile bootstrap of the mean. Deterministic for a given seed.
std::pair<double, double> bootstrap_ci(std::span<const double> scores,
                                       double level, std::size_t resamples,
                                       std::uint64_t seed);

// ---------------------------------------------------------------------------
// Corpus evaluation

struct MetricSelection {
  bool lexical = true;
  bool semantic = false;
};

struct EvalOptions {
  double level = 0.95;
  std::size_t resamples = 1000;
  std::uint64_t seed = 20190101;
  double semantic_tau = kDefaultSemanticLcsThreshold;
  Composition composition = Composition::kSum;
};

// Returns the summary as a list of sentences for a dataset entry and a
// requested sentence count.
using Summarizer = std::function<std::vector<std::string>(
    const corpus::DatasetEntry& entry, std::size_t k)>;

struct ScoreRow {
  std::string method;
  std::string dataset;
  std::string metric;     // rouge-1, rouge-2, rouge-l, sem-rouge-1, ...
  std::string statistic;  // f1, precision, recall
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
};

struct DocumentScores {
  std::string id;
  std::map<std::string, RougeScore> metrics;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;
  std::vector<DocumentScores> documents;
  std::vector<corpus::Diagnostic> diagnostics;
};

// Number of sentences in a gold summary; the summary length k for a document.
std::size_t gold_sentence_count(std::string_view gold);

// Scores every entry, averages per metric and statistic, and attaches
// bootstrap intervals. Entries whose summarizer throws are reported in
// `diagnostics` and left out of the aggregates.
ScoreTable evaluate_system(const corpus::Dataset& dataset,
                           std::string_view method,
                           const Summarizer& summarizer,
                           const MetricSelection& metrics,
                           const kernel::EmbeddingTable* table,
                           const EvalOptions& options = {});

// method,dataset,metric,statistic,value,ci_low,ci_high
void write_csv(std::span<const ScoreRow> rows, std::ostream& out);

// Column-aligned human-readable rendering of the same rows.
void write_table(std::span<const ScoreRow> rows, std::ostream& out);

}  // namespace fwsum::eval

#endif  // FWSUM_EVAL_H_
