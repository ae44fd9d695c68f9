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

// Sentence-similarity kernels. The summarizer only ever sees the n x n
// matrix K, so any symmetric similarity can stand in for the Gram matrix of
// explicit sentence features.

#ifndef FWSUM_KERNEL_H_
#define FWSUM_KERNEL_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include <Eigen/Dense>

#include "fwsum/corpus.h"

namespace fwsum::kernel {

// Dense symmetric similarity matrix.
class Kernel {
 public:
  Kernel() = default;

  // Throws ConfigError if `entries` is not square or not symmetric to 1e-12.
  explicit Kernel(Eigen::MatrixXd entries);

  std::size_t n() const { return static_cast<std::size_t>(entries_.rows()); }
  const Eigen::MatrixXd& entries() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double trace() const { return entries_.trace(); }

 private:
  Eigen::MatrixXd entries_;
};

// ---------------------------------------------------------------------------
// Explicit features.

// Gram matrix of the unit-normalized feature columns. All-zero columns give a
// zero row and column with the diagonal entry set to 1.
Kernel cosine_kernel(const corpus::FeatureMatrix& features);

// ---------------------------------------------------------------------------
// Okapi BM25 with the sentences of one document as the collection.

struct Bm25Params {
  double k1 = 1.5;
  double b = 0.75;
};

// ln(1 + (N - n_t + 0.5) / (n_t + 0.5)).
double bm25_idf(std::size_t collection_size, std::size_t containing);

// Raw directed score matrix: entry (i, j) scores sentence i as the query
// against sentence j. Query tokens are counted with multiplicity.
Eigen::MatrixXd bm25_scores(const corpus::Document& doc,
                            const Bm25Params& params = {});

// (B + B^T) / 2 followed by cosine normalization to unit diagonal.
Kernel bm25_kernel(const corpus::Document& doc, const Bm25Params& params = {});

// ---------------------------------------------------------------------------
// Word embeddings and SIF sentence vectors.

struct EmbeddingTable {
  std::size_t dim = 0;
  std::unordered_map<std::string, Eigen::VectorXd> vectors;
  // Unigram probabilities p(w); empty when no frequency source was loaded.
  std::unordered_map<std::string, double> frequencies;

  const Eigen::VectorXd* find(const std::string& token) const {
    auto it = vectors.find(token);
    return it == vectors.end() ? nullptr : &it->second;
  }
};

// word2vec text format: optional "count dim" header, then "token v1 ... vd"
// lines. With a filter, only listed tokens are kept. Throws InputError naming
// the line number on a malformed or inconsistent line.
EmbeddingTable load_word_embeddings(
    const std::filesystem::path& path,
    const std::unordered_set<std::string>* vocab_filter = nullptr);

// "token count" per line; fills table.frequencies with count / total.
void load_word_frequencies(const std::filesystem::path& path,
                           EmbeddingTable& table);

// Unigram probabilities estimated from the document's own tokens.
std::unordered_map<std::string, double> document_frequencies(
    const corpus::Document& doc);

inline constexpr double kDefaultSifSmoothing = 1e-3;

// a / (a + p).
inline double sif_weight(double a, double p) { return a / (a + p); }

// One row per sentence.
using SentenceVectors = Eigen::MatrixXd;

// Weighted average of in-vocabulary word vectors followed by removal of the
// first (uncentered) principal component. Uses table.frequencies when
// present, document frequencies otherwise. Throws InputError when no sentence
// has an in-vocabulary token.
SentenceVectors sif_embed(const corpus::Document& doc,
                          const EmbeddingTable& table,
                          double a = kDefaultSifSmoothing);

// Cosine similarity of sentence vectors; zero vectors get similarity 0 and a
// unit diagonal.
Kernel embedding_kernel(const SentenceVectors& vectors);

// ---------------------------------------------------------------------------

enum class PsdRepair { kNone, kDiagonalShift };

// Smallest eigenvalue of a symmetric matrix via power iteration on cI - K.
double estimate_min_eigenvalue(const Eigen::MatrixXd& symmetric);

// kNone returns K unchanged. kDiagonalShift adds (|lambda_min| + 1e-9) I
// when the estimated smallest eigenvalue is negative.
Kernel psd_repair(const Kernel& k, PsdRepair mode);

}  // namespace fwsum::kernel

#endif  // FWSUM_KERNEL_H_
