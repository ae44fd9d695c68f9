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

#include "fwsum/kernel.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include "fwsum/error.h"

namespace fwsum::kernel {
namespace {

constexpr double kZeroVectorNorm = 1e-12;

// Scales K to unit diagonal. Rows with a non-positive diagonal are zeroed and
// their diagonal set to 1.
void normalize_to_unit_diagonal(Eigen::MatrixXd& k) {
  const Eigen::Index n = k.rows();
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double d = k(i, i);
    inv_sqrt(i) = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  k = inv_sqrt.asDiagonal() * k * inv_sqrt.asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (inv_sqrt(i) == 0.0) k(i, i) = 1.0;
  }
}

}  // namespace

Kernel::Kernel(Eigen::MatrixXd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw ConfigError("kernel must be square");
  }
  const double scale = std::max(1.0, entries_.cwiseAbs().maxCoeff());
  if (entries_.size() > 0 &&
      (entries_ - entries_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw ConfigError("kernel must be symmetric");
  }
}

Kernel cosine_kernel(const corpus::FeatureMatrix& features) {
  const auto rows = static_cast<Eigen::Index>(features.rows());
  const auto cols = static_cast<Eigen::Index>(features.cols());
  std::vector<Eigen::Triplet<double>> triplets;
  for (Eigen::Index c = 0; c < cols; ++c) {
    const auto& column = features.columns[static_cast<std::size_t>(c)];
    double norm2 = 0.0;
    for (const auto& entry : column) norm2 += entry.second * entry.second;
    if (norm2 == 0.0) continue;
    const double inv = 1.0 / std::sqrt(norm2);
    for (const auto& [term, weight] : column) {
      if (weight != 0.0) {
        triplets.emplace_back(static_cast<Eigen::Index>(term), c, weight * inv);
      }
    }
  }
  Eigen::SparseMatrix<double> a(rows, cols);
  a.setFromTriplets(triplets.begin(), triplets.end());
  Eigen::SparseMatrix<double> gram = a.transpose() * a;
  Eigen::MatrixXd k = Eigen::MatrixXd(gram);
  k = 0.5 * (k + k.transpose()).eval();
  for (Eigen::Index i = 0; i < cols; ++i) {
    if (k(i, i) == 0.0) k(i, i) = 1.0;
  }
  return Kernel(std::move(k));
}

double bm25_idf(std::size_t collection_size, std::size_t containing) {
  const double big_n = static_cast<double>(collection_size);
  const double n_t = static_cast<double>(containing);
  return std::log(1.0 + (big_n - n_t + 0.5) / (n_t + 0.5));
}

Eigen::MatrixXd bm25_scores(const corpus::Document& doc,
                            const Bm25Params& params) {
  const std::size_t n = doc.n();
  if (n == 0) throw InputError("bm25 kernel needs at least one sentence");
  if (!(params.k1 > 0.0) || params.b < 0.0 || params.b > 1.0) {
    throw ConfigError("bm25 requires k1 > 0 and 0 <= b <= 1");
  }

  std::unordered_map<std::string, std::size_t> term_ids;
  std::vector<std::vector<std::pair<std::size_t, double>>> sentence_terms(n);
  double total_length = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    std::unordered_map<std::size_t, double> counts;
    for (const auto& token : doc.sentences[s].tokens) {
      auto it = term_ids.try_emplace(token, term_ids.size()).first;
      counts[it->second] += 1.0;
    }
    sentence_terms[s].assign(counts.begin(), counts.end());
    std::sort(sentence_terms[s].begin(), sentence_terms[s].end());
    total_length += static_cast<double>(doc.sentences[s].tokens.size());
  }
  const double avg_length = total_length / static_cast<double>(n);

  // postings[t] = (sentence j, saturated term frequency of t in j).
  std::vector<std::vector<std::pair<std::size_t, double>>> postings(
      term_ids.size());
  for (std::size_t j = 0; j < n; ++j) {
    const double length = static_cast<double>(doc.sentences[j].tokens.size());
    const double norm =
        params.k1 * (1.0 - params.b + params.b * length / avg_length);
    for (const auto& [term, tf] : sentence_terms[j]) {
      postings[term].emplace_back(j, tf * (params.k1 + 1.0) / (tf + norm));
    }
  }
  std::vector<double> idf(term_ids.size());
  for (std::size_t t = 0; t < postings.size(); ++t) {
    idf[t] = bm25_idf(n, postings[t].size());
  }

  Eigen::MatrixXd scores = Eigen::MatrixXd::Zero(
      static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (const auto& [term, count] : sentence_terms[i]) {
      const double query_weight = count * idf[term];
      for (const auto& [j, saturated] : postings[term]) {
        scores(row, static_cast<Eigen::Index>(j)) += query_weight * saturated;
      }
    }
  }
  return scores;
}

Kernel bm25_kernel(const corpus::Document& doc, const Bm25Params& params) {
  const Eigen::MatrixXd scores = bm25_scores(doc, params);
  Eigen::MatrixXd k = 0.5 * (scores + scores.transpose());
  normalize_to_unit_diagonal(k);
  return Kernel(std::move(k));
}

EmbeddingTable load_word_embeddings(
    const std::filesystem::path& path,
    const std::unordered_set<std::string>* vocab_filter) {
  std::istringstream in(corpus::read_text_file(path));
  EmbeddingTable table;
  std::string line;
  std::size_t line_number = 0;
  bool dim_known = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string token;
    fields >> token;
    std::vector<double> values;
    std::string field;
    while (fields >> field) {
      try {
        std::size_t consumed = 0;
        values.push_back(std::stod(field, &consumed));
        if (consumed != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw InputError(path.string() + ": line " + std::to_string(line_number) +
                         ": malformed number '" + field + "'");
      }
    }
    // "count dim" header: two integers on the first non-empty line.
    if (!dim_known && line_number == 1 && values.size() == 1 &&
        token.find_first_not_of("0123456789") == std::string::npos &&
        values[0] == std::floor(values[0])) {
      continue;
    }
    if (!dim_known) {
      if (values.empty()) {
        throw InputError(path.string() + ": line " + std::to_string(line_number) +
                         ": embedding line has no vector");
      }
      table.dim = values.size();
      dim_known = true;
    } else if (values.size() != table.dim) {
      throw InputError(path.string() + ": line " + std::to_string(line_number) +
                       ": expected " + std::to_string(table.dim) +
                       " values, found " + std::to_string(values.size()));
    }
    if (vocab_filter != nullptr && !vocab_filter->contains(token)) continue;
    table.vectors[token] = Eigen::Map<const Eigen::VectorXd>(
        values.data(), static_cast<Eigen::Index>(values.size()));
  }
  return table;
}

void load_word_frequencies(const std::filesystem::path& path,
                           EmbeddingTable& table) {
  std::istringstream in(corpus::read_text_file(path));
  std::vector<std::pair<std::string, double>> counts;
  double total = 0.0;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string token;
    double count = 0.0;
    if (!(fields >> token)) continue;
    if (!(fields >> count) || count < 0.0) {
      throw InputError(path.string() + ": line " + std::to_string(line_number) +
                       ": expected 'token count'");
    }
    counts.emplace_back(token, count);
    total += count;
  }
  table.frequencies.clear();
  if (total <= 0.0) return;
  for (const auto& [token, count] : counts) {
    table.frequencies[token] += count / total;
  }
}

std::unordered_map<std::string, double> document_frequencies(
    const corpus::Document& doc) {
  std::unordered_map<std::string, double> frequencies;
  double total = 0.0;
  for (const auto& sentence : doc.sentences) {
    for (const auto& token : sentence.tokens) {
      frequencies[token] += 1.0;
      total += 1.0;
    }
  }
  if (total > 0.0) {
    for (auto& entry : frequencies) entry.second /= total;
  }
  return frequencies;
}

SentenceVectors sif_embed(const corpus::Document& doc,
                          const EmbeddingTable& table, double a) {
  if (!(a > 0.0)) throw ConfigError("SIF smoothing constant must be > 0");
  if (table.dim == 0) throw InputError("embedding table is empty");
  const auto n = static_cast<Eigen::Index>(doc.n());
  const auto dim = static_cast<Eigen::Index>(table.dim);

  std::unordered_map<std::string, double> local;
  const auto* frequencies = &table.frequencies;
  if (frequencies->empty()) {
    local = document_frequencies(doc);
    frequencies = &local;
  }

  SentenceVectors vectors = SentenceVectors::Zero(n, dim);
  bool any_in_vocabulary = false;
  for (Eigen::Index s = 0; s < n; ++s) {
    const auto& tokens = doc.sentences[static_cast<std::size_t>(s)].tokens;
    if (tokens.empty()) continue;
    for (const auto& token : tokens) {
      const Eigen::VectorXd* vec = table.find(token);
      if (vec == nullptr) continue;
      auto freq = frequencies->find(token);
      const double p = freq == frequencies->end() ? 0.0 : freq->second;
      vectors.row(s) += sif_weight(a, p) * vec->transpose();
      any_in_vocabulary = true;
    }
    vectors.row(s) /= static_cast<double>(tokens.size());
  }
  if (!any_in_vocabulary) {
    throw InputError("no sentence of '" + doc.id +
                     "' has an in-vocabulary token");
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(vectors.transpose() *
                                                      vectors);
  const Eigen::VectorXd u = eig.eigenvectors().col(dim - 1);
  vectors -= (vectors * u) * u.transpose();
  return vectors;
}

Kernel embedding_kernel(const SentenceVectors& vectors) {
  if (vectors.rows() == 0) throw InputError("no sentence vectors");
  Eigen::MatrixXd unit = vectors;
  std::vector<bool> zero(static_cast<std::size_t>(vectors.rows()), false);
  for (Eigen::Index i = 0; i < unit.rows(); ++i) {
    const double norm = unit.row(i).norm();
    if (norm <= kZeroVectorNorm) {
      unit.row(i).setZero();
      zero[static_cast<std::size_t>(i)] = true;
    } else {
      unit.row(i) /= norm;
    }
  }
  Eigen::MatrixXd k = unit * unit.transpose();
  k = 0.5 * (k + k.transpose()).eval();
  for (Eigen::Index i = 0; i < k.rows(); ++i) {
    k(i, i) = 1.0;  // exact for unit rows, repaired for zero rows
  }
  return Kernel(std::move(k));
}

double estimate_min_eigenvalue(const Eigen::MatrixXd& symmetric) {
  const Eigen::Index n = symmetric.rows();
  if (n == 0) return 0.0;
  // Gershgorin bound: c >= lambda_max, so cI - K is PSD with top eigenvalue
  // c - lambda_min.
  const double c = symmetric.cwiseAbs().rowwise().sum().maxCoeff() + 1.0;
  const Eigen::MatrixXd shifted =
      c * Eigen::MatrixXd::Identity(n, n) - symmetric;

  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    v(i) = 1.0 + 0.5 * std::sin(1.0 + 2.0 * static_cast<double>(i));
  }
  v.normalize();
  double rayleigh = v.dot(shifted * v);
  constexpr int kMaxIterations = 50000;
  for (int it = 0; it < kMaxIterations; ++it) {
    Eigen::VectorXd w = shifted * v;
    const double norm = w.norm();
    if (norm == 0.0) break;
    const double residual = (w - rayleigh * v).norm();
    v = w / norm;
    rayleigh = v.dot(shifted * v);
    if (residual <= 1e-11 * c) break;
  }
  return c - rayleigh;
}

Kernel psd_repair(const Kernel& k, PsdRepair mode) {
  if (mode == PsdRepair::kNone) return k;
  const double lambda_min = estimate_min_eigenvalue(k.entries());
  const double scale = std::max(1.0, k.entries().cwiseAbs().maxCoeff());
  // Rayleigh quotients never overshoot lambda_min, so only round-off can push
  // a PSD estimate below zero.
  if (lambda_min >= -1e-12 * scale) return k;
  Eigen::MatrixXd repaired = k.entries();
  repaired.diagonal().array() += std::abs(lambda_min) + 1e-9;
  return Kernel(std::move(repaired));
}

}  // namespace fwsum::kernel
