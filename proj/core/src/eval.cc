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

#include "fwsum/eval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <random>
#include <unordered_map>

#include "fwsum/error.h"

namespace fwsum::eval {
namespace {

// Cosines this close below the threshold still count as a match, so that
// tau = 1 accepts identical vectors despite round-off.
constexpr double kCosineSlack = 1e-12;

std::vector<std::string> ngrams(const Tokens& tokens, std::size_t n) {
  std::vector<std::string> grams;
  if (n == 0 || tokens.size() < n) return grams;
  grams.reserve(tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (std::size_t j = 1; j < n; ++j) {
      gram += '\x1f';
      gram += tokens[i + j];
    }
    grams.push_back(std::move(gram));
  }
  return grams;
}

// Distinct grams in order of first occurrence, with multiplicities.
struct GramCounts {
  std::vector<std::size_t> first_token;  // start offset of first occurrence
  std::vector<double> counts;
  std::unordered_map<std::string, std::size_t> index;
};

GramCounts count_grams(const std::vector<std::string>& grams) {
  GramCounts out;
  for (std::size_t i = 0; i < grams.size(); ++i) {
    auto [it, inserted] = out.index.try_emplace(grams[i], out.counts.size());
    if (inserted) {
      out.first_token.push_back(i);
      out.counts.push_back(0.0);
    }
    out.counts[it->second] += 1.0;
  }
  return out;
}

// Unit vector for tokens[start, start + n); empty if it embeds to zero.
Eigen::VectorXd embed_gram(const Tokens& tokens, std::size_t start,
                           std::size_t n, const kernel::EmbeddingTable& table,
                           Composition composition) {
  Eigen::VectorXd vec;
  if (composition == Composition::kSum) {
    vec = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(table.dim));
    for (std::size_t i = 0; i < n; ++i) {
      if (const Eigen::VectorXd* w = table.find(tokens[start + i])) vec += *w;
    }
  } else {
    vec = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(table.dim));
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::VectorXd* w = table.find(tokens[start + i]);
      if (w == nullptr) return {};
      vec = vec.cwiseProduct(*w);
    }
  }
  const double norm = vec.norm();
  if (norm == 0.0) return {};
  return vec / norm;
}

double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.size() == 1) return sorted.front();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lower = static_cast<std::size_t>(std::floor(pos));
  const std::size_t upper = std::min(lower + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lower);
  return sorted[lower] + frac * (sorted[upper] - sorted[lower]);
}

const kernel::EmbeddingTable& require_table(
    const kernel::EmbeddingTable* table) {
  if (table == nullptr) {
    throw ConfigError("semantic ROUGE requires an embedding table");
  }
  return *table;
}

}  // namespace

RougeScore make_score(double matched, std::size_t candidate_total,
                      std::size_t reference_total) {
  RougeScore score;
  if (candidate_total > 0) {
    score.precision = 100.0 * matched / static_cast<double>(candidate_total);
  }
  if (reference_total > 0) {
    score.recall = 100.0 * matched / static_cast<double>(reference_total);
  }
  const double sum = score.precision + score.recall;
  score.f1 = sum > 0.0 ? 2.0 * score.precision * score.recall / sum : 0.0;
  return score;
}

Tokens rouge_tokenize(std::string_view text) {
  return corpus::tokenize(text, corpus::TokenizeOptions{
                                    .lowercase = true,
                                    .strip_punct = true,
                                    .stopwords = nullptr});
}

RougeScore rouge_n(const Tokens& candidate, const Tokens& reference,
                   std::size_t n) {
  if (n < 1) throw ConfigError("ROUGE-N needs n >= 1");
  const auto cand = ngrams(candidate, n);
  const auto ref = ngrams(reference, n);
  std::unordered_map<std::string, double> ref_counts;
  for (const auto& gram : ref) ref_counts[gram] += 1.0;
  double matched = 0.0;
  for (const auto& gram : cand) {
    auto it = ref_counts.find(gram);
    if (it != ref_counts.end() && it->second > 0.0) {
      matched += 1.0;
      it->second -= 1.0;
    }
  }
  return make_score(matched, cand.size(), ref.size());
}

namespace {

template <typename Match>
std::size_t lcs_with(std::size_t rows, std::size_t cols, Match&& match) {
  std::vector<std::size_t> prev(cols + 1, 0);
  std::vector<std::size_t> curr(cols + 1, 0);
  for (std::size_t i = 1; i <= rows; ++i) {
    for (std::size_t j = 1; j <= cols; ++j) {
      curr[j] = match(i - 1, j - 1) ? prev[j - 1] + 1
                                    : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[cols];
}

}  // namespace

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
  return lcs_with(a.size(), b.size(),
                  [&](std::size_t i, std::size_t j) { return a[i] == b[j]; });
}

RougeScore rouge_l(const Tokens& candidate, const Tokens& reference) {
  return make_score(static_cast<double>(lcs_length(candidate, reference)),
                    candidate.size(), reference.size());
}

RougeScore semantic_rouge_n(const Tokens& candidate, const Tokens& reference,
                            std::size_t n, const kernel::EmbeddingTable* table,
                            Composition composition) {
  const auto& embeddings = require_table(table);
  if (n < 1) throw ConfigError("ROUGE-N needs n >= 1");
  const auto cand_grams = ngrams(candidate, n);
  const auto ref_grams = ngrams(reference, n);
  GramCounts cand = count_grams(cand_grams);
  GramCounts ref = count_grams(ref_grams);

  auto embed_all = [&](const Tokens& tokens, const GramCounts& grams) {
    std::vector<Eigen::VectorXd> vectors;
    vectors.reserve(grams.counts.size());
    for (std::size_t start : grams.first_token) {
      vectors.push_back(embed_gram(tokens, start, n, embeddings, composition));
    }
    return vectors;
  };
  const auto cand_vecs = embed_all(candidate, cand);
  const auto ref_vecs = embed_all(reference, ref);

  struct Pair {
    double similarity;
    std::size_t cand;
    std::size_t ref;
  };
  std::vector<Pair> pairs;
  for (std::size_t a = 0; a < cand_vecs.size(); ++a) {
    if (cand_vecs[a].size() == 0) continue;
    for (std::size_t b = 0; b < ref_vecs.size(); ++b) {
      if (ref_vecs[b].size() == 0) continue;
      const double sim = std::min(1.0, cand_vecs[a].dot(ref_vecs[b]));
      if (sim > 0.0) pairs.push_back({sim, a, b});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.similarity != y.similarity) return x.similarity > y.similarity;
    if (x.cand != y.cand) return x.cand < y.cand;
    return x.ref < y.ref;
  });

  // Identical grams share a similarity, so matching distinct grams with
  // multiplicities is the same as matching occurrences one at a time.
  double matched = 0.0;
  for (const Pair& p : pairs) {
    const double m = std::min(cand.counts[p.cand], ref.counts[p.ref]);
    if (m <= 0.0) continue;
    matched += m * p.similarity;
    cand.counts[p.cand] -= m;
    ref.counts[p.ref] -= m;
  }
  return make_score(matched, cand_grams.size(), ref_grams.size());
}

RougeScore semantic_rouge_l(const Tokens& candidate, const Tokens& reference,
                            const kernel::EmbeddingTable* table, double tau) {
  const auto& embeddings = require_table(table);
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError("tau must be in (0, 1]");

  auto unit_vectors = [&](const Tokens& tokens) {
    std::vector<Eigen::VectorXd> out(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (const Eigen::VectorXd* w = embeddings.find(tokens[i])) {
        const double norm = w->norm();
        if (norm > 0.0) out[i] = *w / norm;
      }
    }
    return out;
  };
  const auto cand = unit_vectors(candidate);
  const auto ref = unit_vectors(reference);
  const std::size_t length =
      lcs_with(cand.size(), ref.size(), [&](std::size_t i, std::size_t j) {
        return cand[i].size() > 0 && ref[j].size() > 0 &&
               cand[i].dot(ref[j]) >= tau - kCosineSlack;
      });
  return make_score(static_cast<double>(length), candidate.size(),
                    reference.size());
}

std::pair<double, double> bootstrap_ci(std::span<const double> scores,
                                       double level, std::size_t resamples,
                                       std::uint64_t seed) {
  if (scores.empty()) throw ConfigError("bootstrap needs at least one score");
  if (!(level > 0.0 && level < 1.0)) {
    throw ConfigError("confidence level must be in (0, 1)");
  }
  if (resamples == 0) throw ConfigError("bootstrap needs resamples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, scores.size() - 1);
  std::vector<double> means(resamples);
  for (auto& mean : means) {
    double total = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) total += scores[pick(rng)];
    mean = total / static_cast<double>(scores.size());
  }
  std::sort(means.begin(), means.end());
  const double alpha = (1.0 - level) / 2.0;
  return {quantile(means, alpha), quantile(means, 1.0 - alpha)};
}

std::size_t gold_sentence_count(std::string_view gold) {
  return std::max<std::size_t>(1, corpus::segment_sentences(gold).size());
}

ScoreTable evaluate_system(const corpus::Dataset& dataset,
                           std::string_view method,
                           const Summarizer& summarizer,
                           const MetricSelection& metrics,
                           const kernel::EmbeddingTable* table,
                           const EvalOptions& options) {
  if (metrics.semantic) require_table(table);
  ScoreTable out;
  std::vector<std::string> metric_names;
  if (metrics.lexical) {
    metric_names.insert(metric_names.end(), {"rouge-1", "rouge-2", "rouge-l"});
  }
  if (metrics.semantic) {
    metric_names.insert(metric_names.end(),
                        {"sem-rouge-1", "sem-rouge-2", "sem-rouge-l"});
  }

  for (const auto& entry : dataset.entries) {
    DocumentScores scores;
    scores.id = entry.document.id;
    try {
      const std::size_t k = gold_sentence_count(entry.gold);
      std::string summary;
      for (const auto& sentence : summarizer(entry, k)) {
        if (!summary.empty()) summary += ' ';
        summary += sentence;
      }
      const Tokens cand = rouge_tokenize(summary);
      const Tokens ref = rouge_tokenize(entry.gold);
      if (metrics.lexical) {
        scores.metrics["rouge-1"] = rouge_n(cand, ref, 1);
        scores.metrics["rouge-2"] = rouge_n(cand, ref, 2);
        scores.metrics["rouge-l"] = rouge_l(cand, ref);
      }
      if (metrics.semantic) {
        scores.metrics["sem-rouge-1"] =
            semantic_rouge_n(cand, ref, 1, table, options.composition);
        scores.metrics["sem-rouge-2"] =
            semantic_rouge_n(cand, ref, 2, table, options.composition);
        scores.metrics["sem-rouge-l"] =
            semantic_rouge_l(cand, ref, table, options.semantic_tau);
      }
    } catch (const std::exception& e) {
      out.diagnostics.push_back({entry.document.id, e.what()});
      continue;
    }
    out.documents.push_back(std::move(scores));
  }
  if (out.documents.empty()) return out;

  constexpr std::pair<const char*, double RougeScore::*> kStatistics[] = {
      {"f1", &RougeScore::f1},
      {"precision", &RougeScore::precision},
      {"recall", &RougeScore::recall}};
  for (const auto& metric : metric_names) {
    for (const auto& [statistic, member] : kStatistics) {
      std::vector<double> values;
      values.reserve(out.documents.size());
      for (const auto& doc : out.documents) {
        values.push_back(doc.metrics.at(metric).*member);
      }
      double mean = 0.0;
      for (double v : values) mean += v;
      mean /= static_cast<double>(values.size());
      const auto [low, high] =
          bootstrap_ci(values, options.level, options.resamples, options.seed);
      out.rows.push_back({std::string(method), dataset.name, metric, statistic,
                          mean, low, high});
    }
  }
  return out;
}

void write_csv(std::span<const ScoreRow> rows, std::ostream& out) {
  out << "method,dataset,metric,statistic,value,ci_low,ci_high\n";
  char buffer[128];
  for (const auto& row : rows) {
    std::snprintf(buffer, sizeof(buffer), "%.4f,%.4f,%.4f", row.value,
                  row.ci_low, row.ci_high);
    out << row.method << ',' << row.dataset << ',' << row.metric << ','
        << row.statistic << ',' << buffer << '\n';
  }
}

void write_table(std::span<const ScoreRow> rows, std::ostream& out) {
  std::size_t method_w = 6;
  std::size_t dataset_w = 7;
  std::size_t metric_w = 6;
  for (const auto& row : rows) {
    method_w = std::max(method_w, row.method.size());
    dataset_w = std::max(dataset_w, row.dataset.size());
    metric_w = std::max(metric_w, row.metric.size());
  }
  out << std::left << std::setw(static_cast<int>(method_w) + 2) << "method"
      << std::setw(static_cast<int>(dataset_w) + 2) << "dataset"
      << std::setw(static_cast<int>(metric_w) + 2) << "metric"
      << std::setw(11) << "statistic" << std::right << std::setw(9) << "value"
      << "   CI\n";
  for (const auto& row : rows) {
    out << std::left << std::setw(static_cast<int>(method_w) + 2) << row.method
        << std::setw(static_cast<int>(dataset_w) + 2) << row.dataset
        << std::setw(static_cast<int>(metric_w) + 2) << row.metric
        << std::setw(11) << row.statistic << std::right << std::fixed
        << std::setprecision(2) << std::setw(9) << row.value << "   ["
        << row.ci_low << ", " << row.ci_high << "]\n";
  }
}

}  // namespace fwsum::eval
