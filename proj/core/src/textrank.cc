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

#include "fwsum/textrank.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "fwsum/error.h"

namespace fwsum::textrank {

SentenceGraph build_graph(const corpus::Document& doc) {
  const std::size_t n = doc.n();
  if (n < 2) throw InputError("textrank needs at least two sentences");

  // Distinct token ids per sentence, and an inverted index over them.
  std::unordered_map<std::string, std::size_t> ids;
  std::vector<std::vector<std::size_t>> distinct(n);
  for (std::size_t s = 0; s < n; ++s) {
    for (const auto& token : doc.sentences[s].tokens) {
      distinct[s].push_back(ids.try_emplace(token, ids.size()).first->second);
    }
    std::sort(distinct[s].begin(), distinct[s].end());
    distinct[s].erase(std::unique(distinct[s].begin(), distinct[s].end()),
                      distinct[s].end());
  }
  std::vector<std::vector<std::size_t>> postings(ids.size());
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t : distinct[s]) postings[t].push_back(s);
  }

  const auto nn = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd overlap = Eigen::MatrixXd::Zero(nn, nn);
  for (const auto& sentences : postings) {
    for (std::size_t a = 0; a < sentences.size(); ++a) {
      for (std::size_t b = a + 1; b < sentences.size(); ++b) {
        overlap(static_cast<Eigen::Index>(sentences[a]),
                static_cast<Eigen::Index>(sentences[b])) += 1.0;
      }
    }
  }

  SentenceGraph graph;
  graph.weights = Eigen::MatrixXd::Zero(nn, nn);
  std::vector<double> log_size(n);
  for (std::size_t s = 0; s < n; ++s) {
    log_size[s] = std::log(static_cast<double>(distinct[s].size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (distinct[i].size() < 2) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double shared = overlap(static_cast<Eigen::Index>(i),
                                    static_cast<Eigen::Index>(j));
      if (shared == 0.0 || distinct[j].size() < 2) continue;
      const double w = shared / (log_size[i] + log_size[j]);
      graph.weights(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = w;
      graph.weights(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = w;
    }
  }
  return graph;
}

PageRankResult pagerank(const SentenceGraph& graph,
                        const PageRankParams& params) {
  if (!(params.damping > 0.0 && params.damping < 1.0)) {
    throw ConfigError("damping must be in (0, 1)");
  }
  const Eigen::Index n = graph.weights.rows();
  PageRankResult result;
  if (n == 0) return result;
  const double inv_n = 1.0 / static_cast<double>(n);

  // Column-stochastic transition: column j holds w_ji / sum_k w_jk.
  const Eigen::VectorXd out_weight = graph.weights.rowwise().sum();
  Eigen::MatrixXd transition = graph.weights.transpose();
  std::vector<Eigen::Index> dangling;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (out_weight(j) > 0.0) {
      transition.col(j) /= out_weight(j);
    } else {
      dangling.push_back(j);
    }
  }

  Eigen::VectorXd scores = Eigen::VectorXd::Constant(n, inv_n);
  Eigen::VectorXd next(n);
  for (std::size_t it = 0; it < params.max_iters; ++it) {
    double dangling_mass = 0.0;
    for (Eigen::Index j : dangling) dangling_mass += scores(j);
    next.noalias() = params.damping * (transition * scores);
    next.array() +=
        (1.0 - params.damping) * inv_n + params.damping * dangling_mass * inv_n;
    const double delta = (next - scores).lpNorm<1>();
    scores.swap(next);
    result.iterations = it + 1;
    result.deltas.push_back(delta);
    if (delta < params.tol) break;
  }
  result.scores = scores / scores.sum();
  return result;
}

std::vector<std::size_t> textrank_summarize(const corpus::Document& doc,
                                            std::size_t k,
                                            const PageRankParams& params) {
  if (k < 1) throw ConfigError("k must be >= 1");
  const PageRankResult ranked = pagerank(build_graph(doc), params);
  std::vector<std::size_t> order(doc.n());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return ranked.scores(static_cast<Eigen::Index>(a)) >
                            ranked.scores(static_cast<Eigen::Index>(b));
                   });
  order.resize(std::min(k, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace fwsum::textrank
