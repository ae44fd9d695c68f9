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

// TextRank sentence extraction baseline.

#ifndef FWSUM_TEXTRANK_H_
#define FWSUM_TEXTRANK_H_

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "fwsum/corpus.h"

namespace fwsum::textrank {

// Symmetric non-negative edge weights with a zero diagonal.
struct SentenceGraph {
  Eigen::MatrixXd weights;

  std::size_t n() const { return static_cast<std::size_t>(weights.rows()); }
};

struct PageRankParams {
  double damping = 0.85;
  double tol = 1e-6;
  std::size_t max_iters = 200;
};

struct PageRankResult {
  Eigen::VectorXd scores;
  std::size_t iterations = 0;
  std::vector<double> deltas;  // ||s_t - s_{t-1}||_1 per iteration
};

// w(i, j) = |T_i & T_j| / (ln|T_i| + ln|T_j|) over distinct tokens, 0 when
// either sentence has a single distinct token. Throws InputError if n < 2.
SentenceGraph build_graph(const corpus::Document& doc);

// Weighted PageRank by power iteration. Nodes without outgoing weight spread
// their mass uniformly. Throws ConfigError unless 0 < damping < 1.
PageRankResult pagerank(const SentenceGraph& graph,
                        const PageRankParams& params = {});

// Top-k sentences by score (ties to the smaller index), in document order.
std::vector<std::size_t> textrank_summarize(const corpus::Document& doc,
                                            std::size_t k,
                                            const PageRankParams& params = {});

}  // namespace fwsum::textrank

#endif  // FWSUM_TEXTRANK_H_
