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


// Shared fixtures for the unit and acceptance suites: random kernels and
// token corpora, scratch directories.

#ifndef FWSUM_TESTS_TEST_SUPPORT_H_
#define FWSUM_TESTS_TEST_SUPPORT_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fwsum/corpus.h"

namespace fwsum::testing {

// Gram matrix of `dim` x n non-negative random features with unit columns,
// i.e. a cosine kernel of a random bag-of-words corpus.
inline Eigen::MatrixXd random_psd_kernel(std::size_t n, std::mt19937_64& rng,
                                         std::size_t dim = 0) {
  if (dim == 0) dim = n;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::MatrixXd a(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(n));
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      // Sparse-ish columns so that sentences differ in which terms they use.
      a(i, j) = unit(rng) < 0.3 ? unit(rng) : 0.0;
    }
    a(static_cast<Eigen::Index>(rng() % dim), j) += 0.1;
    a.col(j).normalize();
  }
  Eigen::MatrixXd k = a.transpose() * a;
  return 0.5 * (k + k.transpose());
}

inline Eigen::MatrixXd random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = normal(rng);
  }
  return 0.5 * (m + m.transpose());
}

inline std::string word(std::size_t id) { return "w" + std::to_string(id); }

// Sentences of Zipf-distributed vocabulary ids.
inline std::vector<std::vector<std::string>> random_token_lists(
    std::size_t n, std::size_t vocab, std::size_t min_len, std::size_t max_len,
    std::mt19937_64& rng) {
  std::vector<double> weights(vocab);
  for (std::size_t i = 0; i < vocab; ++i) weights[i] = 1.0 / static_cast<double>(i + 1);
  std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> length(min_len, max_len);
  std::vector<std::vector<std::string>> lists(n);
  for (auto& list : lists) {
    const std::size_t len = length(rng);
    for (std::size_t t = 0; t < len; ++t) list.push_back(word(pick(rng)));
  }
  return lists;
}

inline corpus::Document document_from_tokens(
    const std::vector<std::vector<std::string>>& lists, std::string id = "doc") {
  corpus::Document doc;
  doc.id = std::move(id);
  for (std::size_t i = 0; i < lists.size(); ++i) {
    corpus::Sentence s;
    s.index = i;
    s.tokens = lists[i];
    for (std::size_t t = 0; t < lists[i].size(); ++t) {
      s.raw += (t ? " " : "") + lists[i][t];
    }
    s.raw += ".";
    s.is_short = lists[i].size() < corpus::kShortSentenceTokens;
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

// Plain text with capitalized sentences, parseable by segment_sentences.
inline std::string synthetic_text(std::size_t n, std::size_t vocab,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto lists = random_token_lists(n, vocab, 6, 18, rng);
  std::string text;
  for (const auto& list : lists) {
    std::string sentence;
    for (const auto& token : list) sentence += (sentence.empty() ? "" : " ") + token;
    sentence[0] = 'W';
    text += sentence + ". ";
  }
  return text;
}

// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::uint64_t counter = 0;
    std::random_device device;
    path_ = std::filesystem::temp_directory_path() /
            ("fwsum-test-" + std::to_string(device()) + "-" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

  std::filesystem::path write(const std::string& name,
                              const std::string& content) const {
    const auto file = path_ / name;
    std::ofstream(file, std::ios::binary) << content;
    return file;
  }

 private:
  std::filesystem::path path_;
};

}  // namespace fwsum::testing

#endif  // FWSUM_TESTS_TEST_SUPPORT_H_
