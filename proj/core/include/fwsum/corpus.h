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

// Text ingestion: sentence segmentation, tokenization, dataset loading and
// explicit sentence feature vectors.

#ifndef FWSUM_CORPUS_H_
#define FWSUM_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace fwsum::corpus {

using StopwordSet = std::unordered_set<std::string>;

// Sentences with fewer normalized tokens than this are flagged as short.
inline constexpr std::size_t kShortSentenceTokens = 3;

struct Sentence {
  std::size_t index = 0;
  std::string raw;
  std::vector<std::string> tokens;
  bool is_short = false;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;

  std::size_t n() const { return sentences.size(); }
};

struct TokenizeOptions {
  bool lowercase = true;
  bool strip_punct = true;
  const StopwordSet* stopwords = nullptr;  // not owned; may be null
};

// Splits raw text into sentences at . ! ? followed by whitespace and an
// uppercase letter or opening quote. Abbreviations in a fixed list never end
// a sentence. Whitespace runs inside a sentence are collapsed to one space.
// The returned sentences carry `raw` and `index` only.
std::vector<Sentence> segment_sentences(std::string_view text);

// Splits on runs of non-alphanumeric ASCII characters. Bytes >= 0x80 are
// treated as word characters so UTF-8 words stay intact. With strip_punct off,
// every punctuation character becomes its own token.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizeOptions& options = {});

// Small built-in English stopword list used when no file is configured.
const StopwordSet& default_stopwords();

// One token per line; blank lines and surrounding whitespace are ignored.
StopwordSet load_stopwords(const std::filesystem::path& path);

// Segments and tokenizes `text`. Sentences whose token list is empty are
// dropped and the survivors are re-indexed in order.
Document make_document(std::string id, std::string_view text,
                       const TokenizeOptions& options);

// ---------------------------------------------------------------------------
// Dataset layout: a directory of <id>.doc.txt / <id>.gold.txt pairs.

struct DatasetEntry {
  Document document;
  std::string gold;
  std::filesystem::path doc_path;
  std::filesystem::path gold_path;
};

struct Diagnostic {
  std::string id;
  std::string message;
};

struct Dataset {
  std::string name;  // basename of the root directory
  std::vector<DatasetEntry> entries;  // sorted by document id
  std::vector<Diagnostic> diagnostics;
};

// Throws InputError if `root` is not a readable directory. Documents without
// a gold file (or with an empty one) are reported in `diagnostics` and skipped.
Dataset load_dataset(const std::filesystem::path& root,
                     const TokenizeOptions& options);

std::string read_text_file(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Explicit sparse feature vectors, one column per sentence.

enum class WeightScheme { kTf, kTfIdf };

struct FeatureMatrix {
  using Column = std::vector<std::pair<std::size_t, double>>;  // sorted by term

  std::vector<std::string> vocabulary;  // term id -> term
  std::vector<Column> columns;

  std::size_t rows() const { return vocabulary.size(); }
  std::size_t cols() const { return columns.size(); }
};

// tf = raw term count; tfidf = tf * ln(n / df). With `normalize`, every
// non-zero column is scaled to unit Euclidean norm.
FeatureMatrix build_feature_matrix(const Document& doc, WeightScheme scheme,
                                   bool normalize);

}  // namespace fwsum::corpus

#endif  // FWSUM_CORPUS_H_
