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

#include "fwsum/corpus.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <system_error>

#include "fwsum/error.h"

namespace fwsum::corpus {
namespace {

constexpr std::array<std::string_view, 10> kAbbreviations = {
    "mr.", "mrs.", "dr.", "st.", "no.", "fig.", "e.g.", "i.e.", "etc.", "vs."};

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') ||
         (u >= 'A' && u <= 'Z');
}

char to_lower_ascii(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Length of a closing quote or bracket at `pos`, 0 if none.
std::size_t closing_mark_length(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return 0;
  const char c = text[pos];
  if (c == '"' || c == '\'' || c == ')' || c == ']') return 1;
  // U+201D and U+2019 right quotation marks.
  if (text.substr(pos, 3) == "\xE2\x80\x9D" ||
      text.substr(pos, 3) == "\xE2\x80\x99") {
    return 3;
  }
  return 0;
}

bool starts_sentence(std::string_view text, std::size_t pos) {
  if (pos >= text.size()) return false;
  const char c = text[pos];
  if ((c >= 'A' && c <= 'Z') || c == '"' || c == '\'' || c == '(') return true;
  // U+201C and U+2018 left quotation marks.
  return text.substr(pos, 3) == "\xE2\x80\x9C" ||
         text.substr(pos, 3) == "\xE2\x80\x98";
}

// True when the word ending at the period at `dot` is a known abbreviation.
bool ends_with_abbreviation(std::string_view text, std::size_t dot) {
  std::size_t begin = dot;
  while (begin > 0 && !is_space(text[begin - 1])) --begin;
  while (begin < dot && !is_word_byte(text[begin])) ++begin;
  std::string word;
  for (std::size_t i = begin; i <= dot; ++i) word += to_lower_ascii(text[i]);
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) !=
         kAbbreviations.end();
}

std::string collapse_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out += ' ';
    pending_space = false;
    out += c;
  }
  return out;
}

}  // namespace

std::vector<Sentence> segment_sentences(std::string_view text) {
  std::vector<Sentence> sentences;
  auto emit = [&](std::size_t begin, std::size_t end) {
    std::string raw = collapse_whitespace(text.substr(begin, end - begin));
    if (raw.empty()) return;
    Sentence s;
    s.index = sentences.size();
    s.raw = std::move(raw);
    sentences.push_back(std::move(s));
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_terminator(text[i])) {
      ++i;
      continue;
    }
    const std::size_t first_terminator = i;
    std::size_t end = i;
    while (end < text.size() && is_terminator(text[end])) ++end;
    const bool single_period = end - first_terminator == 1 &&
                               text[first_terminator] == '.';
    while (std::size_t len = closing_mark_length(text, end)) end += len;

    std::size_t next = end;
    while (next < text.size() && is_space(text[next])) ++next;

    const bool at_text_end = next == text.size();
    const bool boundary =
        at_text_end || (next > end && starts_sentence(text, next));
    if (boundary &&
        !(single_period && ends_with_abbreviation(text, first_terminator))) {
      emit(start, end);
      start = next;
    }
    i = end;
  }
  if (start < text.size()) emit(start, text.size());
  return sentences;
}

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizeOptions& options) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    if (options.stopwords == nullptr || !options.stopwords->contains(current)) {
      tokens.push_back(current);
    }
    current.clear();
  };
  for (char c : text) {
    if (is_word_byte(c)) {
      current += options.lowercase ? to_lower_ascii(c) : c;
      continue;
    }
    flush();
    if (!options.strip_punct && !is_space(c)) {
      current.assign(1, c);
      flush();
    }
  }
  flush();
  return tokens;
}

const StopwordSet& default_stopwords() {
  static const StopwordSet kStopwords = {
      "a",     "about", "above", "after", "again", "against", "all",
      "am",    "an",    "and",   "any",   "are",   "as",      "at",
      "be",    "because", "been", "before", "being", "below", "between",
      "both",  "but",   "by",    "can",   "could", "did",     "do",
      "does",  "doing", "down",  "during", "each", "few",     "for",
      "from",  "further", "had", "has",   "have",  "having",  "he",
      "her",   "here",  "hers",  "herself", "him", "himself", "his",
      "how",   "i",     "if",    "in",    "into",  "is",      "it",
      "its",   "itself", "me",   "more",  "most",  "my",      "myself",
      "no",    "nor",   "not",   "of",    "off",   "on",      "once",
      "only",  "or",    "other", "our",   "ours",  "ourselves", "out",
      "over",  "own",   "same",  "she",   "should", "so",     "some",
      "such",  "than",  "that",  "the",   "their", "theirs",  "them",
      "themselves", "then", "there", "these", "they", "this", "those",
      "through", "to",  "too",   "under", "until", "up",      "very",
      "was",   "we",    "were",  "what",  "when",  "where",   "which",
      "while", "who",   "whom",  "why",   "will",  "with",    "would",
      "you",   "your",  "yours", "yourself", "yourselves"};
  return kStopwords;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  StopwordSet words;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    words.insert(line.substr(first, last - first + 1));
  }
  return words;
}

Document make_document(std::string id, std::string_view text,
                       const TokenizeOptions& options) {
  Document doc;
  doc.id = std::move(id);
  for (auto& sentence : segment_sentences(text)) {
    sentence.tokens = tokenize(sentence.raw, options);
    if (sentence.tokens.empty()) continue;
    sentence.index = doc.sentences.size();
    sentence.is_short = sentence.tokens.size() < kShortSentenceTokens;
    doc.sentences.push_back(std::move(sentence));
  }
  if (doc.sentences.empty()) {
    throw InputError("document '" + doc.id + "' has no usable sentences");
  }
  return doc;
}

Dataset load_dataset(const std::filesystem::path& root,
                     const TokenizeOptions& options) {
  constexpr std::string_view kDocSuffix = ".doc.txt";
  constexpr std::string_view kGoldSuffix = ".gold.txt";

  std::error_code ec;
  if (!std::filesystem::is_directory(root, ec)) {
    throw InputError("dataset root is not a readable directory: " +
                     root.string());
  }

  std::map<std::string, std::filesystem::path> docs;
  std::map<std::string, std::filesystem::path> golds;
  std::filesystem::directory_iterator it(root, ec);
  if (ec) throw InputError("cannot list dataset root: " + root.string());
  for (const auto& entry : it) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.ends_with(kDocSuffix)) {
      docs.emplace(name.substr(0, name.size() - kDocSuffix.size()),
                   entry.path());
    } else if (name.ends_with(kGoldSuffix)) {
      golds.emplace(name.substr(0, name.size() - kGoldSuffix.size()),
                    entry.path());
    }
  }

  Dataset dataset;
  dataset.name = std::filesystem::absolute(root).lexically_normal()
                     .filename().string();
  if (dataset.name.empty()) {
    dataset.name = std::filesystem::absolute(root).lexically_normal()
                       .parent_path().filename().string();
  }
  for (const auto& [id, doc_path] : docs) {
    const auto gold_it = golds.find(id);
    if (gold_it == golds.end()) {
      dataset.diagnostics.push_back({id, "missing gold file " + id +
                                             std::string(kGoldSuffix)});
      continue;
    }
    try {
      DatasetEntry entry;
      entry.gold = read_text_file(gold_it->second);
      if (entry.gold.find_first_not_of(" \t\r\n") == std::string::npos) {
        dataset.diagnostics.push_back({id, "gold summary is empty"});
        continue;
      }
      entry.document = make_document(id, read_text_file(doc_path), options);
      entry.doc_path = doc_path;
      entry.gold_path = gold_it->second;
      dataset.entries.push_back(std::move(entry));
    } catch (const InputError& e) {
      dataset.diagnostics.push_back({id, e.what()});
    }
  }
  for (const auto& [id, path] : golds) {
    if (!docs.contains(id)) {
      dataset.diagnostics.push_back({id, "gold file without document"});
    }
  }
  return dataset;
}

FeatureMatrix build_feature_matrix(const Document& doc, WeightScheme scheme,
                                   bool normalize) {
  FeatureMatrix features;
  std::unordered_map<std::string, std::size_t> term_ids;
  std::vector<std::map<std::size_t, double>> counts(doc.n());
  for (std::size_t s = 0; s < doc.n(); ++s) {
    for (const auto& token : doc.sentences[s].tokens) {
      auto [it, inserted] = term_ids.try_emplace(token, term_ids.size());
      if (inserted) features.vocabulary.push_back(token);
      counts[s][it->second] += 1.0;
    }
  }

  std::vector<std::size_t> df(features.vocabulary.size(), 0);
  for (const auto& column : counts) {
    for (const auto& [term, count] : column) ++df[term];
  }

  const double n = static_cast<double>(doc.n());
  features.columns.resize(doc.n());
  for (std::size_t s = 0; s < doc.n(); ++s) {
    auto& column = features.columns[s];
    column.reserve(counts[s].size());
    double norm2 = 0.0;
    for (const auto& [term, count] : counts[s]) {
      double weight = count;
      if (scheme == WeightScheme::kTfIdf) {
        weight *= std::log(n / static_cast<double>(df[term]));
      }
      column.emplace_back(term, weight);
      norm2 += weight * weight;
    }
    if (normalize && norm2 > 0.0) {
      const double inv = 1.0 / std::sqrt(norm2);
      for (auto& entry : column) entry.second *= inv;
    }
  }
  return features;
}

}  // namespace fwsum::corpus
