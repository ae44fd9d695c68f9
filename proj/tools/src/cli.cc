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


#include "fwsum/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <CLI11.hpp>

#include "fwsum/corpus.h"
#include "fwsum/error.h"
#include "fwsum/result_io.h"

namespace fwsum::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    std::string item = trim(text.substr(start, end - start));
    if (!item.empty()) items.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            std::string_view expected) {
  throw ConfigError("invalid value '" + value + "' for '" + key +
                    "' (expected " + std::string(expected) + ")");
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double parsed = 0.0;
  try {
    parsed = std::stod(value, &used);
  } catch (const std::exception&) {
    bad_value(key, value, "a number");
  }
  if (used != value.size() || !std::isfinite(parsed)) {
    bad_value(key, value, "a number");
  }
  return parsed;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
  if (value.empty() ||
      !std::all_of(value.begin(), value.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    bad_value(key, value, "a non-negative integer");
  }
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    bad_value(key, value, "a non-negative integer");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  bad_value(key, value, "true or false");
}

const std::string* lookup(const Settings& settings, const std::string& key) {
  auto it = settings.find(key);
  return it == settings.end() ? nullptr : &it->second;
}

// Owns the stopword set that TokenizeOptions points at.
struct Tokenization {
  corpus::StopwordSet custom;
  corpus::TokenizeOptions options;

  explicit Tokenization(const RunConfig& config) {
    if (config.stopwords) {
      custom = corpus::load_stopwords(*config.stopwords);
      options.stopwords = &custom;
    } else {
      options.stopwords = &corpus::default_stopwords();
    }
  }
};

std::optional<kernel::EmbeddingTable> load_embeddings(
    const RunConfig& config, const std::unordered_set<std::string>& vocab) {
  if (!config.embeddings) return std::nullopt;
  kernel::EmbeddingTable table =
      kernel::load_word_embeddings(*config.embeddings, &vocab);
  if (config.frequencies) kernel::load_word_frequencies(*config.frequencies, table);
  return table;
}

void add_rouge_vocabulary(std::string_view text,
                          std::unordered_set<std::string>& vocab) {
  for (auto& token : eval::rouge_tokenize(text)) vocab.insert(std::move(token));
}

bool uses_sif(const RunConfig& config) {
  return std::find(config.methods.begin(), config.methods.end(),
                   pipeline::Method::kFwsumSif) != config.methods.end();
}

std::string format_seconds(double seconds) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", seconds);
  return buffer;
}

std::string format_percent(double percent) {
  std::ostringstream s;
  s << percent;
  return s.str();
}

}  // namespace

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys{
      "kernel",     "k",          "k-percent", "beta",      "eps",
      "max-iters",  "step-rule",  "nonneg",    "psd",       "embeddings",
      "frequencies", "stopwords", "out",       "methods",   "metrics",
      "composition", "tau",       "level",     "resamples", "seed",
      "k-percents", "repeats"};
  return keys;
}

Settings parse_config_text(std::string_view text) {
  Settings settings;
  const auto& keys = known_keys();
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto newline = text.find('\n', start);
    const auto end = newline == std::string_view::npos ? text.size() : newline;
    const std::string line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'");
    }
    settings[std::move(key)] = std::move(value);
  }
  return settings;
}

Settings load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_config_text(buffer.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

Settings merge_settings(const Settings& file, const Settings& flags) {
  Settings merged = file;
  if (flags.count("k") || flags.count("k-percent")) {
    merged.erase("k");
    merged.erase("k-percent");
  }
  for (const auto& [key, value] : flags) merged[key] = value;
  return merged;
}

RunConfig resolve_config(const Settings& settings) {
  RunConfig config;
  if (auto v = lookup(settings, "kernel")) config.kernel = pipeline::parse_kernel(*v);

  const std::string* k = lookup(settings, "k");
  const std::string* k_percent = lookup(settings, "k-percent");
  if (k && k_percent) throw ConfigError("set only one of 'k' and 'k-percent'");
  if (k) {
    config.k = parse_unsigned("k", *k);
    if (*config.k < 1) bad_value("k", *k, "an integer >= 1");
  }
  if (k_percent) {
    config.k_percent = parse_double("k-percent", *k_percent);
    if (!(*config.k_percent > 0.0 && *config.k_percent <= 100.0)) {
      bad_value("k-percent", *k_percent, "a percentage in (0, 100]");
    }
  }
  if (auto v = lookup(settings, "beta")) {
    config.beta = parse_double("beta", *v);
    if (!(*config.beta > 0.0)) bad_value("beta", *v, "a positive number");
  }
  if (auto v = lookup(settings, "eps")) {
    config.eps = parse_double("eps", *v);
    if (!(*config.eps > 0.0)) bad_value("eps", *v, "a positive number");
  }
  if (auto v = lookup(settings, "max-iters")) {
    config.max_iters = parse_unsigned("max-iters", *v);
  }
  if (auto v = lookup(settings, "step-rule")) {
    config.step_rule = solver::parse_step_rule(*v);
  }
  if (auto v = lookup(settings, "nonneg")) config.nonneg = parse_bool("nonneg", *v);
  if (auto v = lookup(settings, "psd")) {
    if (*v == "none") {
      config.psd = kernel::PsdRepair::kNone;
    } else if (*v == "diagonal-shift" || *v == "diagonal_shift") {
      config.psd = kernel::PsdRepair::kDiagonalShift;
    } else {
      bad_value("psd", *v, "none or diagonal-shift");
    }
  }
  if (auto v = lookup(settings, "embeddings")) config.embeddings = *v;
  if (auto v = lookup(settings, "frequencies")) config.frequencies = *v;
  if (auto v = lookup(settings, "stopwords")) config.stopwords = *v;
  if (auto v = lookup(settings, "out")) config.out = *v;

  if (auto v = lookup(settings, "methods")) {
    config.methods.clear();
    for (const auto& name : split_list(*v)) {
      const pipeline::Method m = pipeline::parse_method(name);
      if (std::find(config.methods.begin(), config.methods.end(), m) ==
          config.methods.end()) {
        config.methods.push_back(m);
      }
    }
    if (config.methods.empty()) bad_value("methods", *v, "at least one method");
  }
  if (auto v = lookup(settings, "metrics")) {
    config.metrics = {false, false};
    for (const auto& name : split_list(*v)) {
      if (name == "lexical") {
        config.metrics.lexical = true;
      } else if (name == "semantic") {
        config.metrics.semantic = true;
      } else {
        bad_value("metrics", *v, "a list of lexical, semantic");
      }
    }
    if (!config.metrics.lexical && !config.metrics.semantic) {
      bad_value("metrics", *v, "a list of lexical, semantic");
    }
  }
  if (auto v = lookup(settings, "composition")) {
    if (*v == "sum") {
      config.composition = eval::Composition::kSum;
    } else if (*v == "multiply") {
      config.composition = eval::Composition::kMultiply;
    } else {
      bad_value("composition", *v, "sum or multiply");
    }
  }
  if (auto v = lookup(settings, "tau")) {
    config.tau = parse_double("tau", *v);
    if (!(config.tau > 0.0 && config.tau <= 1.0)) bad_value("tau", *v, "(0, 1]");
  }
  if (auto v = lookup(settings, "level")) {
    config.level = parse_double("level", *v);
    if (!(config.level > 0.0 && config.level < 1.0)) bad_value("level", *v, "(0, 1)");
  }
  if (auto v = lookup(settings, "resamples")) {
    config.resamples = parse_unsigned("resamples", *v);
    if (config.resamples < 1) bad_value("resamples", *v, "an integer >= 1");
  }
  if (auto v = lookup(settings, "seed")) config.seed = parse_unsigned("seed", *v);
  if (auto v = lookup(settings, "k-percents")) {
    config.k_percents.clear();
    for (const auto& item : split_list(*v)) {
      const double p = parse_double("k-percents", item);
      if (!(p >= 0.0 && p <= 100.0)) bad_value("k-percents", item, "[0, 100]");
      config.k_percents.push_back(p);
    }
    if (config.k_percents.empty()) bad_value("k-percents", *v, "a list");
  }
  if (auto v = lookup(settings, "repeats")) {
    config.repeats = parse_unsigned("repeats", *v);
    if (config.repeats < 1) bad_value("repeats", *v, "an integer >= 1");
  }
  return config;
}

pipeline::PipelineOptions pipeline_options(const RunConfig& config) {
  pipeline::PipelineOptions options;
  options.kernel = config.kernel;
  options.psd = config.psd;
  options.beta = config.beta;
  options.eps = config.eps;
  options.max_iters = config.max_iters;
  options.step_rule = config.step_rule;
  options.respect_nonnegativity = config.nonneg;
  return options;
}

int cmd_summarize(const std::filesystem::path& input, const RunConfig& config,
                  std::ostream& out, std::ostream& err) {
  if (config.kernel == pipeline::KernelKind::kSif && !config.embeddings) {
    throw ConfigError("sif kernel requires embeddings: set --embeddings");
  }
  if (!config.k && !config.k_percent) {
    throw ConfigError("summarize needs one of --k or --k-percent");
  }
  const Tokenization tokenization(config);
  const corpus::Document doc = corpus::make_document(
      input.stem().string(), corpus::read_text_file(input), tokenization.options);

  std::unordered_set<std::string> vocab;
  for (const auto& s : doc.sentences) vocab.insert(s.tokens.begin(), s.tokens.end());
  const auto table = load_embeddings(config, vocab);

  pipeline::PipelineOptions options = pipeline_options(config);
  if (table) options.embeddings = &*table;
  const std::size_t k = config.k ? std::min(*config.k, doc.n())
                                 : pipeline::resolve_k_percent(*config.k_percent, doc.n());

  const pipeline::Summary summary = pipeline::fw_summarize(doc, k, options);
  for (const auto& sentence : summary.sentences) out << sentence << '\n';

  if (summary.solver) {
    const auto& result = *summary.solver;
    if (!result.diagnostic.empty()) err << "note: " << result.diagnostic << '\n';
    if (result.selected.size() < k) {
      err << "note: selected " << result.selected.size() << " of k = " << k
          << " sentences (exit: " << solver::to_string(result.exit_reason)
          << ")\n";
    }
    if (config.out) {
      std::ofstream record(*config.out, std::ios::binary);
      if (!record) throw InputError("cannot write " + config.out->string());
      record << io::to_json_line(result, doc.id) << '\n';
    }
  }
  return kExitOk;
}

int cmd_eval(const std::filesystem::path& root, const RunConfig& config,
             std::ostream& out, std::ostream& err) {
  if ((config.metrics.semantic || uses_sif(config)) && !config.embeddings) {
    throw ConfigError(
        "semantic metrics and fwsum-sif require embeddings: set --embeddings");
  }
  const Tokenization tokenization(config);
  const corpus::Dataset dataset = corpus::load_dataset(root, tokenization.options);
  for (const auto& d : dataset.diagnostics) {
    err << "warning: " << d.id << ": " << d.message << '\n';
  }

  std::unordered_set<std::string> vocab;
  if (config.embeddings) {
    for (const auto& entry : dataset.entries) {
      add_rouge_vocabulary(entry.gold, vocab);
      for (const auto& s : entry.document.sentences) {
        add_rouge_vocabulary(s.raw, vocab);
        vocab.insert(s.tokens.begin(), s.tokens.end());
      }
    }
  }
  const auto table = load_embeddings(config, vocab);

  pipeline::PipelineOptions options = pipeline_options(config);
  if (table) options.embeddings = &*table;
  eval::EvalOptions eval_options;
  eval_options.level = config.level;
  eval_options.resamples = config.resamples;
  eval_options.seed = config.seed;
  eval_options.semantic_tau = config.tau;
  eval_options.composition = config.composition;

  std::vector<eval::ScoreRow> rows;
  for (pipeline::Method method : config.methods) {
    const std::string name(pipeline::to_string(method));
    eval::ScoreTable scores = eval::evaluate_system(
        dataset, name, pipeline::make_summarizer(method, options),
        config.metrics, table ? &*table : nullptr, eval_options);
    for (const auto& d : scores.diagnostics) {
      err << "warning: " << name << ": " << d.id << ": " << d.message << '\n';
    }
    rows.insert(rows.end(), scores.rows.begin(), scores.rows.end());
  }

  if (config.out) {
    std::ofstream csv(*config.out, std::ios::binary);
    if (!csv) throw InputError("cannot write " + config.out->string());
    eval::write_csv(rows, csv);
    eval::write_table(rows, out);
  } else {
    eval::write_csv(rows, out);
  }
  return kExitOk;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<BenchRow> run_bench(const corpus::Document& doc,
                                const RunConfig& config,
                                const kernel::EmbeddingTable* table) {
  pipeline::PipelineOptions options = pipeline_options(config);
  options.embeddings = table;
  std::vector<BenchRow> rows;
  for (pipeline::Method method : config.methods) {
    if (method == pipeline::Method::kGoldEcho) {
      throw ConfigError("gold-echo cannot be benchmarked");
    }
    for (double percent : config.k_percents) {
      const std::size_t k = pipeline::resolve_k_percent(percent, doc.n());
      std::vector<double> times;
      for (std::size_t r = 0; r < config.repeats; ++r) {
        const auto start = std::chrono::steady_clock::now();
        const pipeline::Summary summary =
            pipeline::summarize(doc, k, method, options);
        const auto stop = std::chrono::steady_clock::now();
        if (summary.indices.size() > k) {
          throw SolverError("summary longer than requested");
        }
        times.push_back(std::chrono::duration<double>(stop - start).count());
      }
      rows.push_back({std::string(pipeline::to_string(method)), percent,
                      median(std::move(times))});
    }
  }
  return rows;
}

int cmd_bench(const std::filesystem::path& input, const RunConfig& config,
              std::ostream& out, std::ostream&) {
  if (uses_sif(config) && !config.embeddings) {
    throw ConfigError("fwsum-sif requires embeddings: set --embeddings");
  }
  const Tokenization tokenization(config);
  const corpus::Document doc = corpus::make_document(
      input.stem().string(), corpus::read_text_file(input), tokenization.options);
  std::unordered_set<std::string> vocab;
  for (const auto& s : doc.sentences) vocab.insert(s.tokens.begin(), s.tokens.end());
  const auto table = load_embeddings(config, vocab);

  const std::vector<BenchRow> rows =
      run_bench(doc, config, table ? &*table : nullptr);

  std::ofstream file;
  if (config.out) {
    file.open(*config.out, std::ios::binary);
    if (!file) throw InputError("cannot write " + config.out->string());
  }
  std::ostream& csv = config.out ? static_cast<std::ostream&>(file) : out;
  csv << "method,k_percent,seconds\n";
  for (const auto& row : rows) {
    csv << row.method << ',' << format_percent(row.k_percent) << ','
        << format_seconds(row.seconds) << '\n';
  }
  return kExitOk;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Extractive summarization by Frank-Wolfe sentence selection",
               "fwsum"};
  app.require_subcommand(1);

  struct Flag {
    std::string key;
    CLI::Option* option = nullptr;
    std::string value;
    bool toggle = false;
  };
  std::deque<Flag> flags;
  std::string config_path;
  std::string input;

  auto add_options = [&](CLI::App* sub) {
    sub->add_option("input", input, "Input document or dataset directory")
        ->required();
    sub->add_option("--config", config_path, "key=value settings file");
    static const std::map<std::string, std::string> help{
        {"kernel", "Similarity kernel: bm25, cosine or sif"},
        {"k", "Number of sentences to select"},
        {"k-percent", "Summary length as a percentage of the sentence count"},
        {"beta", "Group-L1 radius (default k)"},
        {"eps", "Gap tolerance (default 1e-6 tr(K))"},
        {"max-iters", "Iteration cap (default 10k + 100)"},
        {"step-rule", "line-search or decaying"},
        {"psd", "none or diagonal-shift"},
        {"embeddings", "word2vec text-format vectors"},
        {"frequencies", "'token count' lines for SIF weights"},
        {"stopwords", "One stopword per line"},
        {"out", "Output file (JSONL record or CSV)"},
        {"methods", "Comma-separated methods"},
        {"metrics", "Comma-separated: lexical, semantic"},
        {"composition", "Semantic n-gram composition: sum or multiply"},
        {"tau", "Semantic LCS match threshold"},
        {"level", "Confidence level of bootstrap intervals"},
        {"resamples", "Bootstrap resamples"},
        {"seed", "Bootstrap seed"},
        {"k-percents", "Comma-separated summary lengths for bench"},
        {"repeats", "Timing repeats for bench"},
    };
    for (const auto& key : known_keys()) {
      Flag& flag = flags.emplace_back();
      flag.key = key;
      if (key == "nonneg") {
        flag.toggle = true;
        flag.option = sub->add_flag("--nonneg",
                                    "Restrict the LMO to non-negative vertices");
      } else {
        flag.option = sub->add_option("--" + key, flag.value, help.at(key));
      }
    }
  };

  CLI::App* summarize =
      app.add_subcommand("summarize", "Summarize one document");
  CLI::App* evaluate =
      app.add_subcommand("eval", "Score methods over a dataset directory");
  CLI::App* bench = app.add_subcommand("bench", "Time methods against k");
  // Options are registered per subcommand; only one subcommand runs, so the
  // shared storage is filled at most once.
  for (CLI::App* sub : {summarize, evaluate, bench}) add_options(sub);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();  // program name
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    Settings file;
    if (!config_path.empty()) {
      file = load_config_file(config_path);
    } else if (const char* env = std::getenv("FWSUM_CONFIG"); env && *env) {
      file = load_config_file(env);
    }
    Settings given;
    for (const auto& flag : flags) {
      if (flag.option->count() == 0) continue;
      given[flag.key] = flag.toggle ? "true" : flag.value;
    }
    const RunConfig config = resolve_config(merge_settings(file, given));
    if (summarize->parsed()) return cmd_summarize(input, config, out, err);
    if (evaluate->parsed()) return cmd_eval(input, config, out, err);
    return cmd_bench(input, config, out, err);
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace fwsum::cli
