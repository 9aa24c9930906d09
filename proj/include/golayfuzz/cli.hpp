#pragma once

// Batch command-line surface. run() is the whole program; the executable only
// forwards argv and the standard streams.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <CLI11.hpp>

#include "golayfuzz/cluster.hpp"
#include "golayfuzz/evaluation.hpp"
#include "golayfuzz/fuzzy_dictionary.hpp"
#include "golayfuzz/golay.hpp"
#include "golayfuzz/ingestion.hpp"
#include "golayfuzz/meta_template.hpp"
#include "golayfuzz/verify.hpp"

namespace golayfuzz::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kVerificationFailure = 2 };

struct RunConfig {
  std::string subcommand;
  std::string word;
  std::string template_path;
  std::string input_path;
  std::string vectors_path;
  std::string assignments_path;
  std::string truth_file;
  std::string prototype;
  int hd = 0;
  int hd_min = 0;
  int hd_max = kMaxIndexedDistance;
  std::string delimiter = ",";
  std::string id_col = "id";
  std::string truth_col;
  std::string positive_label = "Label1";
  std::string counts;
  std::string out;
};

/// A ValidationError tagged with the pipeline stage that raised it.
class StageError : public ValidationError {
 public:
  StageError(const std::string& stage, const std::string& what) : ValidationError(stage + ": " + what) {}
};

template <class F>
auto in_stage(const std::string& name, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const StageError&) {
    throw;
  } catch (const ValidationError& err) {
    throw StageError(name, err.what());
  }
}

/// Exhaustive 2^23 scan; prints the summary and returns 0 or kVerificationFailure.
inline int run_verify_code(const GolayDecoder& decoder, std::ostream& out) {
  const CodeVerification v = verify_code(decoder);
  out << "perfect: " << v.perfect << "/" << v.words
      << ", size-6 fraction: " << Ratio(v.size6, v.words).format(6) << '\n';
  out << "error weights: 0:" << v.by_error_weight[0] << " 1:" << v.by_error_weight[1]
      << " 2:" << v.by_error_weight[2] << " 3:" << v.by_error_weight[3] << '\n';
  if (!v.passed()) {
    out << "verification FAILED";
    if (!v.perfectness_ok()) out << " (perfectness)";
    if (!v.hash_ok()) out << " (index-set sizes: " << v.bad_hash << " irregular)";
    out << '\n';
    return kVerificationFailure;
  }
  return kSuccess;
}

namespace detail {

inline char parse_delimiter(const std::string& d) {
  if (d == "\\t" || d == "tab") return '\t';
  if (d.size() != 1) throw ValidationError("delimiter must be a single character, got '" + d + "'");
  return d[0];
}

struct LoadedCorpus {
  std::vector<CorpusEntry> entries;
  std::vector<StructuredRecord> records;  // empty unless the input was delimited data
};

inline LoadedCorpus load_corpus(const RunConfig& cfg, std::ostream& err) {
  LoadedCorpus lc;
  if (!cfg.vectors_path.empty()) {
    lc.entries = in_stage("ingest", [&] {
      std::ifstream in(cfg.vectors_path);
      if (!in) throw ValidationError("cannot open '" + cfg.vectors_path + "'");
      return read_encoded_corpus(in);
    });
    return lc;
  }
  if (cfg.template_path.empty() || cfg.input_path.empty()) {
    throw StageError("config", "need --template and --input, or --vectors");
  }
  const TemplateSpec spec = in_stage("template", [&] { return compile_template_file(cfg.template_path); });
  const WarningSink warn = [&err](const std::string& msg) { err << "warning: " << msg << '\n'; };
  if (std::filesystem::is_directory(cfg.input_path)) {
    const auto docs = in_stage("ingest", [&] { return load_documents(cfg.input_path); });
    for (const auto& d : docs) lc.entries.push_back({d.id, encode_record(spec, d, warn)});
  } else {
    const char delim = in_stage("config", [&] { return parse_delimiter(cfg.delimiter); });
    lc.records = in_stage("ingest", [&] { return load_structured(cfg.input_path, delim, cfg.id_col); });
    for (const auto& r : lc.records) lc.entries.push_back({r.id, encode_record(spec, r, warn)});
  }
  return lc;
}

inline std::unordered_map<std::string, bool> truth_from_records(const std::vector<StructuredRecord>& records,
                                                                const std::string& column) {
  std::unordered_map<std::string, bool> truth;
  for (const auto& r : records) {
    const std::string* v = r.field(column);
    if (v == nullptr) throw ValidationError("truth column '" + column + "' not in data");
    try {
      truth.emplace(r.id, parse_truth(*v));
    } catch (const ValidationError& e) {
      throw ValidationError("record '" + r.id + "': " + e.what());
    }
  }
  return truth;
}

inline std::optional<std::unordered_map<std::string, bool>> load_truth(const RunConfig& cfg, const LoadedCorpus* lc) {
  if (cfg.truth_col.empty()) {
    if (!cfg.truth_file.empty()) throw StageError("config", "--truth-file requires --truth-col");
    return std::nullopt;
  }
  return in_stage("truth", [&] {
    if (!cfg.truth_file.empty()) {
      return truth_from_records(load_structured(cfg.truth_file, parse_delimiter(cfg.delimiter), cfg.id_col),
                                cfg.truth_col);
    }
    if (lc == nullptr || lc->records.empty()) {
      throw ValidationError("--truth-col needs delimited --input data or a --truth-file");
    }
    return truth_from_records(lc->records, cfg.truth_col);
  });
}

// Writes to --out when given, else to the standard output stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw StageError("write", "cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw StageError("write", "write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline ConfusionCounts parse_counts(const std::string& text) {
  std::array<std::uint64_t, 4> v{};
  std::size_t pos = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto next = text.find(',', pos);
    const std::string part = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v[i]);
    if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size()) {
      throw ValidationError("--counts expects TP,FP,TN,FN, got '" + text + "'");
    }
    if ((next == std::string::npos) != (i + 1 == v.size())) {
      throw ValidationError("--counts expects exactly four values TP,FP,TN,FN");
    }
    pos = next + 1;
  }
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace detail

inline int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  using namespace detail;
  const std::string& cmd = cfg.subcommand;

  if (cmd == "decode") {
    const DecodeResult d = in_stage("decode", [&] { return decode(parse_word23(cfg.word)); });
    out << "codeword " << to_hex(d.codeword) << "\ninfo " << to_hex(d.info) << "\nerror_pattern "
        << to_hex(d.error_pattern) << "\nerror_weight " << d.error_weight << '\n';
    return kSuccess;
  }
  if (cmd == "hash") {
    const IndexSet h = in_stage("hash", [&] { return fuzzy_hash(parse_word23(cfg.word)); });
    for (InfoWord12 i : h) out << to_hex(i) << '\n';
    return kSuccess;
  }
  if (cmd == "encode") {
    if (!cfg.word.empty()) {
      if (!cfg.template_path.empty() || !cfg.input_path.empty()) {
        throw StageError("config", "encode takes either an info word or --template/--input, not both");
      }
      out << to_hex(encode(in_stage("encode", [&] { return parse_info12(cfg.word); }))) << '\n';
      return kSuccess;
    }
    const LoadedCorpus lc = load_corpus(cfg, err);
    Sink sink(cfg.out, out);
    in_stage("write", [&] { write_encoded_corpus(sink.stream(), lc.entries); });
    sink.finish();
    return kSuccess;
  }
  if (cmd == "verify-code") return run_verify_code(kGolayDecoder, out);

  if (cmd == "cluster" || cmd == "sweep" || cmd == "stats") {
    LoadedCorpus lc = load_corpus(cfg, err);
    const auto truth = cmd == "sweep" ? load_truth(cfg, &lc) : std::nullopt;
    const EncodedCorpus index = in_stage("index", [&] { return build_index(std::move(lc.entries)); });
    Sink sink(cfg.out, out);
    if (cmd == "stats") {
      const IndexStats st = index.dictionary().stats();
      sink.stream() << "entries: " << st.entries << "\nsize1: " << st.size1 << "\nsize6: " << st.size6
                    << "\nsize6_fraction: " << (st.entries ? Ratio(st.size6, st.entries).format(6) : "null")
                    << "\noccupied_buckets: " << st.occupied_buckets << "\nbucket_min: " << st.min_bucket
                    << "\nbucket_mean: " << Ratio(st.slots, InfoWord12::kCount).format(6)
                    << "\nbucket_max: " << st.max_bucket << '\n';
    } else {
      if (cfg.prototype.empty()) throw StageError("config", "--prototype is required");
      const Word23 proto = in_stage("prototype", [&] { return resolve_prototype(cfg.prototype, index); });
      const Label positive = in_stage("config", [&] { return parse_label(cfg.positive_label); });
      if (cmd == "cluster") {
        const auto labels = in_stage("assign", [&] { return assign_labels(index, proto, cfg.hd); });
        in_stage("write", [&] { write_assignments(sink.stream(), labels); });
      } else {
        const auto rows = in_stage("assign", [&] {
          return sweep_hd(index, proto, cfg.hd_min, cfg.hd_max, truth ? &*truth : nullptr, positive);
        });
        in_stage("write", [&] { write_sweep(sink.stream(), rows); });
      }
    }
    sink.finish();
    return kSuccess;
  }

  if (cmd == "evaluate") {
    const Label positive = in_stage("config", [&] { return parse_label(cfg.positive_label); });
    ConfusionCounts counts;
    if (!cfg.counts.empty()) {
      counts = in_stage("config", [&] { return parse_counts(cfg.counts); });
    } else {
      if (cfg.assignments_path.empty() || cfg.input_path.empty() || cfg.truth_col.empty()) {
        throw StageError("config", "evaluate needs --counts, or --assignments with --input and --truth-col");
      }
      const auto assignments = in_stage("ingest", [&] {
        std::ifstream in(cfg.assignments_path);
        if (!in) throw ValidationError("cannot open '" + cfg.assignments_path + "'");
        return read_assignments(in);
      });
      RunConfig truth_cfg = cfg;
      truth_cfg.truth_file = cfg.input_path;
      const auto truth = load_truth(truth_cfg, nullptr);
      counts = in_stage("evaluate", [&] { return confusion(assignments, *truth, positive); });
    }
    const std::string report = in_stage("evaluate", [&] { return metrics_json(counts); });
    Sink sink(cfg.out, out);
    sink.stream() << report << '\n';
    sink.finish();
    return kSuccess;
  }
  throw StageError("config", "unknown subcommand '" + cmd + "'");
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Golay-code fuzzy hashing and two-label clustering of 23-bit feature vectors", "golayfuzz"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto corpus_flags = [&cfg](CLI::App* sub) {
    sub->add_option("--template", cfg.template_path, "template config (JSON)");
    sub->add_option("--input", cfg.input_path, "delimited data file, or a directory of text documents");
    sub->add_option("--vectors", cfg.vectors_path, "pre-encoded <record-id>,<vector-hex> file");
    sub->add_option("--delimiter", cfg.delimiter, "field delimiter for delimited input (\\t for tab)");
    sub->add_option("--id-col", cfg.id_col, "id column name");
    sub->add_option("--out", cfg.out, "output path (default: stdout)");
  };

  auto* enc = app.add_subcommand("encode", "encode a 12-bit info word, or encode a corpus through a template");
  enc->add_option("info", cfg.word, "info word hex, e.g. 0xfff");
  corpus_flags(enc);

  app.add_subcommand("decode", "decode a 23-bit word to its nearest codeword")
      ->add_option("word", cfg.word, "word hex")
      ->required();
  app.add_subcommand("hash", "print the fuzzy index set of a 23-bit word")
      ->add_option("word", cfg.word, "word hex")
      ->required();
  app.add_subcommand("verify-code", "exhaustive perfectness and index-set scan over all 2^23 words");

  auto* cluster = app.add_subcommand("cluster", "label records Label1/Label2 by distance to a prototype");
  corpus_flags(cluster);
  cluster->add_option("--prototype", cfg.prototype, "0x-prefixed vector or record id")->required();
  cluster->add_option("--hd", cfg.hd, "Hamming distance threshold (0..23)")->required();

  auto* sweep = app.add_subcommand("sweep", "label counts (and metrics) over a range of thresholds");
  corpus_flags(sweep);
  sweep->add_option("--prototype", cfg.prototype, "0x-prefixed vector or record id")->required();
  sweep->add_option("--hd-min", cfg.hd_min, "first threshold");
  sweep->add_option("--hd-max", cfg.hd_max, "last threshold");
  sweep->add_option("--truth-col", cfg.truth_col, "ground-truth column");
  sweep->add_option("--truth-file", cfg.truth_file, "delimited file holding the truth column");
  sweep->add_option("--positive-label", cfg.positive_label, "label counted as positive");

  auto* eval = app.add_subcommand("evaluate", "confusion matrix and TPR/SPC/PPV/ACC report");
  eval->add_option("--assignments", cfg.assignments_path, "assignments file from cluster");
  eval->add_option("--input", cfg.input_path, "delimited file holding the truth column");
  eval->add_option("--truth-col", cfg.truth_col, "ground-truth column");
  eval->add_option("--positive-label", cfg.positive_label, "label counted as positive");
  eval->add_option("--counts", cfg.counts, "evaluate raw counts TP,FP,TN,FN instead");
  eval->add_option("--delimiter", cfg.delimiter, "field delimiter");
  eval->add_option("--id-col", cfg.id_col, "id column name");
  eval->add_option("--out", cfg.out, "output path (default: stdout)");

  auto* stats = app.add_subcommand("stats", "index-set size histogram and bucket occupancy");
  corpus_flags(stats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationFailure;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    return dispatch(cfg, out, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

}  // namespace golayfuzz::cli
