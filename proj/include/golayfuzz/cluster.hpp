#pragma once

// Two-label cluster resolution: a record is Label1 iff its vector lies within
// Hamming distance hd of a prototype vector, Label2 otherwise.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <span>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "golayfuzz/assignment.hpp"
#include "golayfuzz/error.hpp"
#include "golayfuzz/evaluation.hpp"
#include "golayfuzz/fuzzy_dictionary.hpp"
#include "golayfuzz/word.hpp"

namespace golayfuzz {

inline constexpr int kMaxIndexedDistance = FuzzyDictionary<>::kMaxLookupDistance;

struct CorpusEntry {
  std::string id;
  Word23 vector;

  friend bool operator==(const CorpusEntry&, const CorpusEntry&) = default;
};

/// An encoded corpus with its frozen fuzzy index. Dictionary payloads are
/// positions in entries().
class EncodedCorpus {
 public:
  EncodedCorpus() { dict_.freeze(); }

  explicit EncodedCorpus(std::vector<CorpusEntry> entries) : entries_(std::move(entries)) {
    by_id_.reserve(entries_.size());
    for (std::uint32_t i = 0; i < entries_.size(); ++i) {
      if (!by_id_.emplace(entries_[i].id, i).second) {
        throw ValidationError("duplicate record id '" + entries_[i].id + "'");
      }
      dict_.insert(entries_[i].vector, i);
    }
    dict_.freeze();
    sorted_.resize(entries_.size());
    std::iota(sorted_.begin(), sorted_.end(), 0u);
    std::sort(sorted_.begin(), sorted_.end(),
              [this](std::uint32_t a, std::uint32_t b) { return entries_[a].id < entries_[b].id; });
  }

  std::size_t size() const { return entries_.size(); }
  std::span<const CorpusEntry> entries() const { return entries_; }
  const FuzzyDictionary<std::uint32_t>& dictionary() const { return dict_; }

  std::optional<Word23> vector_of(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) return std::nullopt;
    return entries_[it->second].vector;
  }

  /// Entry positions ordered by record id.
  std::span<const std::uint32_t> id_order() const { return sorted_; }

 private:
  std::vector<CorpusEntry> entries_;
  std::unordered_map<std::string, std::uint32_t> by_id_;
  std::vector<std::uint32_t> sorted_;
  FuzzyDictionary<std::uint32_t> dict_;
};

inline EncodedCorpus build_index(std::vector<CorpusEntry> corpus) { return EncodedCorpus(std::move(corpus)); }

/// Labels every record, sorted by id. hd 0..7 goes through the fuzzy index;
/// 8..23 falls back to a linear scan.
inline std::vector<ClusterAssignment> assign_labels(const EncodedCorpus& index, Word23 prototype, int hd) {
  if (hd < 0 || hd > Word23::kBits) {
    throw ValidationError("hd " + std::to_string(hd) + " outside 0.." + std::to_string(Word23::kBits));
  }
  const auto entries = index.entries();
  std::vector<char> inside(entries.size(), 0);
  if (hd <= kMaxIndexedDistance) {
    for (const auto& m : index.dictionary().lookup(prototype, hd)) inside[m.payload] = 1;
  } else {
    for (std::size_t i = 0; i < entries.size(); ++i) inside[i] = hamming_distance(entries[i].vector, prototype) <= hd;
  }
  std::vector<ClusterAssignment> out;
  out.reserve(entries.size());
  for (std::uint32_t i : index.id_order()) {
    out.push_back({entries[i].id, inside[i] ? Label::kLabel1 : Label::kLabel2,
                   hamming_distance(entries[i].vector, prototype)});
  }
  return out;
}

struct SweepRow {
  int hd = 0;
  std::size_t label1 = 0;
  std::size_t label2 = 0;
  std::optional<std::size_t> pos_label1;  // truly positive records under Label1
  std::optional<std::size_t> pos_label2;
  std::optional<ConfusionCounts> counts;
};

inline std::vector<SweepRow> sweep_hd(const EncodedCorpus& index, Word23 prototype, int hd_min, int hd_max,
                                      const std::unordered_map<std::string, bool>* truth = nullptr,
                                      Label positive = Label::kLabel1) {
  if (hd_min < 0 || hd_min > hd_max || hd_max > Word23::kBits) {
    throw ValidationError("hd range [" + std::to_string(hd_min) + "," + std::to_string(hd_max) + "] invalid");
  }
  std::vector<SweepRow> rows;
  for (int hd = hd_min; hd <= hd_max; ++hd) {
    const auto labels = assign_labels(index, prototype, hd);
    SweepRow row;
    row.hd = hd;
    for (const auto& a : labels) (a.label == Label::kLabel1 ? row.label1 : row.label2)++;
    if (truth != nullptr) {
      row.counts = confusion(labels, *truth, positive);
      std::size_t p1 = 0, p2 = 0;
      for (const auto& a : labels) {
        if (truth->at(a.id)) (a.label == Label::kLabel1 ? p1 : p2)++;
      }
      row.pos_label1 = p1;
      row.pos_label2 = p2;
    }
    rows.push_back(row);
  }
  return rows;
}

/// `hd,label1,label2[,pos_label1,pos_label2,TP,FP,TN,FN,TPR,SPC,PPV,ACC]`
/// with a header row; truth columns appear when the sweep had ground truth.
inline void write_sweep(std::ostream& out, const std::vector<SweepRow>& rows) {
  const bool with_truth = !rows.empty() && rows.front().counts.has_value();
  out << "hd,label1,label2";
  if (with_truth) out << ",pos_label1,pos_label2,TP,FP,TN,FN,TPR,SPC,PPV,ACC";
  out << '\n';
  for (const auto& r : rows) {
    out << r.hd << ',' << r.label1 << ',' << r.label2;
    if (with_truth) {
      const auto& c = *r.counts;
      const Metrics m = metrics(c);
      out << ',' << *r.pos_label1 << ',' << *r.pos_label2 << ',' << c.tp << ',' << c.fp << ',' << c.tn << ',' << c.fn
          << ',' << format_metric(m.tpr) << ',' << format_metric(m.spc) << ',' << format_metric(m.ppv) << ','
          << format_metric(m.acc);
    }
    out << '\n';
  }
}

namespace detail {

inline void check_id_writable(const std::string& id) {
  if (id.find_first_of(",\"\r\n") != std::string::npos) {
    throw ValidationError("record id '" + id + "' contains a delimiter, quote or newline");
  }
}

}  // namespace detail

/// `record_id,label,distance` with a header row.
inline void write_assignments(std::ostream& out, const std::vector<ClusterAssignment>& assignments) {
  out << "record_id,label,distance\n";
  for (const auto& a : assignments) {
    detail::check_id_writable(a.id);
    out << a.id << ',' << label_name(a.label) << ',' << a.distance << '\n';
  }
}

inline std::vector<ClusterAssignment> read_assignments(std::istream& in) {
  std::vector<ClusterAssignment> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line == "record_id,label,distance") continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) {
      throw ValidationError("assignments line " + std::to_string(line_no) + ": expected record_id,label,distance");
    }
    ClusterAssignment a;
    a.id = line.substr(0, c1);
    a.label = parse_label(std::string_view(line).substr(c1 + 1, c2 - c1 - 1));
    const std::string dist = line.substr(c2 + 1);
    auto [ptr, ec] = std::from_chars(dist.data(), dist.data() + dist.size(), a.distance);
    if (ec != std::errc{} || ptr != dist.data() + dist.size() || a.distance < 0 || a.distance > Word23::kBits) {
      throw ValidationError("assignments line " + std::to_string(line_no) + ": bad distance '" + dist + "'");
    }
    out.push_back(std::move(a));
  }
  return out;
}

/// Encoded corpus file: one `<record-id>,<vector-hex>` line per record.
inline void write_encoded_corpus(std::ostream& out, std::span<const CorpusEntry> corpus) {
  for (const auto& e : corpus) {
    detail::check_id_writable(e.id);
    out << e.id << ',' << to_hex(e.vector) << '\n';
  }
}

inline std::vector<CorpusEntry> read_encoded_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.rfind(',');
    if (comma == std::string::npos || comma == 0) {
      throw ValidationError("vector file line " + std::to_string(line_no) + ": expected <record-id>,<vector-hex>");
    }
    try {
      out.push_back({line.substr(0, comma), parse_word23(std::string_view(line).substr(comma + 1))});
    } catch (const ValidationError& err) {
      throw ValidationError("vector file line " + std::to_string(line_no) + ": " + err.what());
    }
  }
  return out;
}

/// "0x..." is an explicit vector; anything else names a record in the corpus.
inline Word23 resolve_prototype(const std::string& text, const EncodedCorpus& index) {
  if (text.starts_with("0x") || text.starts_with("0X")) return parse_word23(text);
  if (auto v = index.vector_of(text)) return *v;
  throw ValidationError("prototype '" + text + "' is neither 0x-prefixed hex nor a record id");
}

}  // namespace golayfuzz
