#pragma once

// 23-question metaknowledge templates: each question answers yes/no for a
// record and owns one bit of the record's Word23 (bit 0 = least significant).

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "golayfuzz/error.hpp"
#include "golayfuzz/ingestion.hpp"
#include "golayfuzz/word.hpp"

namespace golayfuzz {

inline constexpr int kTemplateSize = Word23::kBits;

enum class Comparator { kGreaterEqual, kLessEqual };

/// Yes iff the numeric field compares true against the threshold. Equality is yes.
struct NumericThreshold {
  std::string field;
  Comparator op = Comparator::kGreaterEqual;
  double threshold = 0.0;
};

/// Yes iff the listed semantic-element terms occur as whole-token runs.
struct TermPresence {
  std::vector<std::string> terms;  // as written in the config
  std::vector<Term> normalized;
  MatchMode match = MatchMode::kAny;
  std::optional<std::string> field;  // structured records only; default: any field
};

struct Question {
  int bit = 0;
  std::string name;
  std::variant<NumericThreshold, TermPresence> kind;
};

struct TemplateSpec {
  std::string name;
  std::vector<Question> questions;  // config order; bits form a permutation of 0..22
};

using WarningSink = std::function<void(const std::string&)>;

/// A bit permutation: `perm[old_bit] = new_bit`.
using BitPermutation = std::array<int, kTemplateSize>;

namespace detail {

inline std::string question_label(std::size_t index, const nlohmann::json& q) {
  std::string label = "question " + std::to_string(index);
  if (q.is_object() && q.contains("bit") && q["bit"].is_number_integer()) {
    label += " (bit " + std::to_string(q["bit"].get<long long>()) + ")";
  }
  return label;
}

inline Question compile_question(std::size_t index, const nlohmann::json& q) {
  const std::string where = question_label(index, q);
  auto fail = [&](const std::string& why) -> ValidationError { return ValidationError(where + ": " + why); };

  if (!q.is_object()) throw fail("must be an object");
  if (!q.contains("bit") || !q["bit"].is_number_integer()) throw fail("missing integer 'bit'");
  const auto bit = q["bit"].get<long long>();
  if (bit < 0 || bit >= kTemplateSize) throw fail("bit " + std::to_string(bit) + " outside 0..22");

  Question out;
  out.bit = static_cast<int>(bit);
  if (q.contains("name")) {
    if (!q["name"].is_string()) throw fail("'name' must be a string");
    out.name = q["name"].get<std::string>();
  }
  if (!q.contains("kind") || !q["kind"].is_string()) throw fail("missing string 'kind'");
  const auto kind = q["kind"].get<std::string>();

  if (kind == "numeric_threshold") {
    NumericThreshold nt;
    if (!q.contains("field") || !q["field"].is_string() || q["field"].get<std::string>().empty()) {
      throw fail("numeric_threshold needs a non-empty string 'field'");
    }
    nt.field = q["field"].get<std::string>();
    if (!q.contains("op") || !q["op"].is_string()) throw fail("numeric_threshold needs 'op' (\">=\" or \"<=\")");
    const auto op = q["op"].get<std::string>();
    if (op == ">=") {
      nt.op = Comparator::kGreaterEqual;
    } else if (op == "<=") {
      nt.op = Comparator::kLessEqual;
    } else {
      throw fail("unsupported op '" + op + "'");
    }
    if (!q.contains("threshold") || !q["threshold"].is_number()) throw fail("numeric_threshold needs numeric 'threshold'");
    nt.threshold = q["threshold"].get<double>();
    if (!std::isfinite(nt.threshold)) throw fail("threshold must be finite");
    out.kind = std::move(nt);
  } else if (kind == "term_presence") {
    TermPresence tp;
    if (!q.contains("terms") || !q["terms"].is_array() || q["terms"].empty()) {
      throw fail("term_presence needs a non-empty 'terms' array");
    }
    for (const auto& t : q["terms"]) {
      if (!t.is_string()) throw fail("terms must be strings");
      auto raw = t.get<std::string>();
      auto norm = normalize_text(raw);
      if (norm.empty()) throw fail("term '" + raw + "' is empty after normalization");
      tp.terms.push_back(std::move(raw));
      tp.normalized.push_back(std::move(norm));
    }
    const std::string match = q.value("match", std::string("any"));
    if (match == "any") {
      tp.match = MatchMode::kAny;
    } else if (match == "all") {
      tp.match = MatchMode::kAll;
    } else {
      throw fail("match must be 'any' or 'all', got '" + match + "'");
    }
    if (q.contains("field")) {
      if (!q["field"].is_string()) throw fail("'field' must be a string");
      tp.field = q["field"].get<std::string>();
    }
    out.kind = std::move(tp);
  } else {
    throw fail("unknown kind '" + kind + "'");
  }
  return out;
}

inline bool compare(double value, const NumericThreshold& nt) {
  return nt.op == Comparator::kGreaterEqual ? value >= nt.threshold : value <= nt.threshold;
}

inline std::optional<double> parse_number(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

inline void warn(const WarningSink& sink, const std::string& msg) {
  if (sink) sink(msg);
}

}  // namespace detail

inline TemplateSpec compile_template(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ValidationError("template must be a JSON object");
  TemplateSpec spec;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ValidationError("template 'name' must be a string");
    spec.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("questions") || !doc["questions"].is_array()) {
    throw ValidationError("template needs a 'questions' array");
  }
  const auto& qs = doc["questions"];
  if (qs.size() != kTemplateSize) {
    throw ValidationError("expected 23 questions, got " + std::to_string(qs.size()));
  }
  std::array<int, kTemplateSize> owner;
  owner.fill(-1);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    Question q = detail::compile_question(i, qs[i]);
    if (owner[q.bit] >= 0) {
      throw ValidationError("bit " + std::to_string(q.bit) + " claimed by both question " +
                            std::to_string(owner[q.bit]) + " and question " + std::to_string(i));
    }
    owner[q.bit] = static_cast<int>(i);
    spec.questions.push_back(std::move(q));
  }
  return spec;
}

inline TemplateSpec compile_template_file(const std::filesystem::path& path) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::parse_error& err) {
    throw ValidationError(path.string() + ": " + err.what());
  }
  try {
    return compile_template(doc);
  } catch (const ValidationError& err) {
    throw ValidationError(path.string() + ": " + err.what());
  }
}

inline nlohmann::json to_json(const TemplateSpec& spec) {
  nlohmann::json qs = nlohmann::json::array();
  for (const auto& q : spec.questions) {
    nlohmann::json j;
    j["bit"] = q.bit;
    if (!q.name.empty()) j["name"] = q.name;
    if (const auto* nt = std::get_if<NumericThreshold>(&q.kind)) {
      j["kind"] = "numeric_threshold";
      j["field"] = nt->field;
      j["op"] = nt->op == Comparator::kGreaterEqual ? ">=" : "<=";
      j["threshold"] = nt->threshold;
    } else {
      const auto& tp = std::get<TermPresence>(q.kind);
      j["kind"] = "term_presence";
      j["terms"] = tp.terms;
      j["match"] = tp.match == MatchMode::kAll ? "all" : "any";
      if (tp.field) j["field"] = *tp.field;
    }
    qs.push_back(std::move(j));
  }
  return {{"name", spec.name}, {"questions", std::move(qs)}};
}

inline Word23 encode_record(const TemplateSpec& spec, const StructuredRecord& rec, const WarningSink& warn = {}) {
  std::uint32_t bits = 0;
  for (const auto& q : spec.questions) {
    bool yes = false;
    if (const auto* nt = std::get_if<NumericThreshold>(&q.kind)) {
      const std::string* raw = rec.field(nt->field);
      if (raw == nullptr) {
        detail::warn(warn, "record '" + rec.id + "': field '" + nt->field + "' missing (bit " +
                               std::to_string(q.bit) + " answered no)");
      } else if (auto v = detail::parse_number(*raw)) {
        yes = detail::compare(*v, *nt);
      } else {
        detail::warn(warn, "record '" + rec.id + "': field '" + nt->field + "' value '" + *raw +
                               "' is not numeric (bit " + std::to_string(q.bit) + " answered no)");
      }
    } else {
      const auto& tp = std::get<TermPresence>(q.kind);
      auto term_found = [&](const Term& term) {
        if (tp.field) {
          const std::string* raw = rec.field(*tp.field);
          return raw != nullptr && term_matches(normalize_text(*raw), term);
        }
        return std::any_of(rec.fields.begin(), rec.fields.end(),
                           [&](const auto& kv) { return term_matches(normalize_text(kv.second), term); });
      };
      if (tp.field && rec.field(*tp.field) == nullptr) {
        detail::warn(warn, "record '" + rec.id + "': field '" + *tp.field + "' missing (bit " +
                               std::to_string(q.bit) + " answered no)");
      } else {
        yes = tp.match == MatchMode::kAll ? std::all_of(tp.normalized.begin(), tp.normalized.end(), term_found)
                                          : std::any_of(tp.normalized.begin(), tp.normalized.end(), term_found);
      }
    }
    if (yes) bits |= 1u << q.bit;
  }
  return Word23(bits);
}

inline Word23 encode_record(const TemplateSpec& spec, const Document& doc, const WarningSink& warn = {}) {
  if (doc.tokens.empty()) detail::warn(warn, "document '" + doc.id + "' has no tokens");
  std::uint32_t bits = 0;
  for (const auto& q : spec.questions) {
    if (const auto* nt = std::get_if<NumericThreshold>(&q.kind)) {
      detail::warn(warn, "document '" + doc.id + "': numeric field '" + nt->field +
                             "' unavailable in text (bit " + std::to_string(q.bit) + " answered no)");
      continue;
    }
    const auto& tp = std::get<TermPresence>(q.kind);
    if (element_present(doc.tokens, tp.normalized, tp.match)) bits |= 1u << q.bit;
  }
  return Word23(bits);
}

inline bool is_bijection(std::span<const int, kTemplateSize> perm) {
  std::array<bool, kTemplateSize> used{};
  for (int b : perm) {
    if (b < 0 || b >= kTemplateSize || used[b]) return false;
    used[b] = true;
  }
  return true;
}

/// Moves the question at bit b to bit perm[b].
inline TemplateSpec reorder_template(const TemplateSpec& spec, const BitPermutation& perm) {
  if (!is_bijection(perm)) throw ValidationError("bit permutation is not a bijection on 0..22");
  TemplateSpec out = spec;
  for (auto& q : out.questions) q.bit = perm[q.bit];
  return out;
}

/// Applies the same bit move to an already-encoded vector.
inline Word23 permute_word(Word23 w, const BitPermutation& perm) {
  std::uint32_t out = 0;
  for (int b = 0; b < kTemplateSize; ++b) {
    if (w.bit(b)) out |= 1u << perm[b];
  }
  return Word23(out);
}

}  // namespace golayfuzz
