#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "golayfuzz/error.hpp"

namespace golayfuzz {

/// One row of a delimited file. Values stay strings until a question reads them.
struct StructuredRecord {
  std::string id;
  std::vector<std::pair<std::string, std::string>> fields;  // header order

  const std::string* field(std::string_view name) const {
    for (const auto& [k, v] : fields) {
      if (k == name) return &v;
    }
    return nullptr;
  }
};

/// A text document reduced to its normalized token stream.
struct Document {
  std::string id;
  std::vector<std::string> tokens;
};

enum class MatchMode { kAny, kAll };

/// Lowercases ASCII and splits on every run of non-alphanumeric characters.
/// Bytes >= 0x80 count as token characters so UTF-8 words stay whole.
inline std::vector<std::string> normalize_text(std::string_view raw) {
  std::vector<std::string> tokens;
  std::string current;
  for (char ch : raw) {
    const auto u = static_cast<unsigned char>(ch);
    if ((u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || u >= 0x80) {
      current.push_back(ch);
    } else if (u >= 'A' && u <= 'Z') {
      current.push_back(static_cast<char>(u - 'A' + 'a'));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

/// A term is a run of normalized tokens; "annual report" matches only the two
/// tokens consecutively.
using Term = std::vector<std::string>;

inline bool term_matches(const std::vector<std::string>& tokens, const Term& term) {
  if (term.empty()) return false;
  return std::search(tokens.begin(), tokens.end(), term.begin(), term.end()) != tokens.end();
}

inline bool element_present(const std::vector<std::string>& tokens, const std::vector<Term>& terms, MatchMode mode) {
  auto hit = [&](const Term& t) { return term_matches(tokens, t); };
  return mode == MatchMode::kAll ? std::all_of(terms.begin(), terms.end(), hit)
                                 : std::any_of(terms.begin(), terms.end(), hit);
}

inline bool element_present(const std::vector<std::string>& tokens, const std::vector<std::string>& raw_terms,
                            MatchMode mode) {
  std::vector<Term> terms;
  terms.reserve(raw_terms.size());
  for (const auto& t : raw_terms) terms.push_back(normalize_text(t));
  return element_present(tokens, terms, mode);
}

namespace detail {

// Splits delimited text into rows; double quotes protect delimiters, newlines
// and doubled quotes. Each row carries the line number it starts on.
struct DelimitedRow {
  std::size_t line = 0;
  std::vector<std::string> cells;
};

inline std::vector<DelimitedRow> split_delimited(std::string_view text, char delimiter) {
  std::vector<DelimitedRow> rows;
  DelimitedRow row;
  std::string cell;
  bool quoted = false;
  bool row_has_content = false;
  std::size_t line = 1;
  row.line = 1;

  auto end_row = [&] {
    if (row_has_content || !cell.empty() || !row.cells.empty()) {
      row.cells.push_back(std::move(cell));
      rows.push_back(std::move(row));
    }
    row = DelimitedRow{};
    cell.clear();
    row_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (ch == '\n') ++line;
        cell.push_back(ch);
      }
      continue;
    }
    if (ch == '"' && cell.empty()) {
      quoted = true;
      row_has_content = true;
    } else if (ch == delimiter) {
      row.cells.push_back(std::move(cell));
      cell.clear();
      row_has_content = true;
    } else if (ch == '\n') {
      end_row();
      ++line;
      row.line = line;
    } else if (ch != '\r') {
      cell.push_back(ch);
    }
  }
  if (quoted) throw ValidationError("unterminated quoted field starting before line " + std::to_string(line));
  end_row();
  return rows;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Parses delimited text whose first row is a header. Rejects a missing id
/// column, duplicate or empty ids, and rows whose width differs from the header.
inline std::vector<StructuredRecord> parse_structured(std::string_view text, char delimiter,
                                                      std::string_view id_column) {
  auto rows = detail::split_delimited(text, delimiter);
  if (rows.empty()) throw ValidationError("missing header row");
  const auto& header = rows.front().cells;
  {
    std::unordered_set<std::string> names;
    for (const auto& h : header) {
      if (!names.insert(h).second) throw ValidationError("duplicate header column '" + h + "'");
    }
  }
  const auto id_it = std::find(header.begin(), header.end(), id_column);
  if (id_it == header.end()) throw ValidationError("id column '" + std::string(id_column) + "' not in header");
  const auto id_pos = static_cast<std::size_t>(id_it - header.begin());

  std::vector<StructuredRecord> records;
  std::unordered_set<std::string> seen;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    auto& row = rows[r];
    if (row.cells.size() != header.size()) {
      throw ValidationError("row at line " + std::to_string(row.line) + " has " + std::to_string(row.cells.size()) +
                            " fields, header has " + std::to_string(header.size()));
    }
    StructuredRecord rec;
    rec.id = row.cells[id_pos];
    if (rec.id.empty()) throw ValidationError("row at line " + std::to_string(row.line) + " has an empty id");
    if (!seen.insert(rec.id).second) {
      throw ValidationError("duplicate id '" + rec.id + "' at line " + std::to_string(row.line));
    }
    rec.fields.reserve(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) rec.fields.emplace_back(header[c], std::move(row.cells[c]));
    records.push_back(std::move(rec));
  }
  return records;
}

inline std::vector<StructuredRecord> load_structured(const std::filesystem::path& path, char delimiter = ',',
                                                     std::string_view id_column = "id") {
  try {
    return parse_structured(detail::read_file(path), delimiter, id_column);
  } catch (const ValidationError& err) {
    throw ValidationError(path.string() + ": " + err.what());
  }
}

inline Document load_document(const std::filesystem::path& path, std::string id) {
  return {std::move(id), normalize_text(detail::read_file(path))};
}

/// Every regular file under `root`, id = path relative to root with '/'
/// separators, sorted by id.
inline std::vector<Document> load_documents(const std::filesystem::path& root) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(root)) throw ValidationError("'" + root.string() + "' is not a directory");
  std::vector<std::pair<std::string, fs::path>> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file()) files.emplace_back(fs::relative(entry.path(), root).generic_string(), entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Document> docs;
  docs.reserve(files.size());
  for (auto& [id, path] : files) docs.push_back(load_document(path, std::move(id)));
  return docs;
}

}  // namespace golayfuzz
