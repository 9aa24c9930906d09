#pragma once

#include <algorithm>
#include <array>
#include <bitset>
#include <charconv>
#include <concepts>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "golayfuzz/error.hpp"
#include "golayfuzz/golay.hpp"
#include "golayfuzz/word.hpp"

namespace golayfuzz {

/// The FuzzyFind hash of a word: info parts of the decodings of the word and
/// its 23 single-bit perturbations. Always 1 index (word within distance 2 of
/// a codeword) or 6 (distance exactly 3). Stored sorted ascending.
class IndexSet {
 public:
  static constexpr std::size_t kMaxSize = 6;

  constexpr std::size_t size() const { return size_; }
  constexpr const InfoWord12* begin() const { return indices_.data(); }
  constexpr const InfoWord12* end() const { return indices_.data() + size_; }
  constexpr InfoWord12 operator[](std::size_t i) const { return indices_[i]; }

  constexpr bool contains(InfoWord12 idx) const { return std::find(begin(), end(), idx) != end(); }

  constexpr bool intersects(const IndexSet& other) const {
    return std::any_of(begin(), end(), [&](InfoWord12 i) { return other.contains(i); });
  }

  // Returns false if the set is full and `idx` is new; a correct decoder never
  // produces more than six distinct indices.
  constexpr bool add(InfoWord12 idx) {
    auto pos = std::lower_bound(indices_.begin(), indices_.begin() + size_, idx);
    if (pos != indices_.begin() + size_ && *pos == idx) return true;
    if (size_ == kMaxSize) return false;
    std::move_backward(pos, indices_.begin() + size_, indices_.begin() + size_ + 1);
    *pos = idx;
    ++size_;
    return true;
  }

  friend constexpr bool operator==(const IndexSet& a, const IndexSet& b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::array<InfoWord12, kMaxSize> indices_{};
  std::size_t size_ = 0;
};

/// Result of fuzzy_hash that also reports whether more than six distinct
/// indices showed up (only possible with a corrupted decoder table).
struct FuzzyHashResult {
  IndexSet indices;
  bool overflow = false;
};

constexpr FuzzyHashResult fuzzy_hash_checked(Word23 w, const GolayDecoder& decoder) {
  FuzzyHashResult out;
  out.overflow = !out.indices.add(decoder.decode(w).info);
  for (int i = 0; i < Word23::kBits; ++i) {
    if (!out.indices.add(decoder.decode(w ^ Word23(1u << i)).info)) out.overflow = true;
  }
  return out;
}

constexpr IndexSet fuzzy_hash(Word23 w, const GolayDecoder& decoder = kGolayDecoder) {
  return fuzzy_hash_checked(w, decoder).indices;
}

/// Calls `fn(pattern)` for every 23-bit pattern of weight <= max_weight, in
/// order of increasing weight. `fn` returns false to stop early.
template <class Fn>
  requires std::predicate<Fn&, Word23>
void for_each_pattern_up_to(int max_weight, Fn&& fn) {
  if (!fn(Word23(0))) return;
  for (int weight = 1; weight <= std::min(max_weight, Word23::kBits); ++weight) {
    std::uint32_t v = (1u << weight) - 1;
    while (v <= Word23::kMask) {
      if (!fn(Word23(v))) return;
      // Gosper's hack: next integer with the same popcount.
      const std::uint32_t c = v & (0u - v);
      const std::uint32_t r = v + c;
      v = (((r ^ v) >> 2) / c) | r;
    }
  }
}

struct IndexStats {
  std::size_t entries = 0;
  std::size_t size1 = 0;
  std::size_t size6 = 0;
  std::size_t occupied_buckets = 0;
  std::size_t slots = 0;  // bucket entries summed over all buckets
  std::size_t min_bucket = 0;
  std::size_t max_bucket = 0;
  double mean_bucket = 0.0;

  double size6_fraction() const { return entries == 0 ? 0.0 : static_cast<double>(size6) / entries; }
};

template <class T>
concept RecordId = std::equality_comparable<T> && std::copyable<T> &&
                   (std::integral<T> || std::same_as<T, std::string>);

/// Hash table over the 4096 Golay info words. Each entry is registered in every
/// bucket of its key's fuzzy hash, so any two keys within distance 2 share a
/// bucket; wider radii are served by perturbing the query.
///
/// Build is single-writer. After freeze() the dictionary rejects inserts and
/// lookups are safe from any number of threads.
template <RecordId Payload = std::uint32_t>
class FuzzyDictionary {
 public:
  static constexpr int kMaxLookupDistance = 7;

  struct Entry {
    Word23 key;
    Payload payload;
    std::uint8_t index_count;
  };

  struct Match {
    Word23 key;
    Payload payload;
    int distance;

    friend bool operator==(const Match&, const Match&) = default;
  };

  struct Slot {
    std::uint32_t key;
    std::uint32_t entry;
  };

  FuzzyDictionary() : buckets_(InfoWord12::kCount) {}

  /// Registers (key, payload). Returns false if the pair was already present.
  bool insert(Word23 key, Payload payload) {
    if (frozen_) throw FrozenError("insert into frozen dictionary");
    if (entries_.size() >= std::numeric_limits<std::uint32_t>::max()) {
      throw ValidationError("dictionary entry limit reached");
    }
    const auto id = static_cast<std::uint32_t>(entries_.size());
    auto [it, fresh] = by_key_.try_emplace(key, id);
    if (!fresh) {
      for (std::uint32_t i = it->second; i != kNone; i = same_key_next_[i]) {
        if (entries_[i].payload == payload) return false;
      }
      same_key_next_.push_back(it->second);
      it->second = id;
    } else {
      same_key_next_.push_back(kNone);
    }
    const IndexSet indices = fuzzy_hash(key);
    entries_.push_back({key, std::move(payload), static_cast<std::uint8_t>(indices.size())});
    for (InfoWord12 b : indices) buckets_[b.value()].push_back({key.value(), id});
    return true;
  }

  /// Every entry whose key lies within Hamming distance `hd` of `query`,
  /// ordered by insertion.
  std::vector<Match> lookup(Word23 query, int hd) const {
    if (hd < 0 || hd > kMaxLookupDistance) {
      throw ValidationError("lookup distance " + std::to_string(hd) + " outside 0.." +
                            std::to_string(kMaxLookupDistance));
    }
    std::bitset<InfoWord12::kCount> seen;
    std::vector<std::uint16_t> probe;
    for_each_pattern_up_to(std::max(0, hd - 2), [&](Word23 e) {
      for (InfoWord12 b : fuzzy_hash(query ^ e)) {
        if (!seen.test(b.value())) {
          seen.set(b.value());
          probe.push_back(static_cast<std::uint16_t>(b.value()));
        }
      }
      return probe.size() < InfoWord12::kCount;
    });

    std::vector<std::uint32_t> hits;
    for (std::uint16_t b : probe) {
      for (const Slot& s : buckets_[b]) {
        if (std::popcount(s.key ^ query.value()) <= hd) hits.push_back(s.entry);
      }
    }
    std::sort(hits.begin(), hits.end());
    hits.erase(std::unique(hits.begin(), hits.end()), hits.end());

    std::vector<Match> out;
    out.reserve(hits.size());
    for (std::uint32_t i : hits) {
      const Entry& e = entries_[i];
      out.push_back({e.key, e.payload, hamming_distance(e.key, query)});
    }
    return out;
  }

  void freeze() { frozen_ = true; }
  bool frozen() const { return frozen_; }

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }
  std::span<const Slot> bucket(InfoWord12 b) const { return buckets_[b.value()]; }

  IndexStats stats() const {
    IndexStats st;
    st.entries = entries_.size();
    for (const Entry& e : entries_) (e.index_count == 1 ? st.size1 : st.size6)++;
    if (entries_.empty()) return st;
    st.min_bucket = std::numeric_limits<std::size_t>::max();
    for (const auto& b : buckets_) {
      st.min_bucket = std::min(st.min_bucket, b.size());
      st.max_bucket = std::max(st.max_bucket, b.size());
      st.occupied_buckets += b.empty() ? 0 : 1;
      st.slots += b.size();
    }
    st.mean_bucket = static_cast<double>(st.slots) / buckets_.size();
    return st;
  }

  /// One `<key-hex>,<payload-id>` line per entry, in insertion order. Buckets
  /// are not written; load() rebuilds them.
  void save(std::ostream& out) const {
    for (const Entry& e : entries_) out << to_hex(e.key) << ',' << payload_to_string(e.payload) << '\n';
  }

  static FuzzyDictionary load(std::istream& in) {
    FuzzyDictionary dict;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw ValidationError("dictionary line " + std::to_string(line_no) + ": expected <key-hex>,<payload-id>");
      }
      try {
        dict.insert(parse_word23(std::string_view(line).substr(0, comma)),
                    payload_from_string(std::string_view(line).substr(comma + 1)));
      } catch (const ValidationError& err) {
        throw ValidationError("dictionary line " + std::to_string(line_no) + ": " + err.what());
      }
    }
    return dict;
  }

 private:
  static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  static std::string payload_to_string(const Payload& p) {
    if constexpr (std::integral<Payload>) {
      return std::to_string(p);
    } else {
      if (p.find_first_of(",\r\n") != std::string::npos) {
        throw ValidationError("payload id '" + p + "' contains a delimiter");
      }
      return p;
    }
  }

  static Payload payload_from_string(std::string_view text) {
    if constexpr (std::integral<Payload>) {
      Payload value{};
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ValidationError("malformed payload id '" + std::string(text) + "'");
      }
      return value;
    } else {
      return std::string(text);
    }
  }

  std::vector<Entry> entries_;
  std::vector<std::vector<Slot>> buckets_;
  std::unordered_map<Word23, std::uint32_t> by_key_;
  std::vector<std::uint32_t> same_key_next_;
  bool frozen_ = false;
};

}  // namespace golayfuzz
