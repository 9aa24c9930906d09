#pragma once

// Binary [23,12,7] Golay code in systematic form.
//
// Layout: information word in bits 22..11, parity in bits 10..0, parity being
// the remainder of info(x) * x^11 divided by g(x) = x^11+x^10+x^6+x^5+x^4+x^2+1.
// The code is perfect: the radius-3 spheres around the 4096 codewords tile all
// 2^23 words, so decoding through a 2048-entry syndrome table is total.

#include <array>
#include <cstdint>
#include <vector>

#include "golayfuzz/word.hpp"

namespace golayfuzz {

inline constexpr std::uint32_t kGeneratorPolynomial = 0xC75;
inline constexpr int kParityBits = 11;
inline constexpr std::uint32_t kSyndromeCount = 1u << kParityBits;
inline constexpr int kCorrectableWeight = 3;

namespace detail {

constexpr std::uint32_t parity_of(std::uint32_t info) {
  std::uint32_t rem = info << kParityBits;
  for (int bit = Word23::kBits - 1; bit >= kParityBits; --bit) {
    if ((rem >> bit) & 1u) rem ^= kGeneratorPolynomial << (bit - kParityBits);
  }
  return rem;
}

constexpr std::array<std::uint16_t, InfoWord12::kCount> make_parity_table() {
  std::array<std::uint16_t, InfoWord12::kCount> table{};
  for (std::uint32_t m = 0; m < InfoWord12::kCount; ++m) table[m] = static_cast<std::uint16_t>(parity_of(m));
  return table;
}

inline constexpr auto kParityTable = make_parity_table();

}  // namespace detail

constexpr Word23 encode(InfoWord12 info) {
  return Word23((info.value() << kParityBits) | detail::kParityTable[info.value()]);
}

/// 11-bit syndrome; zero iff `w` is a codeword.
constexpr std::uint32_t syndrome(Word23 w) {
  return detail::kParityTable[w.value() >> kParityBits] ^ (w.value() & (kSyndromeCount - 1));
}

constexpr bool is_codeword(Word23 w) { return syndrome(w) == 0; }

constexpr InfoWord12 info_part(Word23 w) { return InfoWord12(w.value() >> kParityBits); }

struct DecodeResult {
  Word23 codeword;
  InfoWord12 info;
  Word23 error_pattern;
  int error_weight = 0;

  friend constexpr bool operator==(const DecodeResult&, const DecodeResult&) = default;
};

/// Syndrome -> coset leader. For a correctly built table every leader has
/// weight <= 3 and every pattern of weight <= 3 appears exactly once.
struct DecoderTable {
  static constexpr std::uint32_t kUnassigned = 0xFFFFFFFFu;
  std::array<std::uint32_t, kSyndromeCount> leaders{};

  constexpr Word23 leader(std::uint32_t syn) const { return Word23(leaders[syn] & Word23::kMask); }
};

constexpr DecoderTable build_decoder_table() {
  DecoderTable table;
  table.leaders.fill(DecoderTable::kUnassigned);
  auto place = [&table](std::uint32_t pattern) { table.leaders[syndrome(Word23(pattern))] = pattern; };
  place(0);
  for (int a = 0; a < Word23::kBits; ++a) {
    place(1u << a);
    for (int b = a + 1; b < Word23::kBits; ++b) {
      place((1u << a) | (1u << b));
      for (int c = b + 1; c < Word23::kBits; ++c) place((1u << a) | (1u << b) | (1u << c));
    }
  }
  return table;
}

class GolayDecoder {
 public:
  constexpr GolayDecoder() : table_(build_decoder_table()) {}
  constexpr explicit GolayDecoder(const DecoderTable& table) : table_(table) {}

  constexpr DecodeResult decode(Word23 w) const {
    const Word23 error = table_.leader(syndrome(w));
    const Word23 codeword = w ^ error;
    return {codeword, info_part(codeword), error, error.weight()};
  }

  constexpr const DecoderTable& table() const { return table_; }

 private:
  DecoderTable table_;
};

inline constexpr GolayDecoder kGolayDecoder{};

/// Nearest codeword; always within distance 3.
constexpr DecodeResult decode(Word23 w) { return kGolayDecoder.decode(w); }

/// All 4096 codewords, ordered by information word.
inline std::vector<Word23> enumerate_codewords() {
  std::vector<Word23> out;
  out.reserve(InfoWord12::kCount);
  for (std::uint32_t m = 0; m < InfoWord12::kCount; ++m) out.push_back(encode(InfoWord12(m)));
  return out;
}

}  // namespace golayfuzz
