#pragma once

#include <array>
#include <cstdint>

#include "golayfuzz/fuzzy_dictionary.hpp"
#include "golayfuzz/golay.hpp"

namespace golayfuzz {

/// Sphere sizes of the perfect code: patterns of weight 0..3.
inline constexpr std::array<std::uint64_t, 4> kSphereShell = {1, 23, 253, 1771};

struct CodeVerification {
  std::uint64_t words = 0;
  std::uint64_t perfect = 0;  // decoded to a codeword at distance <= 3
  std::array<std::uint64_t, 4> by_error_weight{};
  std::uint64_t size1 = 0;
  std::uint64_t size6 = 0;
  std::uint64_t bad_hash = 0;  // index set of any other size

  bool perfectness_ok() const {
    if (words != Word23::kCount || perfect != words) return false;
    for (std::size_t t = 0; t < kSphereShell.size(); ++t) {
      if (by_error_weight[t] != InfoWord12::kCount * kSphereShell[t]) return false;
    }
    return true;
  }

  bool hash_ok() const {
    return bad_hash == 0 && size1 + size6 == words && size6 * kSyndromeCount == kSphereShell[3] * Word23::kCount;
  }

  bool passed() const { return perfectness_ok() && hash_ok(); }
};

/// Decodes every one of the 2^23 words and hashes each; checks the decoder
/// lands on a codeword within distance 3 and counts index-set sizes.
inline CodeVerification verify_code(const GolayDecoder& decoder = kGolayDecoder) {
  CodeVerification v;
  for (std::uint32_t raw = 0; raw < Word23::kCount; ++raw) {
    const Word23 w(raw);
    const DecodeResult d = decoder.decode(w);
    ++v.words;
    if (d.error_weight <= kCorrectableWeight && is_codeword(d.codeword) && (d.codeword ^ d.error_pattern) == w) {
      ++v.perfect;
      ++v.by_error_weight[d.error_weight];
    }
    const FuzzyHashResult h = fuzzy_hash_checked(w, decoder);
    if (h.overflow) {
      ++v.bad_hash;
    } else if (h.indices.size() == 1) {
      ++v.size1;
    } else if (h.indices.size() == 6) {
      ++v.size6;
    } else {
      ++v.bad_hash;
    }
  }
  return v;
}

struct WeightDistribution {
  std::array<std::uint32_t, Word23::kBits + 1> count{};
  int min_nonzero_weight = 0;
};

inline WeightDistribution weight_distribution() {
  WeightDistribution wd;
  wd.min_nonzero_weight = Word23::kBits + 1;
  for (Word23 c : enumerate_codewords()) {
    ++wd.count[c.weight()];
    if (c.weight() > 0) wd.min_nonzero_weight = std::min(wd.min_nonzero_weight, c.weight());
  }
  return wd;
}

}  // namespace golayfuzz
