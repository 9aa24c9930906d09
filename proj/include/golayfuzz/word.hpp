#pragma once

#include <bit>
#include <cassert>
#include <charconv>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>

#include "golayfuzz/error.hpp"

namespace golayfuzz {

/// A 23-bit binary attribute vector. Bit 0 is the least-significant bit.
class Word23 {
 public:
  static constexpr int kBits = 23;
  static constexpr std::uint32_t kMask = (1u << kBits) - 1;
  static constexpr std::uint32_t kCount = 1u << kBits;

  constexpr Word23() = default;
  constexpr explicit Word23(std::uint32_t value) : value_(value) {
    assert(value <= kMask);
  }

  constexpr std::uint32_t value() const { return value_; }
  constexpr int weight() const { return std::popcount(value_); }
  constexpr bool bit(int i) const { return (value_ >> i) & 1u; }

  friend constexpr Word23 operator^(Word23 a, Word23 b) {
    return Word23(a.value_ ^ b.value_);
  }
  friend constexpr auto operator<=>(Word23, Word23) = default;

 private:
  std::uint32_t value_ = 0;
};

/// A 12-bit information word; the index half of a Golay codeword.
class InfoWord12 {
 public:
  static constexpr int kBits = 12;
  static constexpr std::uint32_t kMask = (1u << kBits) - 1;
  static constexpr std::uint32_t kCount = 1u << kBits;

  constexpr InfoWord12() = default;
  constexpr explicit InfoWord12(std::uint32_t value) : value_(static_cast<std::uint16_t>(value)) {
    assert(value <= kMask);
  }

  constexpr std::uint32_t value() const { return value_; }
  friend constexpr auto operator<=>(InfoWord12, InfoWord12) = default;

 private:
  std::uint16_t value_ = 0;
};

constexpr int hamming_distance(Word23 a, Word23 b) { return (a ^ b).weight(); }

namespace detail {

inline std::string hex_string(std::uint32_t value, int digits) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%0*x", digits, value);
  return buf;
}

inline std::uint32_t parse_hex(std::string_view text, int max_digits, std::uint32_t max_value,
                               std::string_view what) {
  std::string_view digits = text;
  if (digits.starts_with("0x") || digits.starts_with("0X")) digits.remove_prefix(2);
  std::uint32_t value = 0;
  if (digits.empty() || static_cast<int>(digits.size()) > max_digits) {
    throw ValidationError("malformed " + std::string(what) + " hex '" + std::string(text) + "'");
  }
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value, 16);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) {
    throw ValidationError("malformed " + std::string(what) + " hex '" + std::string(text) + "'");
  }
  if (value > max_value) {
    throw ValidationError(std::string(what) + " '" + std::string(text) + "' out of range");
  }
  return value;
}

}  // namespace detail

// Serialization: 0x-prefixed lowercase hex, zero-padded to the word width.
inline std::string to_hex(Word23 w) { return detail::hex_string(w.value(), 6); }
inline std::string to_hex(InfoWord12 i) { return detail::hex_string(i.value(), 3); }

inline Word23 parse_word23(std::string_view text) {
  return Word23(detail::parse_hex(text, 6, Word23::kMask, "23-bit word"));
}

inline InfoWord12 parse_info12(std::string_view text) {
  return InfoWord12(detail::parse_hex(text, 3, InfoWord12::kMask, "12-bit info word"));
}

}  // namespace golayfuzz

template <>
struct std::hash<golayfuzz::Word23> {
  std::size_t operator()(golayfuzz::Word23 w) const noexcept { return std::hash<std::uint32_t>{}(w.value()); }
};
