#pragma once

// Digit streams <-> group-ring message blocks. A block of length t puts
// digits d_0..d_{t-1} on the first t basis elements (identity first); the
// last block is zero-padded and the digit count travels with the blocks so
// padding is removed unambiguously.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "grpkc/error.hpp"
#include "grpkc/group.hpp"
#include "grpkc/group_ring.hpp"
#include "grpkc/ring.hpp"

namespace grpkc {

struct MessageBlocks {
  std::vector<GroupRingElement> blocks;
  std::size_t digit_count = 0;
  std::size_t block_length = 1;
};

inline MessageBlocks encode_digits(const std::vector<Coefficient>& digits, std::size_t t, const Group& group,
                                   const RingSpec& ring) {
  if (t == 0) throw BlockTooLong("block length must be >= 1");
  if (t > group.order())
    throw BlockTooLong("block length " + std::to_string(t) + " exceeds |G| = " + std::to_string(group.order()));
  for (const auto& d : digits)
    if (!ring.contains(d)) throw DigitOutOfRange("digit " + d.get_str() + " is not in " + ring.to_string());

  MessageBlocks out;
  out.digit_count = digits.size();
  out.block_length = t;
  const std::size_t nblocks = digits.empty() ? 1 : (digits.size() + t - 1) / t;
  out.blocks.reserve(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    std::vector<Coefficient> coeffs(group.order());
    for (std::size_t k = 0; k < t && b * t + k < digits.size(); ++k) coeffs[k] = digits[b * t + k];
    out.blocks.emplace_back(group, ring, std::move(coeffs));
  }
  return out;
}

inline std::vector<Coefficient> decode_digits(const MessageBlocks& m) {
  const std::size_t t = m.block_length;
  if (t == 0) throw FormatError("block length must be >= 1");
  if (m.blocks.empty()) throw FormatError("message has no blocks");
  const std::size_t expected = m.digit_count == 0 ? 1 : (m.digit_count + t - 1) / t;
  if (m.blocks.size() != expected)
    throw FormatError("digit count " + std::to_string(m.digit_count) + " does not match " +
                      std::to_string(m.blocks.size()) + " blocks of length " + std::to_string(t));
  std::vector<Coefficient> out;
  out.reserve(m.digit_count);
  for (const auto& block : m.blocks) {
    if (t > block.size()) throw FormatError("block shorter than block length");
    for (std::size_t k = t; k < block.size(); ++k)
      if (block[k] != 0) throw FormatError("nonzero coefficient beyond block length");
    for (std::size_t k = 0; k < t && out.size() < m.digit_count; ++k) out.push_back(block[k]);
  }
  for (std::size_t k = out.size() % t; k != 0 && k < t; ++k)
    if (m.blocks.back()[k] != 0) throw FormatError("nonzero padding in final block");
  return out;
}

/// A -> 0, B -> 1, ..., Z -> 25.
inline std::vector<Coefficient> alphabet_encode(std::string_view text) {
  std::vector<Coefficient> out;
  out.reserve(text.size());
  for (char c : text) {
    if (c < 'A' || c > 'Z') throw UnsupportedCharacter(std::string("'") + c + "' is not in A-Z");
    out.emplace_back(c - 'A');
  }
  return out;
}

inline std::string alphabet_decode(const std::vector<Coefficient>& digits) {
  std::string out;
  out.reserve(digits.size());
  for (const auto& d : digits) {
    if (d < 0 || d > 25) throw DigitOutOfRange("digit " + d.get_str() + " has no letter");
    out.push_back(static_cast<char>('A' + d.get_si()));
  }
  return out;
}

}  // namespace grpkc
