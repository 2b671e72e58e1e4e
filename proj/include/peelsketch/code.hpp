#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace psk {

// Packed bit string, little-endian bit order within 64-bit words.
struct BitVec {
  std::vector<std::uint64_t> words;
  std::uint64_t size_bits = 0;

  BitVec() = default;
  explicit BitVec(std::uint64_t bits)
      : words((bits + 63) / 64, 0), size_bits(bits) {}

  bool get(std::uint64_t j) const {
    return (words[j >> 6] >> (j & 63)) & 1u;
  }
  void set(std::uint64_t j, bool v) {
    if (v)
      words[j >> 6] |= (std::uint64_t{1} << (j & 63));
    else
      words[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
  }
  std::uint64_t popcount() const;
};

// Balanced code over index identities: write i in b = ceil(log2 n) bits,
// repeat each bit over a contiguous group of ~L/b positions, XOR with a fixed
// seeded mask. The mask carries an exactly half-and-half bit split inside
// every group, so every codeword is balanced by construction. Decoding
// unmasks and takes a per-group majority; exact ties fail rather than guess,
// since callers validate candidates against the point estimator anyway.
class BalancedCode {
 public:
  BalancedCode(std::uint64_t n, std::uint64_t length_bits, std::uint64_t seed);

  std::uint64_t length() const { return length_; }
  std::uint64_t message_bits() const { return bits_; }
  std::uint64_t message_space() const { return n_; }
  std::uint64_t min_group() const { return min_group_; }

  BitVec encode(std::uint64_t i) const;
  void encode_into(std::uint64_t i, BitVec& out) const;

  // failure (nullopt) on group ties or out-of-range decoded index;
  // wrong input length throws
  std::optional<std::uint64_t> decode(const BitVec& bits) const;

  double ones_fraction(std::uint64_t i) const;

 private:
  std::uint64_t n_;
  std::uint64_t length_;
  std::uint64_t bits_;       // b
  std::uint64_t min_group_;
  std::vector<std::uint64_t> group_start_;  // bits_ + 1 entries
  BitVec mask_;
};

}  // namespace psk
