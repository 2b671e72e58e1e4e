#include "peelsketch/code.hpp"

#include <bit>
#include <numeric>
#include <stdexcept>

#include "peelsketch/params.hpp"
#include "peelsketch/rng.hpp"

namespace psk {

std::uint64_t BitVec::popcount() const {
  std::uint64_t c = 0;
  for (std::uint64_t w : words) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

BalancedCode::BalancedCode(std::uint64_t n, std::uint64_t length_bits,
                           std::uint64_t seed)
    : n_(n), length_(length_bits), bits_(ceil_log2(n)), mask_(length_bits) {
  if (n == 0) throw std::invalid_argument("code: empty message space");
  if (length_ < bits_)
    throw std::invalid_argument("code: length shorter than message bits");
  if (length_ % 2 != 0)
    throw std::invalid_argument("code: length must be even");

  // groups of size floor(L/b) or floor(L/b)+1
  const std::uint64_t base = length_ / bits_;
  const std::uint64_t rem = length_ % bits_;
  min_group_ = base;
  group_start_.resize(bits_ + 1);
  group_start_[0] = 0;
  for (std::uint64_t g = 0; g < bits_; ++g)
    group_start_[g + 1] = group_start_[g] + base + (g < rem ? 1 : 0);

  // per-group mask with exactly floor(len/2) or ceil(len/2) ones, alternating
  // the rounding for odd groups: codeword imbalance stays below b bits
  Rng rng(seed, tag_of(StreamTag::code_mask));
  std::uint64_t odd_flip = 0;
  for (std::uint64_t g = 0; g < bits_; ++g) {
    const std::uint64_t lo = group_start_[g], hi = group_start_[g + 1];
    const std::uint64_t len = hi - lo;
    std::uint64_t ones = len / 2;
    if (len % 2 != 0) ones += (odd_flip++ & 1);
    std::vector<std::uint64_t> pos(len);
    std::iota(pos.begin(), pos.end(), lo);
    rng.shuffle(pos);
    for (std::uint64_t t = 0; t < ones; ++t) mask_.set(pos[t], true);
  }

  // sampled balancedness check
  const std::uint64_t samples = n_ < 64 ? n_ : 64;
  for (std::uint64_t t = 0; t < samples; ++t) {
    const double f = ones_fraction(n_ * t / samples);
    if (f < 7.0 / 16.0 || f > 9.0 / 16.0)
      throw std::invalid_argument("code: unbalanced codeword (length too short)");
  }
}

void BalancedCode::encode_into(std::uint64_t i, BitVec& out) const {
  if (i >= n_) throw std::invalid_argument("code: message out of range");
  if (out.size_bits != length_) out = BitVec(length_);
  for (std::uint64_t g = 0; g < bits_; ++g) {
    const std::uint64_t bit = (i >> g) & 1u;
    std::uint64_t lo = group_start_[g];
    const std::uint64_t hi = group_start_[g + 1];
    // fill [lo, hi) with the message bit, word-at-a-time
    while (lo < hi) {
      const std::uint64_t w = lo >> 6;
      const std::uint64_t first = lo & 63;
      const std::uint64_t count = std::min<std::uint64_t>(64 - first, hi - lo);
      const std::uint64_t span =
          count == 64 ? ~std::uint64_t{0}
                      : (((std::uint64_t{1} << count) - 1) << first);
      if (bit)
        out.words[w] |= span;
      else
        out.words[w] &= ~span;
      lo += count;
    }
  }
  for (std::size_t w = 0; w < out.words.size(); ++w) out.words[w] ^= mask_.words[w];
}

BitVec BalancedCode::encode(std::uint64_t i) const {
  BitVec out(length_);
  encode_into(i, out);
  return out;
}

namespace {

// popcount of (a ^ b) restricted to bit range [lo, hi)
std::uint64_t range_mismatch(const std::vector<std::uint64_t>& a,
                             const std::vector<std::uint64_t>& b,
                             std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t count = 0;
  std::uint64_t w = lo >> 6;
  const std::uint64_t wend = (hi + 63) >> 6;
  for (; w < wend; ++w) {
    std::uint64_t diff = a[w] ^ b[w];
    const std::uint64_t bit0 = w << 6;
    if (lo > bit0) diff &= ~std::uint64_t{0} << (lo - bit0);
    if (hi < bit0 + 64) diff &= (std::uint64_t{1} << (hi - bit0)) - 1;
    count += static_cast<std::uint64_t>(std::popcount(diff));
  }
  return count;
}

}  // namespace

std::optional<std::uint64_t> BalancedCode::decode(const BitVec& bits) const {
  if (bits.size_bits != length_)
    throw std::invalid_argument("code: wrong codeword length");
  std::uint64_t msg = 0;
  for (std::uint64_t g = 0; g < bits_; ++g) {
    const std::uint64_t lo = group_start_[g], hi = group_start_[g + 1];
    const std::uint64_t ones = range_mismatch(bits.words, mask_.words, lo, hi);
    const std::uint64_t len = hi - lo;
    if (2 * ones == len) return std::nullopt;  // exact tie
    if (2 * ones > len) msg |= (std::uint64_t{1} << g);
  }
  if (msg >= n_) return std::nullopt;
  return msg;
}

double BalancedCode::ones_fraction(std::uint64_t i) const {
  const BitVec cw = encode(i);
  return static_cast<double>(cw.popcount()) / static_cast<double>(length_);
}

}  // namespace psk
