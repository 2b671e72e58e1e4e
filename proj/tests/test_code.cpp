#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <cmath>

#include "peelsketch/code.hpp"
#include "peelsketch/rng.hpp"

using namespace psk;

namespace {

std::uint64_t hamming(const BitVec& a, const BitVec& b) {
  std::uint64_t d = 0;
  for (std::size_t w = 0; w < a.words.size(); ++w)
    d += static_cast<std::uint64_t>(std::popcount(a.words[w] ^ b.words[w]));
  return d;
}

void flip_random(BitVec& cw, std::uint64_t count, Rng& rng) {
  std::vector<std::uint8_t> flipped(cw.size_bits, 0);
  std::uint64_t done = 0;
  while (done < count) {
    const std::uint64_t j = rng.next_below(cw.size_bits);
    if (flipped[j]) continue;
    flipped[j] = 1;
    cw.set(j, !cw.get(j));
    ++done;
  }
}

}  // namespace

TEST_CASE("encode is deterministic and rejects out-of-range messages") {
  const BalancedCode code(1000, 384, 11);
  const BitVec a = code.encode(123), b = code.encode(123);
  CHECK(a.words == b.words);
  CHECK_THROWS_AS(code.encode(1000), std::invalid_argument);
}

TEST_CASE("round trip identity over the whole message space") {
  const std::uint64_t n = 1 << 12;
  const BalancedCode code(n, 32 * 12, 3);
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto back = code.decode(code.encode(i));
    REQUIRE(back.has_value());
    CHECK(*back == i);
  }
}

TEST_CASE("every codeword is balanced") {
  const BalancedCode code(1 << 12, 32 * 12, 5);
  for (std::uint64_t i = 0; i < (1 << 12); ++i) {
    const double f = code.ones_fraction(i);
    CHECK(f >= 7.0 / 16.0);
    CHECK(f <= 9.0 / 16.0);
  }
}

TEST_CASE("distinct messages differ in at least one full group") {
  const BalancedCode code(1 << 12, 32 * 12, 7);
  Rng rng(8);
  for (int t = 0; t < 300; ++t) {
    const std::uint64_t i = rng.next_below(1 << 12);
    std::uint64_t j = rng.next_below(1 << 12);
    if (i == j) j = (j + 1) & ((1 << 12) - 1);
    CHECK(hamming(code.encode(i), code.encode(j)) >= code.min_group());
  }
}

TEST_CASE("decode succeeds on 1/32 random corruption") {
  const std::uint64_t n = 1 << 12, L = 32 * 12;
  const BalancedCode code(n, L, 13);
  std::uint64_t good = 0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    Rng rng(t, 55);
    const std::uint64_t i = rng.next_below(n);
    BitVec cw = code.encode(i);
    flip_random(cw, L / 32, rng);
    const auto back = code.decode(cw);
    good += back && *back == i ? 1 : 0;
  }
  CHECK(static_cast<double>(good) / trials >= 0.99);
}

TEST_CASE("corruption tolerance curve is non-increasing") {
  const std::uint64_t n = 1 << 10, L = 512;
  const BalancedCode code(n, L, 17);
  const std::uint64_t flip_counts[] = {L / 64, L / 32, L / 16, L / 8,
                                       L / 4,  L / 2};
  double prev = 1.1;
  for (const std::uint64_t flips : flip_counts) {
    std::uint64_t good = 0;
    const int trials = 1500;
    for (int t = 0; t < trials; ++t) {
      Rng rng(t, 1000 + flips);
      const std::uint64_t i = rng.next_below(n);
      BitVec cw = code.encode(i);
      flip_random(cw, flips, rng);
      const auto back = code.decode(cw);
      good += back && *back == i ? 1 : 0;
    }
    const double rate = static_cast<double>(good) / trials;
    CHECK(rate <= prev + 0.02);  // sampling slack
    prev = rate;
  }
}

TEST_CASE("all-zeros input never crashes") {
  const BalancedCode code(1000, 384, 19);
  const BitVec zeros(384);
  const auto out = code.decode(zeros);
  if (out) CHECK(*out < 1000);
}

TEST_CASE("decode rejects wrong lengths and fails on exact group ties") {
  const BalancedCode code(1 << 10, 320, 23);  // groups of 32, even
  CHECK_THROWS_AS(code.decode(BitVec(321)), std::invalid_argument);
  CHECK_THROWS_AS(code.decode(BitVec(64)), std::invalid_argument);

  // force an exact tie in the first group: half its positions agree with the
  // valid codeword, half are flipped
  BitVec cw = code.encode(5);
  for (std::uint64_t j = 0; j < 16; ++j) cw.set(j, !cw.get(j));
  CHECK_FALSE(code.decode(cw).has_value());
}

TEST_CASE("decoded index beyond the message space is a failure") {
  // n = 1000 < 2^10: bit patterns above 999 must not decode
  const BalancedCode code(1000, 320, 29);
  const BitVec forged = BalancedCode(1024, 320, 29).encode(1023);
  const auto out = code.decode(forged);
  if (out) CHECK(*out < 1000);
}

TEST_CASE("construction rejects lengths shorter than the message") {
  CHECK_THROWS_AS(BalancedCode(1 << 20, 10, 1), std::invalid_argument);
  CHECK_THROWS_AS(BalancedCode(16, 33, 1), std::invalid_argument);  // odd
}
