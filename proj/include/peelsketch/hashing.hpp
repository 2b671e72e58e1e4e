#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "peelsketch/rng.hpp"

namespace psk {

// Seeded hash plan behind the bucket sketch: edge(i) gives the size-h bucket
// set of coordinate i, sign(j, i) the j-th sign function. Both are pure
// functions of the seed, so two plans built from equal parameters agree.
struct HashPlan {
  std::uint64_t seed = 0;
  std::uint64_t buckets = 0;        // B
  unsigned arity = 3;               // h
  std::uint64_t sign_functions = 0; // number of sign streams (code length)

  HashPlan() = default;
  HashPlan(std::uint64_t seed_, std::uint64_t buckets_, unsigned arity_,
           std::uint64_t sign_functions_)
      : seed(seed_), buckets(buckets_), arity(arity_),
        sign_functions(sign_functions_) {
    if (arity < 2) throw std::invalid_argument("hash plan: arity must be >= 2");
    if (buckets < arity)
      throw std::invalid_argument("hash plan: need at least h buckets");
  }

  // h distinct buckets; duplicates are resampled with the draw counter, so
  // the result is a uniform size-h subset and depends only on (seed, i)
  void edge_into(std::uint64_t i, std::vector<std::uint32_t>& out) const {
    out.clear();
    std::uint64_t draw = 0;
    while (out.size() < arity) {
      const std::uint64_t v =
          reduce(hash_words(seed, tag_of(StreamTag::edge), i, draw++), buckets);
      bool fresh = true;
      for (std::uint32_t u : out) {
        if (u == v) {
          fresh = false;
          break;
        }
      }
      if (fresh) out.push_back(static_cast<std::uint32_t>(v));
    }
  }

  std::vector<std::uint32_t> edge(std::uint64_t i) const {
    std::vector<std::uint32_t> out;
    out.reserve(arity);
    edge_into(i, out);
    return out;
  }

  bool edge_contains(std::uint64_t i, std::uint32_t v,
                     std::vector<std::uint32_t>& scratch) const {
    edge_into(i, scratch);
    for (std::uint32_t u : scratch)
      if (u == v) return true;
    return false;
  }

  // 64 consecutive sign bits for coordinate i: bit b of sign_word(i, w)
  // carries sigma_{64w+b}(i)
  std::uint64_t sign_word(std::uint64_t i, std::uint64_t w) const {
    return hash_words(seed, tag_of(StreamTag::bucket_sign), i, w);
  }

  // sigma_j(i) in {-1, +1}
  int sign(std::uint64_t j, std::uint64_t i) const {
    if (j >= sign_functions)
      throw std::out_of_range("hash plan: sign function index out of range");
    return ((sign_word(i, j >> 6) >> (j & 63)) & 1u) ? 1 : -1;
  }
};

}  // namespace psk
