#pragma once

#include <cstdint>
#include <vector>

#include "peelsketch/dense_vector.hpp"
#include "peelsketch/rng.hpp"

namespace psk {

// Hash/sign plan of the point estimator; stateless given the seed.
struct CsPlan {
  std::uint64_t n = 0;
  std::uint64_t rows = 0;     // r
  std::uint64_t buckets = 0;  // s per row
  std::uint64_t seed = 0;

  std::uint64_t bucket_of(std::uint64_t row, std::uint64_t i) const {
    return reduce(hash_words(seed, tag_of(StreamTag::cs_bucket), row, i),
                  buckets);
  }
  int sign_of(std::uint64_t row, std::uint64_t i) const {
    return (hash_words(seed, tag_of(StreamTag::cs_sign), row, i) >> 63) ? 1
                                                                        : -1;
  }
};

// Signed-hash linear sketch; query returns the lower median over rows of the
// sign-corrected cell values.
class CountSketch {
 public:
  CountSketch(std::uint64_t n, std::uint64_t rows, std::uint64_t buckets,
              std::uint64_t seed);

  void measure(const DenseVector& x);
  void update(std::uint64_t i, double delta);
  double query(std::uint64_t i) const;

  const CsPlan& plan() const { return plan_; }
  std::uint64_t rows() const { return plan_.rows; }
  std::uint64_t buckets() const { return plan_.buckets; }
  const std::vector<double>& cells() const { return cells_; }
  std::vector<double>& cells_mut() { return cells_; }

 private:
  CsPlan plan_;
  std::vector<double> cells_;  // rows * buckets, row-major
};

}  // namespace psk
