#pragma once

#include <cstdint>
#include <vector>

#include "peelsketch/dense_vector.hpp"
#include "peelsketch/rng.hpp"

namespace psk {

// Subsample-and-sign plan of the tail estimator: each repetition keeps one
// signed linear accumulator over a rate-1/(4k) subsample of the coordinates.
struct TailPlan {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  std::uint64_t sample_threshold = 0;  // hash < threshold <=> sampled

  TailPlan() = default;
  TailPlan(std::uint64_t n_, std::uint64_t k_, std::uint64_t reps_,
           std::uint64_t seed_);

  bool sampled(std::uint64_t rep, std::uint64_t i) const {
    return hash_words(seed, tag_of(StreamTag::tail_sample), rep, i) <
           sample_threshold;
  }
  int sign_of(std::uint64_t rep, std::uint64_t i) const {
    return (hash_words(seed, tag_of(StreamTag::tail_sign), rep, i) >> 63) ? 1
                                                                          : -1;
  }
};

// Estimates ||x_{-k}||^2 / k from O(log n) linear measurements:
// t_hat = scale * lower-median over repetitions of y^2.
class TailSketch {
 public:
  TailSketch(std::uint64_t n, std::uint64_t k, std::uint64_t reps,
             std::uint64_t seed, double scale);

  void measure(const DenseVector& x);
  void update(std::uint64_t i, double delta);
  double query() const;

  const TailPlan& plan() const { return plan_; }
  const std::vector<double>& accumulators() const { return acc_; }
  std::vector<double>& accumulators_mut() { return acc_; }

 private:
  TailPlan plan_;
  double scale_;
  std::vector<double> acc_;
};

}  // namespace psk
