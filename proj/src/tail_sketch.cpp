#include "peelsketch/tail_sketch.hpp"

#include <algorithm>
#include <stdexcept>

namespace psk {

TailPlan::TailPlan(std::uint64_t n_, std::uint64_t k_, std::uint64_t reps_,
                   std::uint64_t seed_)
    : n(n_), k(k_), reps(reps_), seed(seed_) {
  if (k == 0) throw std::invalid_argument("tail sketch: k must be positive");
  if (reps == 0)
    throw std::invalid_argument("tail sketch: need at least one repetition");
  // sampling rate 1/(4k)
  sample_threshold = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(1) << 64) / (4 * k));
}

TailSketch::TailSketch(std::uint64_t n, std::uint64_t k, std::uint64_t reps,
                       std::uint64_t seed, double scale)
    : plan_(n, k, reps, seed), scale_(scale), acc_(reps, 0.0) {
  if (scale <= 0.0)
    throw std::invalid_argument("tail sketch: scale must be positive");
}

void TailSketch::measure(const DenseVector& x) {
  if (x.size() != plan_.n)
    throw std::invalid_argument("tail sketch: dimension mismatch");
  for (std::uint64_t rep = 0; rep < plan_.reps; ++rep) {
    double y = acc_[rep];
    for (std::uint64_t i = 0; i < plan_.n; ++i) {
      if (x[i] == 0.0) continue;
      if (plan_.sampled(rep, i)) y += plan_.sign_of(rep, i) * x[i];
    }
    acc_[rep] = y;
  }
}

void TailSketch::update(std::uint64_t i, double delta) {
  if (i >= plan_.n)
    throw std::invalid_argument("tail sketch: index out of range");
  for (std::uint64_t rep = 0; rep < plan_.reps; ++rep)
    if (plan_.sampled(rep, i)) acc_[rep] += plan_.sign_of(rep, i) * delta;
}

double TailSketch::query() const {
  std::vector<double> sq(plan_.reps);
  for (std::uint64_t rep = 0; rep < plan_.reps; ++rep)
    sq[rep] = acc_[rep] * acc_[rep];
  const std::uint64_t mid = (plan_.reps - 1) / 2;
  std::nth_element(sq.begin(), sq.begin() + mid, sq.end());
  return scale_ * sq[mid];
}

}  // namespace psk
