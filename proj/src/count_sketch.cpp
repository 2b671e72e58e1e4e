#include "peelsketch/count_sketch.hpp"

#include <algorithm>
#include <stdexcept>

namespace psk {

CountSketch::CountSketch(std::uint64_t n, std::uint64_t rows,
                         std::uint64_t buckets, std::uint64_t seed)
    : plan_{n, rows, buckets, seed} {
  if (rows == 0 || buckets < 2)
    throw std::invalid_argument("count sketch: need rows >= 1, buckets >= 2");
  cells_.assign(rows * buckets, 0.0);
}

void CountSketch::measure(const DenseVector& x) {
  if (x.size() != plan_.n)
    throw std::invalid_argument("count sketch: dimension mismatch");
  // row-major accumulation order: per cell, contributions arrive in
  // increasing coordinate order
  for (std::uint64_t row = 0; row < plan_.rows; ++row) {
    double* slice = cells_.data() + row * plan_.buckets;
    for (std::uint64_t i = 0; i < plan_.n; ++i) {
      if (x[i] == 0.0) continue;
      slice[plan_.bucket_of(row, i)] += plan_.sign_of(row, i) * x[i];
    }
  }
}

void CountSketch::update(std::uint64_t i, double delta) {
  if (i >= plan_.n)
    throw std::invalid_argument("count sketch: index out of range");
  for (std::uint64_t row = 0; row < plan_.rows; ++row)
    cells_[row * plan_.buckets + plan_.bucket_of(row, i)] +=
        plan_.sign_of(row, i) * delta;
}

double CountSketch::query(std::uint64_t i) const {
  if (i >= plan_.n)
    throw std::invalid_argument("count sketch: index out of range");
  std::vector<double> est(plan_.rows);
  for (std::uint64_t row = 0; row < plan_.rows; ++row)
    est[row] = plan_.sign_of(row, i) *
               cells_[row * plan_.buckets + plan_.bucket_of(row, i)];
  // lower median: element (r-1)/2 of the sorted row estimates
  const std::uint64_t mid = (plan_.rows - 1) / 2;
  std::nth_element(est.begin(), est.begin() + mid, est.end());
  return est[mid];
}

}  // namespace psk
