#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "peelsketch/count_sketch.hpp"
#include "peelsketch/rng.hpp"

using namespace psk;

namespace {

// independent accumulation in the same row-major order
std::vector<double> direct_cells(const CsPlan& plan, const DenseVector& x) {
  std::vector<double> cells(plan.rows * plan.buckets, 0.0);
  for (std::uint64_t row = 0; row < plan.rows; ++row)
    for (std::uint64_t i = 0; i < plan.n; ++i) {
      if (x[i] == 0.0) continue;
      cells[row * plan.buckets + plan.bucket_of(row, i)] +=
          plan.sign_of(row, i) * x[i];
    }
  return cells;
}

DenseVector random_integer_vector(std::uint64_t n, std::uint64_t seed) {
  Rng rng(seed);
  DenseVector x(n);
  for (auto& v : x)
    v = static_cast<double>(static_cast<std::int64_t>(rng.next_below(17)) - 8);
  return x;
}

}  // namespace

TEST_CASE("zero vector leaves all cells zero") {
  CountSketch cs(64, 5, 8, 1);
  cs.measure(DenseVector(64, 0.0));
  for (const double c : cs.cells()) CHECK(c == 0.0);
  for (std::uint64_t i = 0; i < 64; ++i) CHECK(cs.query(i) == 0.0);
}

TEST_CASE("unit vector touches exactly r cells with values +-1") {
  CountSketch cs(64, 7, 16, 2);
  DenseVector x(64, 0.0);
  x[13] = 1.0;
  cs.measure(x);
  std::uint64_t nonzero = 0;
  for (const double c : cs.cells()) {
    if (c != 0.0) {
      ++nonzero;
      CHECK(std::fabs(c) == 1.0);
    }
  }
  CHECK(nonzero == 7);
}

TEST_CASE("measurement equals the direct summation oracle bit for bit") {
  const std::uint64_t n = 256;
  CountSketch cs(n, 6, 32, 3);
  Rng rng(4);
  DenseVector x(n);
  for (auto& v : x) v = rng.next_gaussian();
  cs.measure(x);
  CHECK(cs.cells() == direct_cells(cs.plan(), x));
}

TEST_CASE("update is the unit-vector measurement") {
  const std::uint64_t n = 128;
  CountSketch a(n, 5, 16, 7), b(n, 5, 16, 7);
  const DenseVector x = random_integer_vector(n, 8);
  a.measure(x);
  for (std::uint64_t i = 0; i < n; ++i) b.update(i, x[i]);
  CHECK(a.cells() == b.cells());

  // update then update(-delta) restores the integer state exactly
  const std::vector<double> before = b.cells();
  b.update(17, 5.0);
  b.update(17, -5.0);
  CHECK(b.cells() == before);
  CHECK_THROWS_AS(b.update(n, 1.0), std::invalid_argument);
}

TEST_CASE("interleaved random updates equal oracle recomputation") {
  const std::uint64_t n = 96;
  CountSketch cs(n, 4, 16, 9);
  DenseVector shadow(n, 0.0);
  Rng rng(10);
  for (int t = 0; t < 500; ++t) {
    const std::uint64_t i = rng.next_below(n);
    const double delta =
        static_cast<double>(static_cast<std::int64_t>(rng.next_below(9)) - 4);
    cs.update(i, delta);
    shadow[i] += delta;
  }
  CHECK(cs.cells() == direct_cells(cs.plan(), shadow));
}

TEST_CASE("linearity is exact on integer vectors") {
  const std::uint64_t n = 200;
  CountSketch sum(n, 5, 32, 11), joint(n, 5, 32, 11);
  const DenseVector x = random_integer_vector(n, 12);
  const DenseVector y = random_integer_vector(n, 13);
  DenseVector xy(n);
  for (std::uint64_t i = 0; i < n; ++i) xy[i] = x[i] + y[i];
  sum.measure(x);
  sum.measure(y);
  joint.measure(xy);
  CHECK(sum.cells() == joint.cells());
}

TEST_CASE("query of an isolated spike is exact") {
  CountSketch cs(64, 9, 16, 14);
  DenseVector x(64, 0.0);
  x[5] = 7.0;
  cs.measure(x);
  CHECK(cs.query(5) == 7.0);
  CHECK(cs.query(6) == 0.0);
}

TEST_CASE("exact recovery of sparse input verified collision-free") {
  const std::uint64_t n = 1024, rows = 6, buckets = 256;
  // pick a support whose per-row buckets are collision-free by inspection
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> support = {3, 100, 477, 801};
  for (;; ++seed) {
    const CsPlan plan{n, rows, buckets, seed};
    bool clean = true;
    for (std::uint64_t row = 0; row < rows && clean; ++row) {
      std::set<std::uint64_t> seen;
      for (const auto i : support)
        if (!seen.insert(plan.bucket_of(row, i)).second) clean = false;
    }
    if (clean) break;
  }
  CountSketch cs(n, rows, buckets, seed);
  DenseVector x(n, 0.0);
  x[3] = 1.5;
  x[100] = -2.25;
  x[477] = 4.0;
  x[801] = -0.5;
  cs.measure(x);
  for (const auto i : support) CHECK(cs.query(i) == x[i]);
}

TEST_CASE("query takes the lower median over rows") {
  // plant controlled row estimates by writing the cells directly
  const std::uint64_t n = 4, rows = 4, buckets = 8;
  CountSketch cs(n, rows, buckets, 21);
  const std::uint64_t i = 2;
  const double planted[] = {1.0, 5.0, 9.0, 13.0};
  for (std::uint64_t row = 0; row < rows; ++row) {
    const std::uint64_t cell = row * buckets + cs.plan().bucket_of(row, i);
    cs.cells_mut()[cell] = cs.plan().sign_of(row, i) * planted[row];
  }
  // sorted estimates are {1, 5, 9, 13}; the lower median is 5
  CHECK(cs.query(i) == 5.0);
}

TEST_CASE("misestimation tail decays with lambda (smoke)") {
  const std::uint64_t n = 1024, r = 20, s = 128;
  DenseVector x(n);
  Rng xr(31);
  for (auto& v : x) v = xr.next_gaussian();
  std::vector<double> sorted_sq;
  for (const double v : x) sorted_sq.push_back(v * v);
  std::sort(sorted_sq.rbegin(), sorted_sq.rend());
  double tail = 0.0;
  for (std::uint64_t t = s; t < n; ++t) tail += sorted_sq[t];

  const int trials = 400;
  std::uint64_t hits1 = 0, hits4 = 0;
  for (int t = 0; t < trials; ++t) {
    CountSketch cs(n, 2 * r, 4 * s, 900 + t);
    cs.measure(x);
    Rng qr(t, 77);
    const std::uint64_t i = qr.next_below(n);
    const double err = cs.query(i) - x[i];
    if (err * err > (1.0 / r) * tail / s) ++hits1;
    if (err * err > (4.0 / r) * tail / s) ++hits4;
  }
  CHECK(hits4 <= hits1);
  CHECK(static_cast<double>(hits1) / trials <= 2.0 * std::exp(-1.0) + 0.1);
  CHECK(static_cast<double>(hits4) / trials <= 2.0 * std::exp(-4.0) + 0.05);
}
