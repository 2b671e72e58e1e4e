#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "peelsketch/dense_vector.hpp"
#include "peelsketch/rng.hpp"
#include "peelsketch/signal.hpp"
#include "peelsketch/tail_sketch.hpp"

using namespace psk;

namespace {

std::vector<double> direct_accumulators(const TailPlan& plan,
                                        const DenseVector& x) {
  std::vector<double> acc(plan.reps, 0.0);
  for (std::uint64_t rep = 0; rep < plan.reps; ++rep)
    for (std::uint64_t i = 0; i < plan.n; ++i)
      if (x[i] != 0.0 && plan.sampled(rep, i))
        acc[rep] += plan.sign_of(rep, i) * x[i];
  return acc;
}

}  // namespace

TEST_CASE("zero vector gives zero accumulators and zero estimate") {
  TailSketch tail(256, 8, 32, 1, 3.5);
  tail.measure(DenseVector(256, 0.0));
  for (const double y : tail.accumulators()) CHECK(y == 0.0);
  CHECK(tail.query() == 0.0);
}

TEST_CASE("unit vector accumulators lie in {-1, 0, +1}") {
  TailSketch tail(256, 4, 64, 2, 3.5);
  DenseVector x(256, 0.0);
  x[100] = 1.0;
  tail.measure(x);
  for (const double y : tail.accumulators())
    CHECK((y == -1.0 || y == 0.0 || y == 1.0));
}

TEST_CASE("measurement equals the direct summation oracle") {
  const std::uint64_t n = 512;
  TailSketch tail(n, 8, 48, 3, 3.5);
  Rng rng(4);
  DenseVector x(n);
  for (auto& v : x) v = rng.next_gaussian();
  tail.measure(x);
  CHECK(tail.accumulators() == direct_accumulators(tail.plan(), x));
}

TEST_CASE("update matches full measurement") {
  const std::uint64_t n = 256;
  TailSketch a(n, 8, 32, 5, 3.5), b(n, 8, 32, 5, 3.5);
  Rng rng(6);
  DenseVector x(n);
  for (auto& v : x) v = rng.next_gaussian();
  a.measure(x);
  for (std::uint64_t i = 0; i < n; ++i) b.update(i, x[i]);
  // same per-accumulator addition order, so equality is exact
  CHECK(a.accumulators() == b.accumulators());
}

TEST_CASE("estimate scales quadratically, exactly for power-of-two scaling") {
  const std::uint64_t n = 1024;
  Rng rng(7);
  DenseVector x(n), x4(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    x[i] = rng.next_gaussian();
    x4[i] = 4.0 * x[i];
  }
  TailSketch a(n, 16, 64, 8, 3.5), b(n, 16, 64, 8, 3.5);
  a.measure(x);
  b.measure(x4);
  CHECK(b.query() == 16.0 * a.query());
}

TEST_CASE("exactly k-sparse vectors give a zero estimate almost always") {
  // 64 repetitions: the median repetition holds no head element
  std::uint64_t zero_count = 0;
  const std::uint64_t seeds = 100;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const Params p = Params::make(1 << 12, 8, 0.25, "practical", 800 + s);
    SignalSpec spec;
    spec.model = "exact_sparse";
    const Signal sig = gen_signal(p, spec, p.seed);
    TailSketch tail(p.n, p.k, 64, p.seed, p.tail_scale);
    tail.measure(sig.x);
    zero_count += tail.query() == 0.0 ? 1 : 0;
  }
  CHECK(zero_count >= 95);
}

TEST_CASE("sandwich holds on the zipf family (smoke)") {
  const std::uint64_t seeds = 50;
  std::uint64_t good = 0;
  for (std::uint64_t s = 0; s < seeds; ++s) {
    const Params p = Params::make(1 << 12, 16, 0.25, "practical", 300 + s);
    SignalSpec spec;
    spec.model = "zipf";
    spec.zipf_exponent = 1.0;
    const Signal sig = gen_signal(p, spec, p.seed);
    TailSketch tail(p.n, p.k, p.tail_reps, p.seed, p.tail_scale);
    tail.measure(sig.x);
    const double that = tail.query();
    const double hi = tail_norm_sq(sig.x, p.k) / static_cast<double>(p.k);
    const double lo =
        tail_norm_sq(sig.x, p.ck()) / static_cast<double>(p.ck());
    good += (that >= lo && that <= hi) ? 1 : 0;
  }
  CHECK(good >= 40);
}

TEST_CASE("construction rejects degenerate parameters") {
  CHECK_THROWS_AS(TailSketch(16, 0, 8, 1, 3.5), std::invalid_argument);
  CHECK_THROWS_AS(TailSketch(16, 2, 0, 1, 3.5), std::invalid_argument);
  CHECK_THROWS_AS(TailSketch(16, 2, 8, 1, 0.0), std::invalid_argument);
  TailSketch t(16, 2, 8, 1, 3.5);
  CHECK_THROWS_AS(t.update(16, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(t.measure(DenseVector(15, 0.0)), std::invalid_argument);
}
