#pragma once

#include <cstdint>
#include <cmath>
#include <vector>

namespace psk {

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer; bijective on 64-bit words
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// keyed mixer over up to four words; the whole project derives its
// pseudo-randomness from this single function and one seed
inline std::uint64_t hash_words(std::uint64_t seed, std::uint64_t tag,
                                std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t h = mix64(seed + kGolden);
  h = mix64(h ^ (tag + kGolden));
  h = mix64(h ^ (a + kGolden));
  h = mix64(h ^ (b + kGolden));
  return h;
}

// multiply-shift range reduction, negligible bias for range << 2^64
inline std::uint64_t reduce(std::uint64_t h, std::uint64_t range) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(h) * range) >> 64);
}

// stream tags keep the independent hash families of the sketch apart
enum class StreamTag : std::uint64_t {
  edge = 1,
  bucket_sign = 2,
  cs_bucket = 3,
  cs_sign = 4,
  tail_sample = 5,
  tail_sign = 6,
  code_mask = 7,
  signal = 100,
  trial = 200,
};

inline std::uint64_t tag_of(StreamTag t) { return static_cast<std::uint64_t>(t); }

// Counter-based generator: a pure function of (seed, stream, counter), so
// every consumer is reproducible from the seed alone and independent of
// platform library internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() { return hash_words(seed_, stream_, counter_++); }

  // uniform in [0, 1) with 53 random bits
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return reduce(next_u64(), n); }

  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // Box-Muller on explicit uniforms
    double u1 = 0.0;
    do {
      u1 = next_unit();
    } while (u1 <= 0.0);
    const double u2 = next_unit();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  double next_exponential(double mean) {
    double u = 0.0;
    do {
      u = next_unit();
    } while (u <= 0.0);
    return -mean * std::log(u);
  }

  bool next_bool() { return (next_u64() >> 63) != 0; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::uint64_t i = v.size(); i > 1; --i) {
      const std::uint64_t j = next_below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace psk
