#pragma once

#include <bit>
#include <cstdint>
#include <string>

#include <json.hpp>

namespace psk {

inline std::uint64_t ceil_log2(std::uint64_t n) {
  return n <= 1 ? 1 : static_cast<std::uint64_t>(std::bit_width(n - 1));
}

// All problem and construction constants. Derived sizes are filled in by
// make() from (n, k, eps, c, profile) and serialized explicitly so a run is
// reproducible from the JSON document alone.
struct Params {
  std::uint64_t n = 0;     // dimension
  std::uint64_t k = 0;     // sparsity
  double eps = 0.25;       // error tolerance, in (0,1)
  double c = 2.0;          // tail-sketch constant, >= 1
  double rho = 512.0;      // peeling threshold
  unsigned h = 3;          // edge arity

  double bucket_mult = 16.0;     // B = ceil(bucket_mult * c * k / eps)
  std::uint64_t cs_rows = 0;     // point-estimator rows r
  std::uint64_t cs_buckets = 0;  // point-estimator buckets per row s
  std::uint64_t code_len = 0;    // codeword length L (even)
  std::uint64_t tail_reps = 0;   // tail estimator repetitions
  double tail_scale = 3.5;       // t_hat = tail_scale * median(y^2)

  std::uint64_t seed = 1;
  std::string profile = "practical";

  static Params make(std::uint64_t n, std::uint64_t k, double eps,
                     const std::string& profile, std::uint64_t seed,
                     double c = 2.0);

  std::uint64_t log2n() const { return ceil_log2(n); }
  std::uint64_t buckets() const;        // B, clamped to >= h
  std::uint64_t ck() const;             // floor(c*k), clamped to [k, n]

  // throws std::invalid_argument naming the violated constraint
  void validate() const;
};

void to_json(nlohmann::json& j, const Params& p);
void from_json(const nlohmann::json& j, Params& p);

}  // namespace psk
