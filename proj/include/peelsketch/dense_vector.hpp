#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "peelsketch/params.hpp"

namespace psk {

using DenseVector = std::vector<double>;

// Recovered sparse approximation: index -> estimate. Exact zeros are not
// stored, so the support is exactly the set of nonzero output entries.
struct SparseApprox {
  std::map<std::uint64_t, double> entries;
  std::uint64_t support_bound = 0;

  void set(std::uint64_t i, double v);
  double at(std::uint64_t i) const;
  std::uint64_t support_size() const { return entries.size(); }
  void validate(std::uint64_t n) const;
};

// Heavy/light/intermediate classification of a fixed vector. Heavy and light
// partition [n]; intermediate is a superset of heavy (for c >= 1).
struct Classification {
  std::vector<std::uint64_t> top;           // top-k indices, ascending
  std::vector<std::uint64_t> heavy;         // ascending
  std::vector<std::uint64_t> light;         // ascending
  std::vector<std::uint64_t> intermediate;  // ascending
  double tail_k = 0.0;                      // ||x_{-k}||^2
  double tail_ck = 0.0;                     // ||x_{-ck}||^2

  bool is_heavy(std::uint64_t i) const;
  bool is_top(std::uint64_t i) const;
};

// ||x_{-j}||^2: sum of squares of all but the j largest-magnitude entries,
// ties broken by keeping the lower index in the head.
double tail_norm_sq(const DenseVector& x, std::uint64_t j);

Classification classify(const DenseVector& x, const Params& p);

struct ErrorRatio {
  double value = 0.0;
  bool exact = false;  // both ||x - x'||^2 and ||x_{-k}||^2 are zero
};

ErrorRatio error_ratio(const DenseVector& x, const SparseApprox& xp,
                       std::uint64_t k);

// file formats:
//   binary ("PSKV"): 16-byte header (magic, version u32, n u64) then n
//   little-endian doubles
//   csv: lines "index,value"
void write_pskv(const DenseVector& x, const std::string& path);
DenseVector read_pskv(const std::string& path);
void write_csv(const DenseVector& x, const std::string& path);
DenseVector read_csv(const std::string& path, std::uint64_t n);

}  // namespace psk
