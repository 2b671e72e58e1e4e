#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "peelsketch/code.hpp"
#include "peelsketch/dense_vector.hpp"
#include "peelsketch/hashing.hpp"

namespace psk {

// B buckets of L code-weighted signed measurements:
//   q[v][j] = sum over i with v in edge(i) of sign(j,i) * Enc(i)_j * x_i
class BucketSketch {
 public:
  BucketSketch(HashPlan plan, std::shared_ptr<const BalancedCode> code);

  void measure(const DenseVector& x);
  void update(std::uint64_t i, double delta);

  // reference residual: q[v] minus the recovered estimates' contributions
  std::vector<double> residual(
      std::uint32_t v, const std::map<std::uint64_t, double>& recovered,
      std::uint64_t n) const;

  const HashPlan& hash() const { return plan_; }
  const BalancedCode& code() const { return *code_; }
  std::uint64_t bucket_count() const { return plan_.buckets; }
  std::uint64_t row_len() const { return code_->length(); }

  const double* row(std::uint32_t v) const {
    return cells_.data() + static_cast<std::uint64_t>(v) * row_len();
  }
  const std::vector<double>& cells() const { return cells_; }
  std::vector<double>& cells_mut() { return cells_; }

 private:
  HashPlan plan_;
  std::shared_ptr<const BalancedCode> code_;
  std::vector<double> cells_;  // B * L
};

}  // namespace psk
