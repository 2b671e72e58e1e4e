#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "peelsketch/bucket_sketch.hpp"
#include "peelsketch/count_sketch.hpp"
#include "peelsketch/params.hpp"
#include "peelsketch/tail_sketch.hpp"

namespace psk {

// Cheap construction-side view of the sketch: hash plan, code and tail plan,
// but no measurement cells. Good for row/column accounting at parameter
// settings whose cell arrays would not fit in memory.
class SketchPlan {
 public:
  explicit SketchPlan(const Params& p);

  const Params& params() const { return params_; }
  const HashPlan& hash() const { return hash_; }
  const BalancedCode& code() const { return *code_; }
  std::shared_ptr<const BalancedCode> code_ptr() const { return code_; }
  const TailPlan& tail() const { return tail_; }
  const CsPlan& cs() const { return cs_; }

  // total measurement rows: tail_reps + r*s + B*L
  std::uint64_t total_rows() const;
  // exact nonzero count of column i across the three blocks
  std::uint64_t column_sparsity(std::uint64_t i) const;
  std::uint64_t max_column_sparsity() const;

 private:
  Params params_;
  HashPlan hash_;
  std::shared_ptr<const BalancedCode> code_;
  TailPlan tail_;
  CsPlan cs_;
};

// The full linear sketch: tail block, point-estimator block, bucket block.
class Sketch {
 public:
  explicit Sketch(const Params& p);

  void measure(const DenseVector& x);
  void update(std::uint64_t i, double delta);

  const SketchPlan& plan() const { return plan_; }
  const Params& params() const { return plan_.params(); }
  const TailSketch& tail() const { return tail_; }
  const CountSketch& cs() const { return cs_; }
  const BucketSketch& buckets() const { return buckets_; }
  TailSketch& tail_mut() { return tail_; }
  CountSketch& cs_mut() { return cs_; }
  BucketSketch& buckets_mut() { return buckets_; }

  // container file: "PSKS" header + section table (params json, tail cells,
  // point-estimator cells, bucket cells), all little-endian
  void save(const std::string& path) const;
  static Sketch load(const std::string& path);

 private:
  SketchPlan plan_;
  TailSketch tail_;
  CountSketch cs_;
  BucketSketch buckets_;
};

}  // namespace psk
