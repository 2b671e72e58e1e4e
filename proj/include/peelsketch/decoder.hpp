#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "peelsketch/dense_vector.hpp"
#include "peelsketch/peeling.hpp"
#include "peelsketch/sketch.hpp"

namespace psk {

// candidate extraction: mark the L/2 positions of largest |p_j| (ties to the
// lower position), decode the resulting bit string
std::optional<std::uint64_t> extract_candidate(std::span<const double> p,
                                               const BalancedCode& code);

// |x_hat_i|^2 >= (eps / 2k) * t_hat
bool threshold_test(double xhat_i, double that, const Params& p);

struct RecoverOptions {
  // oracle tail mode: use this value for t_hat instead of the tail sketch
  std::optional<double> oracle_tail;
  // cross-check the incrementally maintained residuals against the reference
  // recomputation at every iteration (slow; for tests)
  bool check_residuals = false;
  // skip the exhaustive column-sparsity scan in the stats
  bool with_column_stats = true;
};

struct RecoveryStats {
  std::uint64_t iterations = 0;
  std::uint64_t successes = 0;
  double decode_ms = 0.0;
  std::uint64_t rows = 0;
  std::uint64_t max_column_sparsity = 0;
};

struct RecoveryOutput {
  std::vector<std::uint64_t> recovered;  // R, in recovery order
  std::vector<std::uint64_t> refined;    // S, by decreasing |x_hat|
  SparseApprox approx;                   // x' = x_hat restricted to S
  RecoveryStats stats;
};

RecoveryOutput recover(const Sketch& sketch, const RecoverOptions& opts = {});

// white-box comparison of the decoder against the peeling analysis on the
// associated hypergraph of x
struct CrosscheckReport {
  std::uint64_t heavy_edges = 0;
  std::uint64_t peelable_edges = 0;
  std::uint64_t recovered_peelable = 0;
  double peelable_recovered_fraction = 1.0;  // 1 when no peelable edges
  double topk_missed_mass = 0.0;             // ||x_{T \ R}||^2
  double tail_k = 0.0;                       // ||x_{-k}||^2
  double missed_ratio = 0.0;                 // missed mass / tail (0 if tail 0)
  RecoveryOutput recovery;
};

// builds the associated hypergraph (buckets as vertices, heavy coordinates
// as edges with weight x_i^2, vertex weight = hashed light energy), peels it
// at params.rho, and reports how the decoder's R compares
CrosscheckReport recover_vs_peeling_crosscheck(const DenseVector& x,
                                               const Params& p,
                                               const RecoverOptions& opts = {});

WeightedHypergraph associated_hypergraph(const DenseVector& x, const Params& p,
                                         const Classification& cls,
                                         const HashPlan& plan);

}  // namespace psk
