#include "peelsketch/decoder.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace psk {

std::optional<std::uint64_t> extract_candidate(std::span<const double> p,
                                               const BalancedCode& code) {
  const std::uint64_t len = code.length();
  if (p.size() != len)
    throw std::invalid_argument("extract_candidate: wrong residual length");
  thread_local std::vector<std::uint32_t> order;
  order.resize(len);
  std::iota(order.begin(), order.end(), 0u);
  const std::uint64_t half = len / 2;
  std::nth_element(order.begin(), order.begin() + (half - 1), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) {
                     const double ma = std::fabs(p[a]), mb = std::fabs(p[b]);
                     if (ma != mb) return ma > mb;
                     return a < b;
                   });
  BitVec y(len);
  for (std::uint64_t t = 0; t < half; ++t) y.set(order[t], true);
  return code.decode(y);
}

bool threshold_test(double xhat_i, double that, const Params& p) {
  return xhat_i * xhat_i >=
         (p.eps / (2.0 * static_cast<double>(p.k))) * that;
}

RecoveryOutput recover(const Sketch& sketch, const RecoverOptions& opts) {
  const Params& params = sketch.params();
  const BucketSketch& bs = sketch.buckets();
  const BalancedCode& code = bs.code();
  const HashPlan& hash = bs.hash();
  const std::uint64_t B = bs.bucket_count();
  const std::uint64_t L = bs.row_len();

  RecoveryOutput out;
  const auto t0 = std::chrono::steady_clock::now();

  const double that =
      opts.oracle_tail ? *opts.oracle_tail : sketch.tail().query();

  // private residual ledger, maintained incrementally across recoveries
  std::vector<double> ledger(bs.cells());

  std::vector<std::uint32_t> queue;
  queue.reserve(B);
  for (std::uint64_t v = 0; v < B; ++v)
    queue.push_back(static_cast<std::uint32_t>(v));
  std::vector<std::uint8_t> in_queue(B, 1);
  std::size_t head = 0;

  std::unordered_set<std::uint64_t> recovered_set;
  std::unordered_map<std::uint64_t, double> estimate;
  std::map<std::uint64_t, double> recovered_estimates;  // for residual checks
  std::vector<std::uint32_t> edge_scratch;
  BitVec cw;

  auto estimate_of = [&](std::uint64_t i) {
    auto it = estimate.find(i);
    if (it != estimate.end()) return it->second;
    const double e = sketch.cs().query(i);
    estimate.emplace(i, e);
    return e;
  };

  while (head < queue.size()) {
    const std::uint32_t v = queue[head++];
    in_queue[v] = 0;
    ++out.stats.iterations;

    const std::span<const double> pv{ledger.data() + std::uint64_t{v} * L, L};
    const auto cand = extract_candidate(pv, code);
    if (!cand) continue;
    const std::uint64_t i = *cand;
    // a decoded index must actually hash to this bucket
    if (!hash.edge_contains(i, v, edge_scratch)) continue;
    const double xhat = estimate_of(i);
    if (!threshold_test(xhat, that, params)) continue;
    if (recovered_set.count(i)) continue;

    recovered_set.insert(i);
    out.recovered.push_back(i);
    ++out.stats.successes;

    // subtract the estimate from the maintained residual of every bucket of i
    // and re-enqueue those buckets
    code.encode_into(i, cw);
    hash.edge_into(i, edge_scratch);
    for (const std::uint32_t u : edge_scratch) {
      double* pu = ledger.data() + std::uint64_t{u} * L;
      for (std::uint64_t w = 0; w < cw.words.size(); ++w) {
        std::uint64_t bits = cw.words[w];
        if (!bits) continue;
        const std::uint64_t signs = hash.sign_word(i, w);
        while (bits) {
          const auto bit = static_cast<std::uint64_t>(std::countr_zero(bits));
          bits &= bits - 1;
          pu[(w << 6) + bit] -= ((signs >> bit) & 1u) ? xhat : -xhat;
        }
      }
      if (!in_queue[u]) {
        in_queue[u] = 1;
        queue.push_back(u);
      }
    }

    if (opts.check_residuals) {
      recovered_estimates.emplace(i, xhat);
      for (const std::uint32_t u : edge_scratch) {
        const auto ref = bs.residual(u, recovered_estimates, params.n);
        const double* pu = ledger.data() + std::uint64_t{u} * L;
        for (std::uint64_t j = 0; j < L; ++j) {
          const double scale = std::max({std::fabs(ref[j]), std::fabs(pu[j]), 1.0});
          if (std::fabs(ref[j] - pu[j]) > 1e-9 * scale)
            throw std::logic_error("recover: residual ledger diverged");
        }
      }
    }
  }

  // refinement: keep the min(3k, |R|) recovered indices of largest estimate
  std::vector<std::uint64_t> by_magnitude = out.recovered;
  std::sort(by_magnitude.begin(), by_magnitude.end(),
            [&](std::uint64_t a, std::uint64_t b) {
              const double ma = std::fabs(estimate[a]), mb = std::fabs(estimate[b]);
              if (ma != mb) return ma > mb;
              return a < b;
            });
  const std::uint64_t keep =
      std::min<std::uint64_t>(3 * params.k, by_magnitude.size());
  out.refined.assign(by_magnitude.begin(), by_magnitude.begin() + keep);
  out.approx.support_bound = 3 * params.k;
  for (const std::uint64_t i : out.refined) out.approx.set(i, estimate[i]);

  const auto t1 = std::chrono::steady_clock::now();
  out.stats.decode_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  out.stats.rows = sketch.plan().total_rows();
  if (opts.with_column_stats)
    out.stats.max_column_sparsity = sketch.plan().max_column_sparsity();
  return out;
}

WeightedHypergraph associated_hypergraph(const DenseVector& x, const Params& p,
                                         const Classification& cls,
                                         const HashPlan& plan) {
  auto g = WeightedHypergraph::empty(
      static_cast<std::uint32_t>(plan.buckets), p.h);
  std::vector<std::uint32_t> scratch;
  for (const std::uint64_t i : cls.heavy) {
    plan.edge_into(i, scratch);
    g.add_edge(scratch, x[i] * x[i]);
  }
  for (const std::uint64_t i : cls.light) {
    if (x[i] == 0.0) continue;
    plan.edge_into(i, scratch);
    for (const std::uint32_t v : scratch) g.vertex_weights[v] += x[i] * x[i];
  }
  return g;
}

CrosscheckReport recover_vs_peeling_crosscheck(const DenseVector& x,
                                               const Params& p,
                                               const RecoverOptions& opts) {
  CrosscheckReport report;
  Sketch sketch(p);
  sketch.measure(x);
  report.recovery = recover(sketch, opts);

  const Classification cls = classify(x, p);
  const WeightedHypergraph g =
      associated_hypergraph(x, p, cls, sketch.buckets().hash());
  const PeelingResult peeled = peel(g, p.rho);

  std::unordered_set<std::uint64_t> rset(report.recovery.recovered.begin(),
                                         report.recovery.recovered.end());
  report.heavy_edges = cls.heavy.size();
  for (std::uint64_t e = 0; e < g.num_edges(); ++e) {
    if (!peeled.is_peeled(e)) continue;
    ++report.peelable_edges;
    if (rset.count(cls.heavy[e])) ++report.recovered_peelable;
  }
  report.peelable_recovered_fraction =
      report.peelable_edges == 0
          ? 1.0
          : static_cast<double>(report.recovered_peelable) /
                static_cast<double>(report.peelable_edges);

  report.tail_k = cls.tail_k;
  double missed = 0.0;
  for (const std::uint64_t i : cls.top)
    if (!rset.count(i)) missed += x[i] * x[i];
  report.topk_missed_mass = missed;
  report.missed_ratio = report.tail_k > 0.0 ? missed / report.tail_k
                                            : (missed > 0.0 ? INFINITY : 0.0);
  return report;
}

}  // namespace psk
