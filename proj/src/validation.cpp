#include "peelsketch/validation.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "peelsketch/constants.hpp"
#include "peelsketch/decoder.hpp"
#include "peelsketch/experiment.hpp"
#include "peelsketch/signal.hpp"

namespace psk {

bool SuiteReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json to_json_report(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"details", c.details},
                      {"seconds", c.seconds}});
  return {{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}};
}

void parallel_trials(std::uint64_t count,
                     const std::function<void(std::uint64_t)>& fn) {
  unsigned workers = std::thread::hardware_concurrency();
  if (workers == 0) workers = 4;
  if (workers > 16) workers = 16;
  if (workers > count) workers = static_cast<unsigned>(count);
  if (workers <= 1) {
    for (std::uint64_t t = 0; t < count; ++t) fn(t);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const std::uint64_t t = next.fetch_add(1);
      if (t >= count) return;
      try {
        fn(t);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string format(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::vector<std::uint8_t> exhaustive_peelable_oracle(
    const WeightedHypergraph& g, double rho) {
  const std::uint64_t m = g.num_edges();
  if (m > 20)
    throw std::invalid_argument("exhaustive oracle: too many edges");
  // freeness of edge e when the edges in `removed` are gone
  auto free_in = [&](std::uint32_t removed, std::uint64_t e) {
    const double we = g.edge_weights[e];
    for (unsigned a = 0; a < g.arity; ++a) {
      const std::uint32_t v = g.edge(e)[a];
      double other = g.vertex_weights[v];
      for (std::uint64_t e2 = 0; e2 < m; ++e2) {
        if (e2 == e || (removed >> e2) & 1u) continue;
        bool incident = false;
        for (unsigned b = 0; b < g.arity; ++b)
          if (g.edge(e2)[b] == v) incident = true;
        if (incident) other += g.edge_weights[e2];
      }
      if (we >= rho * other) return true;
    }
    return false;
  };

  std::vector<std::uint8_t> peelable(m, 0);
  std::unordered_set<std::uint32_t> visited;
  std::vector<std::uint32_t> stack{0};
  visited.insert(0);
  while (!stack.empty()) {
    const std::uint32_t removed = stack.back();
    stack.pop_back();
    for (std::uint64_t e = 0; e < m; ++e) {
      if ((removed >> e) & 1u) continue;
      if (!free_in(removed, e)) continue;
      peelable[e] = 1;
      const std::uint32_t next = removed | (1u << e);
      if (visited.insert(next).second) stack.push_back(next);
    }
  }
  return peelable;
}

// ---------------------------------------------------------------------------
// recovery checks

CheckResult check_exact_sparse_recovery(std::uint64_t seeds) {
  CheckResult r{"exact-sparse recovery", false, "", 0.0};
  const auto t0 = Clock::now();
  const Params base = Params::make(1ull << 14, 10, 0.25, "practical", 1);
  SignalSpec spec;
  spec.model = "exact_sparse";
  spec.heads = base.k;

  std::vector<std::uint8_t> ok(seeds, 0);
  parallel_trials(seeds, [&](std::uint64_t t) {
    Params p = base;
    p.seed = 1000 + t;
    const Signal sig = gen_signal(p, spec, p.seed);
    Sketch sketch(p);
    sketch.measure(sig.x);
    RecoverOptions opts;
    opts.oracle_tail = tail_norm_sq(sig.x, p.k) / static_cast<double>(p.k);
    opts.with_column_stats = false;
    const RecoveryOutput rec = recover(sketch, opts);

    if (rec.approx.entries.size() != sig.planted.size()) return;
    for (const std::uint64_t i : sig.planted) {
      const auto it = rec.approx.entries.find(i);
      if (it == rec.approx.entries.end()) return;
      if (std::fabs(it->second - sig.x[i]) > 1e-9) return;
    }
    ok[t] = 1;
  });

  std::uint64_t good = 0;
  for (const auto v : ok) good += v;
  r.seconds = seconds_since(t0);
  r.pass = good >= (seeds * 99) / 100 && r.seconds < 60.0;
  r.details = std::to_string(good) + "/" + std::to_string(seeds) +
              " seeds exact (need >= " + std::to_string((seeds * 99) / 100) +
              "), " + format(r.seconds) + " s (budget 60)";
  return r;
}

CheckResult check_l2l2_guarantee(std::uint64_t seeds) {
  CheckResult r{"l2/l2 guarantee", false, "", 0.0};
  const auto t0 = Clock::now();
  const Params base = Params::make(1ull << 16, 8, 0.25, "practical", 1);
  SignalSpec spec;
  spec.model = "sparse_plus_gaussian";
  spec.heads = constants::kPlantedHeads;
  spec.head_snr = constants::kPlantedHeadSnr;
  const double bound =
      std::min(std::pow(1.0 + constants::kGuaranteeC * base.eps, 2.0), 2.0);

  std::vector<double> ratio(seeds, 0.0);
  parallel_trials(seeds, [&](std::uint64_t t) {
    Params p = base;
    p.seed = 2000 + t;
    const Signal sig = gen_signal(p, spec, p.seed);
    Sketch sketch(p);
    sketch.measure(sig.x);
    RecoverOptions opts;
    opts.with_column_stats = false;
    const RecoveryOutput rec = recover(sketch, opts);
    const ErrorRatio er = error_ratio(sig.x, rec.approx, p.k);
    ratio[t] = er.exact ? 0.0 : er.value;
  });

  std::uint64_t good = 0;
  double worst = 0.0;
  for (const double v : ratio) {
    if (v <= bound) ++good;
    worst = std::max(worst, v);
  }
  r.seconds = seconds_since(t0);
  r.pass = good >= (seeds * 90) / 100 && r.seconds < 300.0;
  r.details = std::to_string(good) + "/" + std::to_string(seeds) +
              " seeds with ratio <= " + format(bound) +
              " (worst " + format(worst) + "), " + format(r.seconds) +
              " s (budget 300)";
  return r;
}

CheckResult check_rows_and_columns() {
  CheckResult r{"rows and column sparsity", false, "", 0.0};
  const auto t0 = Clock::now();
  const std::uint64_t n = 1ull << 12, k = 4;
  const double eps = 0.5;
  std::ostringstream details;
  bool pass = true;

  struct ProfileBound {
    const char* name;
    std::uint64_t c1, c2;
  };
  const ProfileBound profiles[] = {
      {"practical", constants::kRowBoundC1Practical,
       constants::kColBoundC2Practical},
      {"paper", constants::kRowBoundC1Paper, constants::kColBoundC2Paper},
  };
  for (const auto& pb : profiles) {
    const Params p = Params::make(n, k, eps, pb.name, 7);
    const SketchPlan plan(p);
    const std::uint64_t lg = p.log2n();
    const std::uint64_t m = plan.total_rows();
    const auto row_bound = static_cast<std::uint64_t>(
        static_cast<long double>(pb.c1) * (k / eps) * lg);
    const std::uint64_t col = plan.max_column_sparsity();
    const std::uint64_t col_bound = pb.c2 * lg;
    const bool ok = m <= row_bound && col <= col_bound;
    pass = pass && ok;
    details << pb.name << ": m=" << m << "<=" << row_bound << " maxcol=" << col
            << "<=" << col_bound << (ok ? " ok" : " FAIL") << "; ";
  }

  // dual route at the practical profile: measured unit vectors have exactly
  // column_sparsity(i) nonzero cells
  {
    const Params p = Params::make(n, k, eps, "practical", 7);
    const std::uint64_t probes[] = {0, 17, 1033, n - 1};
    for (const std::uint64_t i : probes) {
      Sketch s(p);
      DenseVector unit(n, 0.0);
      unit[i] = 1.0;
      s.measure(unit);
      std::uint64_t nonzero = 0;
      for (const double v : s.tail().accumulators()) nonzero += v != 0.0;
      for (const double v : s.cs().cells()) nonzero += v != 0.0;
      for (const double v : s.buckets().cells()) nonzero += v != 0.0;
      if (nonzero != s.plan().column_sparsity(i)) {
        pass = false;
        details << "unit-vector count mismatch at i=" << i << "; ";
      }
    }
  }

  r.seconds = seconds_since(t0);
  r.pass = pass;
  r.details = details.str();
  return r;
}

CheckResult check_decode_time_scaling() {
  CheckResult r{"decode-time linearity", false, "", 0.0};
  const auto t0 = Clock::now();
  const std::uint64_t ks[] = {8, 16, 32, 64};
  std::vector<double> medians;
  for (const std::uint64_t k : ks) {
    Params p = Params::make(1ull << 16, k, 0.25, "practical", 40 + k);
    SignalSpec spec;
    spec.model = "sparse_plus_gaussian";
    spec.heads = k;
    spec.head_snr = constants::kPlantedHeadSnr;
    const Signal sig = gen_signal(p, spec, p.seed);
    Sketch sketch(p);
    sketch.measure(sig.x);
    RecoverOptions opts;
    opts.with_column_stats = false;
    std::vector<double> times;
    for (int rep = 0; rep < 5; ++rep)
      times.push_back(recover(sketch, opts).stats.decode_ms);
    std::sort(times.begin(), times.end());
    medians.push_back(times[times.size() / 2]);
  }
  bool pass = true;
  std::ostringstream details;
  details << "median ms:";
  for (const double m : medians) details << ' ' << format(m);
  details << "; ratios:";
  for (std::size_t t = 1; t < medians.size(); ++t) {
    const double ratio = medians[t] / medians[t - 1];
    details << ' ' << format(ratio);
    if (!(ratio >= 1.5 && ratio <= 3.0)) pass = false;
  }
  r.seconds = seconds_since(t0);
  r.pass = pass;
  r.details = details.str();
  return r;
}

// ---------------------------------------------------------------------------
// peeling checks

namespace {

// deterministic scan for a sparse instance with only hypertree/unicyclic
// components
WeightedHypergraph tree_or_unicyclic_instance(std::uint32_t n, std::uint64_t m,
                                              unsigned h, std::uint64_t seed) {
  for (std::uint64_t s = seed;; ++s) {
    WeightedHypergraph g = random_hypergraph(n, m, h, s);
    const auto classes = edge_component_classes(g);
    bool ok = true;
    for (const auto c : classes)
      if (c == ComponentClass::complex_structure) ok = false;
    if (ok) return g;
  }
}

}  // namespace

CheckResult check_peeling_bound(std::uint64_t trials, bool correlated) {
  CheckResult r{correlated ? "peeling bound (correlated weights)"
                           : "peeling bound",
                false, "", 0.0};
  const auto t0 = Clock::now();
  const double rho = 4.0, mu = 0.05;
  bool pass = true;
  std::ostringstream details;
  for (std::uint64_t instance = 0; instance < 3; ++instance) {
    const WeightedHypergraph g =
        tree_or_unicyclic_instance(150, 25, 3, 500 + 1000 * instance);
    const VertexWeightSampler sampler =
        correlated ? correlated_exponential_weights(mu)
                   : exponential_weights(mu);
    const NonPeelableReport rep =
        mc_nonpeelable(g, sampler, rho, trials, 77 + instance);
    double worst_slack = -1.0;
    for (const auto& e : rep.edges) {
      if (!e.within_bound()) pass = false;
      if (e.bound < 1.0)
        worst_slack = std::max(worst_slack, e.frequency - e.bound);
    }
    details << "g" << instance << " worst freq-bound=" << format(worst_slack)
            << "; ";
  }
  r.seconds = seconds_since(t0);
  r.pass = pass && r.seconds < 120.0;
  r.details = details.str() + format(r.seconds) + " s (budget 120)";
  return r;
}

CheckResult check_spreadness_expectation(std::uint64_t seeds) {
  CheckResult r{"spreadness expectation", false, "", 0.0};
  const auto t0 = Clock::now();
  const std::uint32_t n = 3000;
  const unsigned h = 3;
  const double rho = 4.0;
  const std::uint64_t m = n / (8 * 4 * h * h);  // floor(N / (8 rho h^2))

  std::vector<double> seed_means(seeds, 0.0);
  parallel_trials(seeds, [&](std::uint64_t t) {
    const WeightedHypergraph g = random_hypergraph(n, m, h, 9000 + t);
    Incidence inc(g);
    double sum = 0.0;
    for (std::uint64_t e = 0; e < g.num_edges(); ++e)
      sum += spreadness(g, inc, e, rho);
    seed_means[t] = sum / static_cast<double>(g.num_edges());
  });

  double mean = 0.0;
  for (const double v : seed_means) mean += v;
  mean /= static_cast<double>(seeds);
  double var = 0.0;
  for (const double v : seed_means) var += (v - mean) * (v - mean);
  var /= static_cast<double>(seeds - 1);
  const double se = std::sqrt(var / static_cast<double>(seeds));

  r.seconds = seconds_since(t0);
  r.pass = mean <= rho + 1.0 + 3.0 * se;
  r.details = "mean D(e)=" + format(mean) + " vs " + format(rho + 1.0) +
              " + 3*SE(" + format(se) + "), M=" + std::to_string(m);
  return r;
}

CheckResult check_component_structure(std::uint64_t seeds) {
  CheckResult r{"component structure", false, "", 0.0};
  const auto t0 = Clock::now();
  const std::uint32_t n = 10000;
  const unsigned h = 3;
  const std::uint64_t m = n / (2 * h);

  std::vector<std::uint8_t> ok(seeds, 0);
  parallel_trials(seeds, [&](std::uint64_t t) {
    const WeightedHypergraph g = random_hypergraph(n, m, h, 30000 + t);
    const auto classes = edge_component_classes(g);
    bool good = true;
    for (const auto c : classes)
      if (c == ComponentClass::complex_structure) good = false;
    ok[t] = good ? 1 : 0;
  });
  std::uint64_t good = 0;
  for (const auto v : ok) good += v;
  r.seconds = seconds_since(t0);
  r.pass = good >= (seeds * 95) / 100;
  r.details = std::to_string(good) + "/" + std::to_string(seeds) +
              " seeds all hypertree/unicyclic (need >= " +
              std::to_string((seeds * 95) / 100) + ")";
  return r;
}

namespace {

WeightedHypergraph random_weighted_instance(std::uint64_t seed, unsigned h,
                                            std::uint32_t max_vertices,
                                            std::uint64_t max_edges) {
  Rng rng(seed, tag_of(StreamTag::trial));
  const auto n = static_cast<std::uint32_t>(
      h + rng.next_below(max_vertices - h + 1));
  const std::uint64_t m = 1 + rng.next_below(max_edges);
  WeightedHypergraph g = WeightedHypergraph::empty(n, h);
  std::vector<std::uint32_t> edge(h);
  for (std::uint64_t e = 0; e < m; ++e) {
    std::size_t filled = 0;
    while (filled < h) {
      const auto v = static_cast<std::uint32_t>(rng.next_below(n));
      bool fresh = true;
      for (std::size_t a = 0; a < filled; ++a)
        if (edge[a] == v) fresh = false;
      if (fresh) edge[filled++] = v;
    }
    g.add_edge(edge, 0.1 + 1.9 * rng.next_unit());
  }
  for (auto& w : g.vertex_weights)
    w = rng.next_unit() < 0.3 ? 0.0 : rng.next_exponential(0.3);
  return g;
}

}  // namespace

CheckResult check_peeler_oracle(std::uint64_t small_instances,
                                std::uint64_t large_instances,
                                std::uint64_t orders) {
  CheckResult r{"peeler correctness oracle", false, "", 0.0};
  const auto t0 = Clock::now();
  const double rhos[] = {1.5, 2.0, 4.0};
  bool pass = true;

  for (std::uint64_t t = 0; t < small_instances && pass; ++t) {
    const unsigned h = t % 2 == 0 ? 3 : 2;
    const WeightedHypergraph g = random_weighted_instance(t, h, 9, 5);
    const double rho = rhos[t % 3];
    const auto oracle = exhaustive_peelable_oracle(g, rho);
    const PeelingResult greedy = peel(g, rho);
    for (std::uint64_t e = 0; e < g.num_edges(); ++e)
      if (oracle[e] != greedy.peeled[e]) pass = false;
    if (!pass) r.details = "greedy != oracle at small instance " + std::to_string(t);
  }

  for (std::uint64_t t = 0; t < large_instances && pass; ++t) {
    const WeightedHypergraph g =
        random_weighted_instance(77000 + t, 3, 300, 80);
    const double rho = rhos[t % 3];
    const PeelingResult base = peel(g, rho);
    for (std::uint64_t o = 0; o < orders && pass; ++o) {
      const PeelingResult shuffled = peel(g, rho, 555 + o);
      if (shuffled.peeled != base.peeled) {
        pass = false;
        r.details = "order dependence at large instance " + std::to_string(t);
      }
    }
  }

  r.seconds = seconds_since(t0);
  r.pass = pass;
  if (pass)
    r.details = std::to_string(small_instances) + " exhaustive-oracle + " +
                std::to_string(large_instances) + "x" + std::to_string(orders) +
                " order-independence instances agree";
  return r;
}

// ---------------------------------------------------------------------------
// estimator checks

CheckResult check_cs_decay(std::uint64_t trials) {
  CheckResult r{"point-estimator decay", false, "", 0.0};
  const auto t0 = Clock::now();
  const std::uint64_t n = 4096, contract_r = 40, contract_s = 512;
  const std::uint64_t rows = constants::kCsLemmaRowsMult * contract_r;
  const std::uint64_t buckets = constants::kCsLemmaBucketsMult * contract_s;
  const double lambdas[] = {1.0, 2.0, 4.0, 8.0};

  // fixed dense gaussian signal; the probability is over sketch seeds
  DenseVector x(n, 0.0);
  Rng xrng(4242, tag_of(StreamTag::signal));
  for (auto& v : x) v = xrng.next_gaussian();
  const double tail = tail_norm_sq(x, contract_s);

  std::vector<std::array<std::uint8_t, 4>> exceed(trials);
  parallel_trials(trials, [&](std::uint64_t t) {
    CountSketch cs(n, rows, buckets, 600000 + t);
    cs.measure(x);
    Rng trng(t, tag_of(StreamTag::trial));
    const std::uint64_t i = trng.next_below(n);
    const double err = cs.query(i) - x[i];
    for (int li = 0; li < 4; ++li) {
      const double thr = (lambdas[li] / static_cast<double>(contract_r)) *
                         tail / static_cast<double>(contract_s);
      exceed[t][li] = err * err > thr ? 1 : 0;
    }
  });

  std::ostringstream details;
  bool pass = true;
  std::uint64_t prev = trials + 1;
  for (int li = 0; li < 4; ++li) {
    std::uint64_t count = 0;
    for (std::uint64_t t = 0; t < trials; ++t) count += exceed[t][li];
    const double p = std::min(2.0 * std::exp(-lambdas[li]), 1.0);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    const double freq = static_cast<double>(count) / static_cast<double>(trials);
    const bool below = freq <= p + 5.0 * sigma;
    const bool decreasing = count < prev;
    if (!below || !decreasing) pass = false;
    details << "lambda=" << lambdas[li] << ": " << format(freq)
            << (below ? "<=" : ">") << format(p + 5.0 * sigma) << "; ";
    prev = count;
  }
  r.seconds = seconds_since(t0);
  r.pass = pass;
  r.details = details.str();
  return r;
}

CheckResult check_code_contract(std::uint64_t corruption_trials) {
  CheckResult r{"code contract", false, "", 0.0};
  const auto t0 = Clock::now();
  const std::uint64_t n = 1ull << 16;
  const std::uint64_t L = 2048 * ceil_log2(n);
  const BalancedCode code(n, L, 99);

  bool round_trip = true, balanced = true;
  for (std::uint64_t i = 0; i < n; ++i) {
    const BitVec cw = code.encode(i);
    const double frac =
        static_cast<double>(cw.popcount()) / static_cast<double>(L);
    if (frac < 7.0 / 16.0 || frac > 9.0 / 16.0) balanced = false;
    const auto back = code.decode(cw);
    if (!back || *back != i) round_trip = false;
    if (!round_trip || !balanced) break;
  }

  const std::uint64_t flips = L / 32;
  std::vector<std::uint8_t> ok(corruption_trials, 0);
  parallel_trials(corruption_trials, [&](std::uint64_t t) {
    Rng rng(t, tag_of(StreamTag::trial));
    const std::uint64_t i = rng.next_below(n);
    BitVec cw = code.encode(i);
    std::vector<std::uint8_t> flipped(L, 0);
    std::uint64_t done = 0;
    while (done < flips) {  // exactly `flips` distinct positions
      const std::uint64_t j = rng.next_below(L);
      if (flipped[j]) continue;
      flipped[j] = 1;
      cw.set(j, !cw.get(j));
      ++done;
    }
    const auto back = code.decode(cw);
    ok[t] = back && *back == i ? 1 : 0;
  });
  std::uint64_t good = 0;
  for (const auto v : ok) good += v;
  const double success =
      static_cast<double>(good) / static_cast<double>(corruption_trials);

  r.seconds = seconds_since(t0);
  r.pass = round_trip && balanced && success >= 0.99;
  r.details = std::string("round trip ") + (round_trip ? "ok" : "FAIL") +
              ", balanced " + (balanced ? "ok" : "FAIL") +
              ", corruption success " + format(success) + " at flip fraction 1/32";
  return r;
}

CheckResult check_tail_sandwich(std::uint64_t seeds) {
  CheckResult r{"tail sandwich", false, "", 0.0};
  const auto t0 = Clock::now();
  Params p = Params::make(1ull << 14, 16, 0.25, "practical", 1);
  SignalSpec spec;
  spec.model = "zipf";
  spec.zipf_exponent = 1.0;

  std::vector<std::uint8_t> ok(seeds, 0);
  parallel_trials(seeds, [&](std::uint64_t t) {
    Params pt = p;
    pt.seed = 5000 + t;
    const Signal sig = gen_signal(pt, spec, pt.seed);
    TailSketch tail(pt.n, pt.k, pt.tail_reps, pt.seed, pt.tail_scale);
    tail.measure(sig.x);
    const double that = tail.query();
    const double hi = tail_norm_sq(sig.x, pt.k) / static_cast<double>(pt.k);
    const double ck = static_cast<double>(pt.ck());
    const double lo = tail_norm_sq(sig.x, pt.ck()) / ck;
    ok[t] = (that >= lo && that <= hi) ? 1 : 0;
  });
  std::uint64_t good = 0;
  for (const auto v : ok) good += v;
  r.seconds = seconds_since(t0);
  r.pass = good >= (seeds * 90) / 100;
  r.details = std::to_string(good) + "/" + std::to_string(seeds) +
              " seeds inside the sandwich (need >= " +
              std::to_string((seeds * 90) / 100) + ")";
  return r;
}

CheckResult check_recover_vs_peeling(std::uint64_t seeds) {
  CheckResult r{"peelable-edge recovery cross-check", false, "", 0.0};
  const auto t0 = Clock::now();
  const Params base = Params::make(1ull << 14, 8, 0.25, "practical", 1);
  SignalSpec spec;
  spec.model = "sparse_plus_gaussian";
  spec.heads = constants::kPlantedHeads;
  spec.head_snr = constants::kPlantedHeadSnr;

  std::vector<std::uint64_t> peelable(seeds, 0), recovered(seeds, 0);
  parallel_trials(seeds, [&](std::uint64_t t) {
    Params p = base;
    p.seed = 7000 + t;
    const Signal sig = gen_signal(p, spec, p.seed);
    RecoverOptions opts;
    opts.with_column_stats = false;
    const CrosscheckReport rep = recover_vs_peeling_crosscheck(sig.x, p, opts);
    peelable[t] = rep.peelable_edges;
    recovered[t] = rep.recovered_peelable;
  });
  std::uint64_t total_peelable = 0, total_recovered = 0;
  for (std::uint64_t t = 0; t < seeds; ++t) {
    total_peelable += peelable[t];
    total_recovered += recovered[t];
  }
  const double fraction =
      total_peelable == 0
          ? 1.0
          : static_cast<double>(total_recovered) /
                static_cast<double>(total_peelable);
  r.seconds = seconds_since(t0);
  r.pass = fraction >= 0.99;
  r.details = std::to_string(total_recovered) + "/" +
              std::to_string(total_peelable) +
              " peelable heavy edges recovered (" + format(fraction) + ")";
  return r;
}

// ---------------------------------------------------------------------------

std::vector<std::string> verify_suite_names() {
  return {"peeling", "count-sketch", "code", "tail", "end-to-end"};
}

SuiteReport run_verify_suite(const std::string& name, double scale) {
  auto scaled = [&](std::uint64_t v) {
    const auto s = static_cast<std::uint64_t>(static_cast<double>(v) * scale);
    return s == 0 ? 1 : s;
  };
  SuiteReport report;
  report.suite = name;
  if (name == "peeling") {
    report.checks.push_back(check_peeler_oracle(scaled(1000), scaled(100), 20));
    report.checks.push_back(check_peeling_bound(scaled(10000), false));
    report.checks.push_back(check_peeling_bound(scaled(10000), true));
    report.checks.push_back(check_spreadness_expectation(scaled(1000)));
    report.checks.push_back(check_component_structure(scaled(100)));
  } else if (name == "count-sketch") {
    report.checks.push_back(check_cs_decay(scaled(10000)));
  } else if (name == "code") {
    report.checks.push_back(check_code_contract(scaled(10000)));
  } else if (name == "tail") {
    report.checks.push_back(check_tail_sandwich(scaled(200)));
  } else if (name == "end-to-end") {
    report.checks.push_back(check_exact_sparse_recovery(scaled(100)));
    report.checks.push_back(check_l2l2_guarantee(scaled(100)));
    report.checks.push_back(check_recover_vs_peeling(scaled(100)));
    report.checks.push_back(check_decode_time_scaling());
    report.checks.push_back(check_rows_and_columns());
  } else {
    throw std::invalid_argument("unknown verify suite: " + name);
  }
  return report;
}

}  // namespace psk
