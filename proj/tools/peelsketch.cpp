#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "peelsketch/decoder.hpp"
#include "peelsketch/experiment.hpp"
#include "peelsketch/peeling.hpp"
#include "peelsketch/validation.hpp"

namespace {

using nlohmann::json;

psk::ExperimentConfig config_from(const std::string& config_path,
                                  std::uint64_t n, std::uint64_t k, double eps,
                                  const std::string& profile,
                                  std::optional<std::uint64_t> seed) {
  psk::ExperimentConfig cfg;
  if (!config_path.empty()) {
    cfg = psk::load_config(config_path);
    if (seed) cfg.params.seed = *seed;
  } else {
    cfg.params = psk::Params::make(n, k, eps, profile, seed.value_or(1));
  }
  return cfg;
}

void write_recovery(const psk::RecoveryOutput& rec, const std::string& path,
                    const std::string& fmt) {
  if (fmt == "csv") {
    std::ofstream f(path, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open for write: " + path);
    f << "index,value\n";
    f.precision(17);
    for (const auto& [i, v] : rec.approx.entries) f << i << ',' << v << '\n';
    return;
  }
  json out = {
      {"recovered", rec.recovered},
      {"refined", rec.refined},
      {"stats",
       {{"iterations", rec.stats.iterations},
        {"successes", rec.stats.successes},
        {"decode_ms", rec.stats.decode_ms},
        {"rows", rec.stats.rows},
        {"max_column_sparsity", rec.stats.max_column_sparsity}}},
  };
  json entries = json::array();
  for (const auto& [i, v] : rec.approx.entries)
    entries.push_back({{"index", i}, {"value", v}});
  out["approximation"] = entries;
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f << out.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse-recovery sketching and hypergraph peeling toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "pskv";
  std::uint64_t n = 1 << 14, k = 10;
  double eps = 0.25;
  std::string profile = "practical";
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "experiment config (json)");
    cmd->add_option("--seed", seed, "seed override");
    cmd->add_option("--profile", profile, "constant profile")
        ->check(CLI::IsMember({"paper", "practical"}));
    cmd->add_option("--n", n, "dimension");
    cmd->add_option("--k", k, "sparsity");
    cmd->add_option("--eps", eps, "error tolerance");
  };

  // gen
  auto* gen = app.add_subcommand("gen", "generate a benchmark vector");
  add_common(gen);
  std::string model = "sparse_plus_gaussian";
  std::uint64_t heads = 0;
  double head_snr = 64.0, zipf_exponent = 1.0;
  gen->add_option("--model", model, "signal model")
      ->check(CLI::IsMember({"exact_sparse", "sparse_plus_gaussian", "zipf"}));
  gen->add_option("--heads", heads, "planted heads (0: k)");
  gen->add_option("--head-snr", head_snr, "head energy multiplier");
  gen->add_option("--zipf-exponent", zipf_exponent, "zipf exponent");
  gen->add_option("--out", out_path, "output vector path")->required();
  gen->add_option("--format", format, "vector file format")
      ->check(CLI::IsMember({"pskv", "csv"}));

  // sketch
  auto* sk = app.add_subcommand("sketch", "measure a vector into a sketch file");
  add_common(sk);
  std::string in_path;
  sk->add_option("--in", in_path, "input vector (pskv)")->required();
  sk->add_option("--out", out_path, "output sketch path (psks)")->required();

  // recover
  auto* rec = app.add_subcommand("recover", "run recovery from a sketch file");
  std::string rec_format = "json";
  std::optional<double> oracle_tail;
  std::string oracle_from;
  rec->add_option("--in", in_path, "input sketch (psks)")->required();
  rec->add_option("--out", out_path, "output path")->required();
  rec->add_option("--format", rec_format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  rec->add_option("--oracle-tail", oracle_tail,
                  "use this tail value instead of the tail sketch");
  rec->add_option("--oracle-tail-from", oracle_from,
                  "compute the oracle tail from this vector file");

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
  add_common(bench);
  std::uint64_t trials = 10;
  std::string tail_mode = "sketch";
  bench->add_option("--trials", trials, "trials");
  bench->add_option("--tail-mode", tail_mode, "tail estimate source")
      ->check(CLI::IsMember({"sketch", "oracle"}));
  bench->add_option("--model", model, "signal model");
  bench->add_option("--heads", heads, "planted heads (0: k)");
  bench->add_option("--out", out_path, "metrics output prefix")->required();

  // verify
  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite;
  double scale = 1.0;
  verify->add_option("suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(psk::verify_suite_names()));
  verify->add_option("--scale", scale, "trial count scale factor");
  verify->add_option("--out", out_path, "json report path");

  // peel-sim
  auto* sim = app.add_subcommand("peel-sim", "weighted hypergraph peeling simulator");
  std::string graph_path;
  std::uint64_t sim_n = 3000, sim_m = 0;
  unsigned sim_h = 3;
  double rho = 4.0, mu = 0.05;
  std::uint64_t mc_trials = 0;
  std::string sampler_name = "exponential";
  sim->add_option("--graph", graph_path, "graph file (text format)");
  sim->add_option("--random-n", sim_n, "random graph: vertices");
  sim->add_option("--random-m", sim_m, "random graph: edges");
  sim->add_option("--arity", sim_h, "random graph: arity");
  sim->add_option("--rho", rho, "peeling threshold");
  sim->add_option("--seed", seed, "seed");
  sim->add_option("--mc-trials", mc_trials,
                  "Monte Carlo non-peelable trials (0: skip)");
  sim->add_option("--mu", mu, "vertex weight mean for Monte Carlo");
  sim->add_option("--sampler", sampler_name, "vertex weight sampler")
      ->check(CLI::IsMember({"exponential", "correlated"}));
  sim->add_option("--out", out_path, "json report path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      psk::ExperimentConfig cfg = config_from(config_path, n, k, eps, profile, seed);
      if (gen->count("--model")) cfg.signal.model = model;
      if (gen->count("--heads")) cfg.signal.heads = heads;
      if (gen->count("--head-snr")) cfg.signal.head_snr = head_snr;
      if (gen->count("--zipf-exponent")) cfg.signal.zipf_exponent = zipf_exponent;
      const psk::Signal sig =
          psk::gen_signal(cfg.params, cfg.signal, cfg.params.seed);
      if (format == "csv")
        psk::write_csv(sig.x, out_path);
      else
        psk::write_pskv(sig.x, out_path);
      json meta = {{"params", cfg.params},
                   {"signal", cfg.signal},
                   {"planted", sig.planted}};
      std::ofstream mf(out_path + ".meta.json", std::ios::trunc);
      mf << meta.dump(2) << '\n';
      std::cout << "wrote " << out_path << " (n=" << cfg.params.n << ")\n";
    } else if (*sk) {
      psk::ExperimentConfig cfg = config_from(config_path, n, k, eps, profile, seed);
      const psk::DenseVector x = psk::read_pskv(in_path);
      if (x.size() != cfg.params.n)
        throw std::runtime_error("vector length does not match params");
      psk::Sketch sketch(cfg.params);
      sketch.measure(x);
      sketch.save(out_path);
      std::cout << "wrote " << out_path << " (rows=" << sketch.plan().total_rows()
                << ")\n";
    } else if (*rec) {
      const psk::Sketch sketch = psk::Sketch::load(in_path);
      psk::RecoverOptions opts;
      if (oracle_tail) opts.oracle_tail = *oracle_tail;
      if (!oracle_from.empty()) {
        const psk::DenseVector x = psk::read_pskv(oracle_from);
        opts.oracle_tail = psk::tail_norm_sq(x, sketch.params().k) /
                           static_cast<double>(sketch.params().k);
      }
      const psk::RecoveryOutput out = psk::recover(sketch, opts);
      write_recovery(out, out_path, rec_format);
      std::cout << "recovered " << out.recovered.size() << " indices, refined "
                << out.refined.size() << ", decode " << out.stats.decode_ms
                << " ms\n";
    } else if (*bench) {
      psk::ExperimentConfig cfg = config_from(config_path, n, k, eps, profile, seed);
      if (bench->count("--trials")) cfg.trials = trials;
      if (bench->count("--tail-mode")) cfg.tail_mode = tail_mode;
      if (bench->count("--model")) cfg.signal.model = model;
      if (bench->count("--heads")) cfg.signal.heads = heads;
      if (seed) cfg.seed_base = *seed;
      const psk::MetricsTable table = psk::run_experiment(cfg);
      psk::append_metrics_csv(table, out_path + ".csv");
      psk::write_metrics_json(table, cfg, out_path + ".json");
      std::cout << "trials=" << table.rows.size()
                << " error_ratio_p50=" << table.quantile_error_ratio(0.5)
                << " decode_ms_p50=" << table.quantile_decode_ms(0.5) << '\n';
    } else if (*verify) {
      const psk::SuiteReport report = psk::run_verify_suite(suite, scale);
      for (const auto& c : report.checks)
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": "
                  << c.details << '\n';
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::trunc);
        f << psk::to_json_report(report).dump(2) << '\n';
      }
      if (!report.pass()) return 1;
    } else if (*sim) {
      psk::WeightedHypergraph g =
          graph_path.empty()
              ? psk::random_hypergraph(
                    static_cast<std::uint32_t>(sim_n),
                    sim_m == 0 ? sim_n / (2 * sim_h) : sim_m, sim_h,
                    seed.value_or(1))
              : psk::read_graph(graph_path);
      const psk::PeelingResult res = psk::peel(g, rho);
      const auto classes = psk::edge_component_classes(g);
      std::uint64_t trees = 0, unicyclic = 0, complex_count = 0;
      for (const auto c : classes) {
        if (c == psk::ComponentClass::hypertree) ++trees;
        else if (c == psk::ComponentClass::unicyclic) ++unicyclic;
        else ++complex_count;
      }
      json out = {{"vertices", g.num_vertices},
                  {"edges", g.num_edges()},
                  {"h", g.arity},
                  {"rho", rho},
                  {"peeled", res.peeled_count},
                  {"survivors", g.num_edges() - res.peeled_count},
                  {"edge_component_class",
                   {{"hypertree", trees},
                    {"unicyclic", unicyclic},
                    {"complex", complex_count}}}};
      if (mc_trials > 0) {
        const psk::VertexWeightSampler sampler =
            sampler_name == "correlated"
                ? psk::correlated_exponential_weights(mu)
                : psk::exponential_weights(mu);
        const psk::NonPeelableReport rep =
            psk::mc_nonpeelable(g, sampler, rho, mc_trials, seed.value_or(1));
        json edges = json::array();
        for (const auto& e : rep.edges)
          edges.push_back({{"frequency", e.frequency},
                           {"bound", e.bound},
                           {"sigma", e.sigma},
                           {"excluded", e.excluded},
                           {"within_bound", e.within_bound()}});
        out["mc"] = {{"trials", rep.trials},
                     {"mu", mu},
                     {"all_within_bound", rep.all_within_bound()},
                     {"edges", edges}};
      }
      std::cout << out.dump(2) << '\n';
      if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::trunc);
        f << out.dump(2) << '\n';
      }
      if (mc_trials > 0 && !out["mc"]["all_within_bound"].get<bool>()) return 1;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 0;
}
