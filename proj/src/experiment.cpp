#include "peelsketch/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace psk {

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{{"schema", "peelsketch-config-v1"},
                     {"params", c.params},
                     {"signal", c.signal},
                     {"trials", c.trials},
                     {"seed_base", c.seed_base},
                     {"tail_mode", c.tail_mode},
                     {"out_prefix", c.out_prefix}};
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  j.at("params").get_to(c.params);
  if (j.contains("signal")) j.at("signal").get_to(c.signal);
  c.trials = j.value("trials", c.trials);
  c.seed_base = j.value("seed_base", c.seed_base);
  c.tail_mode = j.value("tail_mode", c.tail_mode);
  c.out_prefix = j.value("out_prefix", c.out_prefix);
  if (c.tail_mode != "sketch" && c.tail_mode != "oracle")
    throw std::invalid_argument("config: tail_mode must be sketch or oracle");
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config: " + path);
  nlohmann::json j;
  f >> j;
  return j.get<ExperimentConfig>();
}

void save_config(const ExperimentConfig& c, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  const nlohmann::json j = c;
  f << j.dump(2) << '\n';
}

namespace {

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - frac) + v[hi] * frac;
}

}  // namespace

double MetricsTable::quantile_error_ratio(double q) const {
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r.exact ? 0.0 : r.error_ratio);
  return quantile(std::move(v), q);
}

double MetricsTable::quantile_decode_ms(double q) const {
  std::vector<double> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(r.decode_ms);
  return quantile(std::move(v), q);
}

MetricsTable run_experiment(const ExperimentConfig& config) {
  MetricsTable table;
  table.rows.reserve(config.trials);
  for (std::uint64_t t = 0; t < config.trials; ++t) {
    const std::uint64_t seed = config.seed_base + t;
    Params p = config.params;
    p.seed = seed;
    const Signal sig = gen_signal(p, config.signal, seed);

    Sketch sketch(p);
    sketch.measure(sig.x);

    RecoverOptions opts;
    if (config.tail_mode == "oracle")
      opts.oracle_tail =
          tail_norm_sq(sig.x, p.k) / static_cast<double>(p.k);
    const RecoveryOutput rec = recover(sketch, opts);

    TrialMetrics m;
    m.seed = seed;
    const ErrorRatio er = error_ratio(sig.x, rec.approx, p.k);
    m.error_ratio = er.value;
    m.exact = er.exact;
    m.recovered = rec.recovered.size();
    m.refined = rec.refined.size();
    m.rows = rec.stats.rows;
    m.max_column_sparsity = rec.stats.max_column_sparsity;
    m.decode_ms = rec.stats.decode_ms;

    const Classification cls = classify(sig.x, p);
    double top_energy = 0.0, hit_energy = 0.0;
    for (const std::uint64_t i : cls.top) {
      top_energy += sig.x[i] * sig.x[i];
      if (rec.approx.entries.count(i)) hit_energy += sig.x[i] * sig.x[i];
    }
    m.topk_mass_fraction = top_energy > 0.0 ? hit_energy / top_energy : 1.0;
    table.rows.push_back(m);
  }
  return table;
}

void append_metrics_csv(const MetricsTable& t, const std::string& path) {
  const bool fresh = !std::filesystem::exists(path) ||
                     std::filesystem::file_size(path) == 0;
  std::ofstream f(path, std::ios::app);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  if (fresh)
    f << "schema,seed,error_ratio,exact,recovered,refined,"
         "topk_mass_fraction,rows,max_column_sparsity,decode_ms\n";
  f.precision(17);
  for (const auto& r : t.rows) {
    f << MetricsTable::kSchema << ',' << r.seed << ',' << r.error_ratio << ','
      << (r.exact ? 1 : 0) << ',' << r.recovered << ',' << r.refined << ','
      << r.topk_mass_fraction << ',' << r.rows << ',' << r.max_column_sparsity
      << ',' << r.decode_ms << '\n';
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

void write_metrics_json(const MetricsTable& t, const ExperimentConfig& c,
                        const std::string& path) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"seed", r.seed},
                    {"error_ratio", r.error_ratio},
                    {"exact", r.exact},
                    {"recovered", r.recovered},
                    {"refined", r.refined},
                    {"topk_mass_fraction", r.topk_mass_fraction},
                    {"rows", r.rows},
                    {"max_column_sparsity", r.max_column_sparsity},
                    {"decode_ms", r.decode_ms}});
  }
  const nlohmann::json doc = {
      {"schema", MetricsTable::kSchema},
      {"config", c},
      {"trials", rows},
      {"aggregates",
       {{"error_ratio_p50", t.quantile_error_ratio(0.5)},
        {"error_ratio_p90", t.quantile_error_ratio(0.9)},
        {"decode_ms_p50", t.quantile_decode_ms(0.5)},
        {"decode_ms_p90", t.quantile_decode_ms(0.9)}}}};
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f << doc.dump(2) << '\n';
}

}  // namespace psk
