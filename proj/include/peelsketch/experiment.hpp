#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "peelsketch/decoder.hpp"
#include "peelsketch/params.hpp"
#include "peelsketch/signal.hpp"

namespace psk {

// A full experiment is reproducible from this config alone.
struct ExperimentConfig {
  Params params;
  SignalSpec signal;
  std::uint64_t trials = 10;
  std::uint64_t seed_base = 1;
  std::string tail_mode = "sketch";  // sketch | oracle
  std::string out_prefix;            // metrics file prefix, optional
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
void from_json(const nlohmann::json& j, ExperimentConfig& c);

ExperimentConfig load_config(const std::string& path);
void save_config(const ExperimentConfig& c, const std::string& path);

struct TrialMetrics {
  std::uint64_t seed = 0;
  double error_ratio = 0.0;  // ||x - x'||^2 / ||x_{-k}||^2
  bool exact = false;
  std::uint64_t recovered = 0;
  std::uint64_t refined = 0;
  double topk_mass_fraction = 0.0;  // recovered share of top-k energy
  std::uint64_t rows = 0;
  std::uint64_t max_column_sparsity = 0;
  double decode_ms = 0.0;
};

struct MetricsTable {
  static constexpr const char* kSchema = "peelsketch-metrics-v1";
  std::vector<TrialMetrics> rows;

  double quantile_error_ratio(double q) const;
  double quantile_decode_ms(double q) const;
};

MetricsTable run_experiment(const ExperimentConfig& config);

// CSV rows are append-safe: a header line is written only when the file is
// new, and each row carries the schema version
void append_metrics_csv(const MetricsTable& t, const std::string& path);
void write_metrics_json(const MetricsTable& t, const ExperimentConfig& c,
                        const std::string& path);

}  // namespace psk
