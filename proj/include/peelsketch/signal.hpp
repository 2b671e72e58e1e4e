#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "peelsketch/dense_vector.hpp"
#include "peelsketch/params.hpp"

namespace psk {

// Benchmark signal families. head_snr scales the planted head energy in
// units of (eps/k) times the gaussian tail energy.
struct SignalSpec {
  std::string model = "sparse_plus_gaussian";  // exact_sparse | zipf
  std::uint64_t heads = 0;                     // 0: default to k
  double head_snr = 64.0;
  double zipf_exponent = 1.0;
  double value_lo = 1.0;  // exact_sparse magnitude range
  double value_hi = 2.0;
};

void to_json(nlohmann::json& j, const SignalSpec& s);
void from_json(const nlohmann::json& j, SignalSpec& s);

struct Signal {
  DenseVector x;
  std::vector<std::uint64_t> planted;  // ground-truth head positions, ascending
};

Signal gen_signal(const Params& p, const SignalSpec& spec, std::uint64_t seed);

}  // namespace psk
