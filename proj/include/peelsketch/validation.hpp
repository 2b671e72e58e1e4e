#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "peelsketch/peeling.hpp"

namespace psk {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const;
};

nlohmann::json to_json_report(const SuiteReport& r);

// runs fn(t) for t in [0, count) across worker threads; results must be
// written into per-t slots so the outcome is order-independent
void parallel_trials(std::uint64_t count,
                     const std::function<void(std::uint64_t)>& fn);

// reference peelable set: search over all removal orders (tiny graphs only)
std::vector<std::uint8_t> exhaustive_peelable_oracle(
    const WeightedHypergraph& g, double rho);

// Verification checks. Default arguments are the frozen benchmark settings;
// scale < 1 shrinks trial counts for quick runs.
CheckResult check_exact_sparse_recovery(std::uint64_t seeds = 100);
CheckResult check_l2l2_guarantee(std::uint64_t seeds = 100);
CheckResult check_rows_and_columns();
CheckResult check_decode_time_scaling();
CheckResult check_peeling_bound(std::uint64_t trials = 10000,
                                bool correlated = false);
CheckResult check_spreadness_expectation(std::uint64_t seeds = 1000);
CheckResult check_component_structure(std::uint64_t seeds = 100);
CheckResult check_peeler_oracle(std::uint64_t small_instances = 1000,
                                std::uint64_t large_instances = 100,
                                std::uint64_t orders = 20);
CheckResult check_cs_decay(std::uint64_t trials = 10000);
CheckResult check_code_contract(std::uint64_t corruption_trials = 10000);
CheckResult check_tail_sandwich(std::uint64_t seeds = 200);
CheckResult check_recover_vs_peeling(std::uint64_t seeds = 100);

// named suites behind the verify command:
// peeling | count-sketch | code | tail | end-to-end
SuiteReport run_verify_suite(const std::string& name, double scale = 1.0);
std::vector<std::string> verify_suite_names();

}  // namespace psk
