// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Trial counts and tolerances are fixed here and in the checks; see
// README for how to run.
#include <cstdio>
#include <vector>

#include "peelsketch/validation.hpp"

int main() {
  using psk::CheckResult;
  std::vector<CheckResult> results;
  const auto run = [&](int index, const char* title, CheckResult r) {
    std::printf("[%2d/12] %s %s: %s (%.1f s)\n", index,
                r.pass ? "PASS" : "FAIL", title, r.details.c_str(), r.seconds);
    std::fflush(stdout);
    results.push_back(std::move(r));
  };

  run(1, "exact-sparse recovery", psk::check_exact_sparse_recovery(100));
  run(2, "l2/l2 guarantee", psk::check_l2l2_guarantee(100));
  run(3, "rows and column sparsity", psk::check_rows_and_columns());
  run(4, "decode-time linearity", psk::check_decode_time_scaling());
  run(5, "peeling bound", psk::check_peeling_bound(10000));
  run(6, "spreadness expectation", psk::check_spreadness_expectation(1000));
  run(7, "component structure", psk::check_component_structure(100));
  run(8, "peeler correctness oracle", psk::check_peeler_oracle(1000, 100, 20));
  run(9, "point-estimator decay", psk::check_cs_decay(10000));
  run(10, "code contract", psk::check_code_contract(10000));
  run(11, "tail sandwich", psk::check_tail_sandwich(200));
  run(12, "peelable-edge recovery", psk::check_recover_vs_peeling(100));

  int failures = 0;
  for (const auto& r : results) failures += r.pass ? 0 : 1;
  std::printf("ACCEPTANCE: %d/12 criteria passed\n",
              static_cast<int>(results.size()) - failures);
  return failures;
}
