#include "peelsketch/signal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "peelsketch/rng.hpp"

namespace psk {

void to_json(nlohmann::json& j, const SignalSpec& s) {
  j = nlohmann::json{{"model", s.model},          {"heads", s.heads},
                     {"head_snr", s.head_snr},    {"zipf_exponent", s.zipf_exponent},
                     {"value_lo", s.value_lo},    {"value_hi", s.value_hi}};
}

void from_json(const nlohmann::json& j, SignalSpec& s) {
  s.model = j.value("model", s.model);
  s.heads = j.value("heads", s.heads);
  s.head_snr = j.value("head_snr", s.head_snr);
  s.zipf_exponent = j.value("zipf_exponent", s.zipf_exponent);
  s.value_lo = j.value("value_lo", s.value_lo);
  s.value_hi = j.value("value_hi", s.value_hi);
}

namespace {

std::vector<std::uint64_t> distinct_positions(std::uint64_t n,
                                              std::uint64_t count, Rng& rng) {
  if (count > n)
    throw std::invalid_argument("signal: more heads than coordinates");
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::uint64_t> out;
  while (out.size() < count) {
    const std::uint64_t i = rng.next_below(n);
    if (seen.insert(i).second) out.push_back(i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

Signal gen_signal(const Params& p, const SignalSpec& spec, std::uint64_t seed) {
  Signal sig;
  sig.x.assign(p.n, 0.0);
  Rng rng(seed, tag_of(StreamTag::signal));
  const std::uint64_t heads = spec.heads == 0 ? p.k : spec.heads;

  if (spec.model == "exact_sparse") {
    sig.planted = distinct_positions(p.n, heads, rng);
    for (const std::uint64_t i : sig.planted) {
      const double mag =
          spec.value_lo + (spec.value_hi - spec.value_lo) * rng.next_unit();
      sig.x[i] = rng.next_bool() ? mag : -mag;
    }
  } else if (spec.model == "sparse_plus_gaussian") {
    sig.planted = distinct_positions(p.n, heads, rng);
    std::unordered_set<std::uint64_t> head_set(sig.planted.begin(),
                                               sig.planted.end());
    double tail_energy = 0.0;
    for (std::uint64_t i = 0; i < p.n; ++i) {
      if (head_set.count(i)) continue;
      sig.x[i] = rng.next_gaussian();
      tail_energy += sig.x[i] * sig.x[i];
    }
    // normalize the gaussian tail to unit energy
    if (tail_energy > 0.0) {
      const double inv = 1.0 / std::sqrt(tail_energy);
      for (std::uint64_t i = 0; i < p.n; ++i)
        if (!head_set.count(i)) sig.x[i] *= inv;
    }
    // head energy: head_snr * (eps/k) * (1+u)^2 relative to the unit tail
    const double base = std::sqrt(spec.head_snr * p.eps /
                                  static_cast<double>(p.k));
    for (const std::uint64_t i : sig.planted) {
      const double mag = base * (1.0 + rng.next_unit());
      sig.x[i] = rng.next_bool() ? mag : -mag;
    }
  } else if (spec.model == "zipf") {
    // magnitudes rank^(-a) over a random permutation, random signs
    std::vector<std::uint64_t> perm(p.n);
    for (std::uint64_t i = 0; i < p.n; ++i) perm[i] = i;
    rng.shuffle(perm);
    for (std::uint64_t rank = 0; rank < p.n; ++rank) {
      const double mag =
          std::pow(static_cast<double>(rank + 1), -spec.zipf_exponent);
      sig.x[perm[rank]] = rng.next_bool() ? mag : -mag;
    }
    sig.planted.assign(perm.begin(),
                       perm.begin() + std::min<std::uint64_t>(heads, p.n));
    std::sort(sig.planted.begin(), sig.planted.end());
  } else {
    throw std::invalid_argument("unknown signal model: " + spec.model);
  }
  return sig;
}

}  // namespace psk
