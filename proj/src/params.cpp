#include "peelsketch/params.hpp"

#include <cmath>
#include <stdexcept>

#include "peelsketch/constants.hpp"

namespace psk {

Params Params::make(std::uint64_t n, std::uint64_t k, double eps,
                    const std::string& profile, std::uint64_t seed, double c) {
  Params p;
  p.n = n;
  p.k = k;
  p.eps = eps;
  p.c = c;
  p.seed = seed;
  p.profile = profile;
  const std::uint64_t lg = ceil_log2(n);
  if (profile == "paper") {
    p.bucket_mult = 524288.0;  // 2^19
    p.cs_rows = 10 * lg;
    p.cs_buckets = static_cast<std::uint64_t>(std::ceil(8192.0 * c * k / eps));
    p.code_len = 2048 * lg;
    p.tail_reps = 8 * lg;
    p.rho = 2048.0;
  } else if (profile == "practical") {
    p.bucket_mult = 16.0;
    p.cs_rows = 4 * lg;
    p.cs_buckets = static_cast<std::uint64_t>(std::ceil(32.0 * c * k / eps));
    p.code_len = 32 * lg;
    p.tail_reps = 8 * lg;
    p.rho = 512.0;
  } else {
    throw std::invalid_argument("unknown profile: " + profile);
  }
  if (p.cs_buckets < 2) p.cs_buckets = 2;
  p.tail_scale = constants::kTailQueryScale;
  p.validate();
  return p;
}

std::uint64_t Params::buckets() const {
  const long double raw = static_cast<long double>(bucket_mult) * c * k / eps;
  auto b = static_cast<std::uint64_t>(ceill(raw));
  return b < h ? h : b;
}

std::uint64_t Params::ck() const {
  auto v = static_cast<std::uint64_t>(std::floor(c * static_cast<double>(k)));
  if (v < k) v = k;
  if (v > n) v = n;
  return v;
}

void Params::validate() const {
  if (n == 0) throw std::invalid_argument("params: n must be positive");
  if (k == 0 || k > n) throw std::invalid_argument("params: need 1 <= k <= n");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("params: eps must lie in (0,1)");
  if (c < 1.0) throw std::invalid_argument("params: c must be >= 1");
  if (rho < 1.0) throw std::invalid_argument("params: rho must be >= 1");
  if (h < 2) throw std::invalid_argument("params: h must be >= 2");
  if (bucket_mult <= 0.0)
    throw std::invalid_argument("params: bucket_mult must be positive");
  if (buckets() < h)
    throw std::invalid_argument("params: bucket count must be >= h");
  if (cs_rows == 0) throw std::invalid_argument("params: cs_rows must be positive");
  if (cs_buckets < 2)
    throw std::invalid_argument("params: cs_buckets must be >= 2");
  if (code_len == 0 || code_len % 2 != 0)
    throw std::invalid_argument("params: code_len must be positive and even");
  if (code_len < log2n())
    throw std::invalid_argument("params: code_len must cover ceil(log2 n) bits");
  if (tail_reps == 0)
    throw std::invalid_argument("params: tail_reps must be positive");
  if (tail_scale <= 0.0)
    throw std::invalid_argument("params: tail_scale must be positive");
}

void to_json(nlohmann::json& j, const Params& p) {
  j = nlohmann::json{{"n", p.n},
                     {"k", p.k},
                     {"eps", p.eps},
                     {"c", p.c},
                     {"rho", p.rho},
                     {"h", p.h},
                     {"bucket_mult", p.bucket_mult},
                     {"cs_rows", p.cs_rows},
                     {"cs_buckets", p.cs_buckets},
                     {"code_len", p.code_len},
                     {"tail_reps", p.tail_reps},
                     {"tail_scale", p.tail_scale},
                     {"seed", p.seed},
                     {"profile", p.profile}};
}

void from_json(const nlohmann::json& j, Params& p) {
  j.at("n").get_to(p.n);
  j.at("k").get_to(p.k);
  j.at("eps").get_to(p.eps);
  j.at("c").get_to(p.c);
  j.at("rho").get_to(p.rho);
  j.at("h").get_to(p.h);
  j.at("bucket_mult").get_to(p.bucket_mult);
  j.at("cs_rows").get_to(p.cs_rows);
  j.at("cs_buckets").get_to(p.cs_buckets);
  j.at("code_len").get_to(p.code_len);
  j.at("tail_reps").get_to(p.tail_reps);
  j.at("tail_scale").get_to(p.tail_scale);
  j.at("seed").get_to(p.seed);
  j.at("profile").get_to(p.profile);
  p.validate();
}

}  // namespace psk
