#include "peelsketch/bucket_sketch.hpp"

#include <stdexcept>

namespace psk {

BucketSketch::BucketSketch(HashPlan plan,
                           std::shared_ptr<const BalancedCode> code)
    : plan_(plan), code_(std::move(code)) {
  if (!code_) throw std::invalid_argument("bucket sketch: missing code");
  if (plan_.sign_functions != code_->length())
    throw std::invalid_argument(
        "bucket sketch: sign function count must equal code length");
  cells_.assign(plan_.buckets * code_->length(), 0.0);
}

void BucketSketch::update(std::uint64_t i, double delta) {
  if (delta == 0.0) return;
  const std::uint64_t L = code_->length();
  thread_local BitVec cw;
  thread_local std::vector<std::uint32_t> buckets;
  code_->encode_into(i, cw);
  plan_.edge_into(i, buckets);
  for (std::uint32_t v : buckets) {
    double* q = cells_.data() + static_cast<std::uint64_t>(v) * L;
    // iterate set bits of the codeword, signs fetched a word at a time
    for (std::uint64_t w = 0; w < cw.words.size(); ++w) {
      std::uint64_t bitsw = cw.words[w];
      if (!bitsw) continue;
      const std::uint64_t signs = plan_.sign_word(i, w);
      while (bitsw) {
        const auto bit = static_cast<std::uint64_t>(std::countr_zero(bitsw));
        bitsw &= bitsw - 1;
        q[(w << 6) + bit] += ((signs >> bit) & 1u) ? delta : -delta;
      }
    }
  }
}

void BucketSketch::measure(const DenseVector& x) {
  if (plan_.buckets == 0)
    throw std::invalid_argument("bucket sketch: empty plan");
  for (std::uint64_t i = 0; i < x.size(); ++i) update(i, x[i]);
}

std::vector<double> BucketSketch::residual(
    std::uint32_t v, const std::map<std::uint64_t, double>& recovered,
    std::uint64_t n) const {
  const std::uint64_t L = code_->length();
  std::vector<double> p(row(v), row(v) + L);
  BitVec cw;
  std::vector<std::uint32_t> scratch;
  for (const auto& [i, est] : recovered) {
    if (i >= n) throw std::invalid_argument("residual: index out of range");
    if (!plan_.edge_contains(i, v, scratch)) continue;
    code_->encode_into(i, cw);
    for (std::uint64_t j = 0; j < L; ++j)
      if (cw.get(j)) p[j] -= plan_.sign(j, i) * est;
  }
  return p;
}

}  // namespace psk
