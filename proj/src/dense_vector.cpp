#include "peelsketch/dense_vector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace psk {

void SparseApprox::set(std::uint64_t i, double v) {
  if (v == 0.0) {
    entries.erase(i);
    return;
  }
  auto it = entries.find(i);
  if (it != entries.end()) {
    it->second = v;
    return;
  }
  if (entries.size() >= support_bound)
    throw std::invalid_argument("sparse approx: support bound exceeded");
  entries.emplace(i, v);
}

double SparseApprox::at(std::uint64_t i) const {
  auto it = entries.find(i);
  return it == entries.end() ? 0.0 : it->second;
}

void SparseApprox::validate(std::uint64_t n) const {
  if (entries.size() > support_bound)
    throw std::invalid_argument("sparse approx: support bound exceeded");
  for (const auto& [i, v] : entries) {
    if (i >= n) throw std::invalid_argument("sparse approx: index out of range");
    if (!std::isfinite(v))
      throw std::invalid_argument("sparse approx: non-finite value");
  }
}

namespace {

// total order: larger magnitude first, lower index wins ties
struct HeadOrder {
  const DenseVector& x;
  bool operator()(std::uint64_t a, std::uint64_t b) const {
    const double ma = std::fabs(x[a]), mb = std::fabs(x[b]);
    if (ma != mb) return ma > mb;
    return a < b;
  }
};

std::vector<std::uint64_t> head_indices(const DenseVector& x, std::uint64_t j) {
  std::vector<std::uint64_t> idx(x.size());
  std::iota(idx.begin(), idx.end(), 0);
  if (j > 0 && j < idx.size())
    std::nth_element(idx.begin(), idx.begin() + j - 1, idx.end(), HeadOrder{x});
  return idx;  // first j entries form the head (unsorted within)
}

}  // namespace

double tail_norm_sq(const DenseVector& x, std::uint64_t j) {
  if (j > x.size())
    throw std::invalid_argument("tail_norm_sq: j out of range");
  if (j == x.size()) return 0.0;
  auto idx = head_indices(x, j);
  double sum = 0.0;
  for (std::uint64_t t = j; t < idx.size(); ++t) sum += x[idx[t]] * x[idx[t]];
  return sum;
}

bool Classification::is_heavy(std::uint64_t i) const {
  return std::binary_search(heavy.begin(), heavy.end(), i);
}

bool Classification::is_top(std::uint64_t i) const {
  return std::binary_search(top.begin(), top.end(), i);
}

Classification classify(const DenseVector& x, const Params& p) {
  if (x.size() != p.n)
    throw std::invalid_argument("classify: vector length does not match n");
  Classification out;
  const std::uint64_t n = p.n;
  const std::uint64_t k = std::min<std::uint64_t>(p.k, n);
  const std::uint64_t ck = p.ck();

  auto idx = head_indices(x, k);
  out.top.assign(idx.begin(), idx.begin() + k);
  std::sort(out.top.begin(), out.top.end());
  double total = 0.0;
  for (double v : x) total += v * v;
  double head_k = 0.0;
  for (std::uint64_t t = 0; t < k; ++t) head_k += x[idx[t]] * x[idx[t]];
  out.tail_k = total - head_k;
  if (out.tail_k < 0.0) out.tail_k = 0.0;
  out.tail_ck = tail_norm_sq(x, ck);

  const double thr_heavy = (p.eps / static_cast<double>(p.k)) * out.tail_k;
  const double thr_inter =
      (p.eps / (4.0 * p.c * static_cast<double>(p.k))) * out.tail_ck;
  for (std::uint64_t i = 0; i < n; ++i) {
    const double e = x[i] * x[i];
    // at zero tail the threshold degenerates to 0; only actual support counts
    const bool heavy = out.tail_k > 0.0 ? e >= thr_heavy : e > 0.0;
    const bool inter = out.tail_ck > 0.0 ? e >= thr_inter : e > 0.0;
    if (heavy)
      out.heavy.push_back(i);
    else
      out.light.push_back(i);
    if (inter) out.intermediate.push_back(i);
  }
  return out;
}

ErrorRatio error_ratio(const DenseVector& x, const SparseApprox& xp,
                       std::uint64_t k) {
  xp.validate(x.size());
  double num = 0.0;
  auto it = xp.entries.begin();
  for (std::uint64_t i = 0; i < x.size(); ++i) {
    double v = x[i];
    if (it != xp.entries.end() && it->first == i) {
      v -= it->second;
      ++it;
    }
    num += v * v;
  }
  const double den = tail_norm_sq(x, k);
  ErrorRatio r;
  if (den == 0.0 && num == 0.0) {
    r.exact = true;
    r.value = 0.0;
  } else if (den == 0.0) {
    r.value = std::numeric_limits<double>::infinity();
  } else {
    r.value = num / den;
  }
  return r;
}

namespace {
constexpr char kVecMagic[4] = {'P', 'S', 'K', 'V'};
constexpr std::uint32_t kVecVersion = 1;
}  // namespace

void write_pskv(const DenseVector& x, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f.write(kVecMagic, 4);
  std::uint32_t version = kVecVersion;
  std::uint64_t n = x.size();
  f.write(reinterpret_cast<const char*>(&version), sizeof version);
  f.write(reinterpret_cast<const char*>(&n), sizeof n);
  f.write(reinterpret_cast<const char*>(x.data()),
          static_cast<std::streamsize>(x.size() * sizeof(double)));
  if (!f) throw std::runtime_error("write failed: " + path);
}

DenseVector read_pskv(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  char magic[4];
  std::uint32_t version = 0;
  std::uint64_t n = 0;
  f.read(magic, 4);
  f.read(reinterpret_cast<char*>(&version), sizeof version);
  f.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!f || std::memcmp(magic, kVecMagic, 4) != 0)
    throw std::runtime_error("not a PSKV file: " + path);
  if (version != kVecVersion)
    throw std::runtime_error("unsupported PSKV version in " + path);
  DenseVector x(n, 0.0);
  f.read(reinterpret_cast<char*>(x.data()),
         static_cast<std::streamsize>(n * sizeof(double)));
  if (!f) throw std::runtime_error("truncated PSKV file: " + path);
  return x;
}

void write_csv(const DenseVector& x, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  char buf[64];
  for (std::uint64_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    std::snprintf(buf, sizeof buf, "%llu,%.17g\n",
                  static_cast<unsigned long long>(i), x[i]);
    f << buf;
  }
  if (!f) throw std::runtime_error("write failed: " + path);
}

DenseVector read_csv(const std::string& path, std::uint64_t n) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  DenseVector x(n, 0.0);
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::runtime_error("bad csv line: " + line);
    const std::uint64_t i = std::stoull(line.substr(0, comma));
    if (i >= n) throw std::runtime_error("csv index out of range: " + line);
    x[i] = std::stod(line.substr(comma + 1));
  }
  return x;
}

}  // namespace psk
