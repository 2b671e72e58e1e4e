#include "peelsketch/sketch.hpp"

#include <cstring>
#include <fstream>
#include <stdexcept>

namespace psk {

SketchPlan::SketchPlan(const Params& p)
    : params_(p),
      hash_(p.seed, p.buckets(), p.h, p.code_len),
      code_(std::make_shared<BalancedCode>(p.n, p.code_len, p.seed)),
      tail_(p.n, p.k, p.tail_reps, p.seed),
      cs_{p.n, p.cs_rows, p.cs_buckets, p.seed} {
  params_.validate();
}

std::uint64_t SketchPlan::total_rows() const {
  return params_.tail_reps + params_.cs_rows * params_.cs_buckets +
         params_.buckets() * params_.code_len;
}

std::uint64_t SketchPlan::column_sparsity(std::uint64_t i) const {
  std::uint64_t touches = 0;
  for (std::uint64_t rep = 0; rep < params_.tail_reps; ++rep)
    touches += tail_.sampled(rep, i) ? 1 : 0;
  touches += params_.cs_rows;  // one cell per row
  const BitVec cw = code_->encode(i);
  touches += params_.h * cw.popcount();
  return touches;
}

std::uint64_t SketchPlan::max_column_sparsity() const {
  std::uint64_t best = 0;
  for (std::uint64_t i = 0; i < params_.n; ++i) {
    const std::uint64_t c = column_sparsity(i);
    if (c > best) best = c;
  }
  return best;
}

Sketch::Sketch(const Params& p)
    : plan_(p),
      tail_(p.n, p.k, p.tail_reps, p.seed, p.tail_scale),
      cs_(p.n, p.cs_rows, p.cs_buckets, p.seed),
      buckets_(plan_.hash(), plan_.code_ptr()) {}

void Sketch::measure(const DenseVector& x) {
  if (x.size() != params().n)
    throw std::invalid_argument("sketch: dimension mismatch");
  tail_.measure(x);
  cs_.measure(x);
  buckets_.measure(x);
}

void Sketch::update(std::uint64_t i, double delta) {
  if (i >= params().n)
    throw std::invalid_argument("sketch: index out of range");
  tail_.update(i, delta);
  cs_.update(i, delta);
  buckets_.update(i, delta);
}

namespace {

constexpr char kMagic[4] = {'P', 'S', 'K', 'S'};
constexpr std::uint32_t kVersion = 1;

enum SectionId : std::uint32_t {
  kSectionParams = 1,
  kSectionTail = 2,
  kSectionCs = 3,
  kSectionBuckets = 4,
};

struct SectionEntry {
  std::uint32_t id = 0;
  std::uint32_t reserved = 0;
  std::uint64_t offset = 0;
  std::uint64_t size = 0;
};

void write_raw(std::ofstream& f, const void* p, std::size_t bytes) {
  f.write(reinterpret_cast<const char*>(p),
          static_cast<std::streamsize>(bytes));
}

void read_raw(std::ifstream& f, void* p, std::size_t bytes) {
  f.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(bytes));
  if (!f) throw std::runtime_error("sketch file: truncated section");
}

}  // namespace

void Sketch::save(const std::string& path) const {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);

  const nlohmann::json pj = params();
  const std::string params_blob = pj.dump();

  SectionEntry table[4];
  table[0].id = kSectionParams;
  table[0].size = params_blob.size();
  table[1].id = kSectionTail;
  table[1].size = tail_.accumulators().size() * sizeof(double);
  table[2].id = kSectionCs;
  table[2].size = cs_.cells().size() * sizeof(double);
  table[3].id = kSectionBuckets;
  table[3].size = buckets_.cells().size() * sizeof(double);

  std::uint64_t offset = 4 + sizeof(std::uint32_t) * 2 + sizeof(table);
  for (auto& e : table) {
    e.offset = offset;
    offset += e.size;
  }

  write_raw(f, kMagic, 4);
  const std::uint32_t version = kVersion, count = 4;
  write_raw(f, &version, sizeof version);
  write_raw(f, &count, sizeof count);
  write_raw(f, table, sizeof table);
  write_raw(f, params_blob.data(), params_blob.size());
  write_raw(f, tail_.accumulators().data(), table[1].size);
  write_raw(f, cs_.cells().data(), table[2].size);
  write_raw(f, buckets_.cells().data(), table[3].size);
  if (!f) throw std::runtime_error("write failed: " + path);
}

Sketch Sketch::load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  char magic[4];
  std::uint32_t version = 0, count = 0;
  read_raw(f, magic, 4);
  read_raw(f, &version, sizeof version);
  read_raw(f, &count, sizeof count);
  if (std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not a PSKS file: " + path);
  if (version != kVersion)
    throw std::runtime_error("unsupported PSKS version in " + path);
  std::vector<SectionEntry> table(count);
  read_raw(f, table.data(), count * sizeof(SectionEntry));

  auto find = [&](std::uint32_t id) -> const SectionEntry& {
    for (const auto& e : table)
      if (e.id == id) return e;
    throw std::runtime_error("sketch file: missing section");
  };

  const SectionEntry& ps = find(kSectionParams);
  std::string blob(ps.size, '\0');
  f.seekg(static_cast<std::streamoff>(ps.offset));
  read_raw(f, blob.data(), blob.size());
  Params p = nlohmann::json::parse(blob).get<Params>();

  Sketch s(p);
  auto read_doubles = [&](std::uint32_t id, std::vector<double>& dst) {
    const SectionEntry& e = find(id);
    if (e.size != dst.size() * sizeof(double))
      throw std::runtime_error("sketch file: section size mismatch");
    f.seekg(static_cast<std::streamoff>(e.offset));
    read_raw(f, dst.data(), e.size);
  };
  read_doubles(kSectionTail, s.tail_.accumulators_mut());
  read_doubles(kSectionCs, s.cs_.cells_mut());
  read_doubles(kSectionBuckets, s.buckets_.cells_mut());
  return s;
}

}  // namespace psk
