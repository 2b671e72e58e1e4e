#include "peelsketch/peeling.hpp"

#include <cmath>
#include <deque>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace psk {

WeightedHypergraph WeightedHypergraph::empty(std::uint32_t n, unsigned h) {
  if (h < 2) throw std::invalid_argument("hypergraph: arity must be >= 2");
  WeightedHypergraph g;
  g.num_vertices = n;
  g.arity = h;
  g.vertex_weights.assign(n, 0.0);
  return g;
}

void WeightedHypergraph::add_edge(const std::vector<std::uint32_t>& vertices,
                                  double weight) {
  if (vertices.size() != arity)
    throw std::invalid_argument("hypergraph: edge arity mismatch");
  for (std::size_t a = 0; a < vertices.size(); ++a) {
    if (vertices[a] >= num_vertices)
      throw std::invalid_argument("hypergraph: vertex out of range");
    for (std::size_t b = a + 1; b < vertices.size(); ++b)
      if (vertices[a] == vertices[b])
        throw std::invalid_argument("hypergraph: repeated vertex in edge");
  }
  if (!(weight >= 0.0) || !std::isfinite(weight))
    throw std::invalid_argument("hypergraph: edge weight must be finite >= 0");
  edge_vertices.insert(edge_vertices.end(), vertices.begin(), vertices.end());
  edge_weights.push_back(weight);
}

void WeightedHypergraph::validate() const {
  if (vertex_weights.size() != num_vertices)
    throw std::invalid_argument("hypergraph: vertex weight size mismatch");
  for (double w : vertex_weights)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw std::invalid_argument("hypergraph: vertex weight must be finite >= 0");
  if (edge_vertices.size() != num_edges() * arity)
    throw std::invalid_argument("hypergraph: edge storage size mismatch");
}

Incidence::Incidence(const WeightedHypergraph& g) : edges_at(g.num_vertices) {
  for (std::uint64_t e = 0; e < g.num_edges(); ++e)
    for (unsigned a = 0; a < g.arity; ++a)
      edges_at[g.edge(e)[a]].push_back(static_cast<std::uint32_t>(e));
}

std::vector<std::uint32_t> PeelingResult::survivors() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t e = 0; e < peeled.size(); ++e)
    if (!peeled[e]) out.push_back(e);
  return out;
}

namespace {

// freeness of e given the current per-vertex alive incident weight sums
bool free_with_sums(const WeightedHypergraph& g,
                    const std::vector<double>& vertex_sums, std::uint64_t e,
                    double rho) {
  const double we = g.edge_weights[e];
  for (unsigned a = 0; a < g.arity; ++a) {
    const std::uint32_t v = g.edge(e)[a];
    const double other = g.vertex_weights[v] + (vertex_sums[v] - we);
    if (we >= rho * other) return true;
  }
  return false;
}

}  // namespace

bool is_free(const WeightedHypergraph& g, const Incidence& inc, std::uint64_t e,
             double rho) {
  const double we = g.edge_weights[e];
  for (unsigned a = 0; a < g.arity; ++a) {
    const std::uint32_t v = g.edge(e)[a];
    double other = g.vertex_weights[v];
    for (std::uint32_t e2 : inc.edges_at[v])
      if (e2 != e) other += g.edge_weights[e2];
    if (we >= rho * other) return true;
  }
  return false;
}

bool is_free(const WeightedHypergraph& g, std::uint64_t e, double rho) {
  Incidence inc(g);
  return is_free(g, inc, e, rho);
}

PeelingResult peel(const WeightedHypergraph& g, double rho,
                   std::optional<std::uint64_t> order_seed) {
  const std::uint64_t m = g.num_edges();
  Incidence inc(g);
  std::vector<double> vertex_sums(g.num_vertices, 0.0);
  for (std::uint64_t e = 0; e < m; ++e)
    for (unsigned a = 0; a < g.arity; ++a)
      vertex_sums[g.edge(e)[a]] += g.edge_weights[e];

  PeelingResult result;
  result.peeled.assign(m, 0);
  std::vector<std::uint8_t> queued(m, 0);
  std::vector<std::uint32_t> worklist;
  for (std::uint64_t e = 0; e < m; ++e) {
    if (free_with_sums(g, vertex_sums, e, rho)) {
      queued[e] = 1;
      worklist.push_back(static_cast<std::uint32_t>(e));
    }
  }

  std::optional<Rng> rng;
  if (order_seed) rng.emplace(*order_seed, tag_of(StreamTag::trial));

  std::size_t head = 0;
  while (head < worklist.size()) {
    if (rng) {
      // random processing order: swap a random pending entry to the front
      const std::size_t pick =
          head + static_cast<std::size_t>(rng->next_below(worklist.size() - head));
      std::swap(worklist[head], worklist[pick]);
    }
    const std::uint32_t e = worklist[head++];
    // freeness is monotone under removals, no recheck needed
    result.peeled[e] = 1;
    result.sequence.push_back(e);
    for (unsigned a = 0; a < g.arity; ++a) {
      const std::uint32_t v = g.edge(e)[a];
      vertex_sums[v] -= g.edge_weights[e];
      for (std::uint32_t e2 : inc.edges_at[v]) {
        if (result.peeled[e2] || queued[e2]) continue;
        if (free_with_sums(g, vertex_sums, e2, rho)) {
          queued[e2] = 1;
          worklist.push_back(e2);
        }
      }
    }
  }
  result.peeled_count = result.sequence.size();
  return result;
}

namespace {

// edge-BFS levels: level 1 = edges sharing a vertex with e, etc.
// d(e, e') = level - 1
std::vector<std::uint32_t> edge_bfs_order(const WeightedHypergraph& g,
                                          const Incidence& inc, std::uint64_t e,
                                          std::vector<std::uint32_t>& level) {
  level.assign(g.num_edges(), UINT32_MAX);
  std::vector<std::uint32_t> order;
  std::deque<std::uint32_t> frontier;
  level[e] = 0;
  frontier.push_back(static_cast<std::uint32_t>(e));
  order.push_back(static_cast<std::uint32_t>(e));
  while (!frontier.empty()) {
    const std::uint32_t cur = frontier.front();
    frontier.pop_front();
    for (unsigned a = 0; a < g.arity; ++a) {
      for (std::uint32_t e2 : inc.edges_at[g.edge(cur)[a]]) {
        if (level[e2] != UINT32_MAX) continue;
        level[e2] = level[cur] + 1;
        frontier.push_back(e2);
        order.push_back(e2);
      }
    }
  }
  return order;
}

}  // namespace

double spreadness(const WeightedHypergraph& g, const Incidence& inc,
                  std::uint64_t e, double rho) {
  std::vector<std::uint32_t> level;
  const auto component = edge_bfs_order(g, inc, e, level);
  double total = 0.0;
  for (std::uint32_t e2 : component) {
    // self term rho^(1+0); an edge at BFS level l has d(e,e') = l - 1
    const double expo = level[e2] == 0 ? 1.0 : static_cast<double>(level[e2]);
    total += std::pow(rho, expo);
  }
  return total;
}

double spreadness(const WeightedHypergraph& g, std::uint64_t e, double rho) {
  Incidence inc(g);
  return spreadness(g, inc, e, rho);
}

namespace {

// vertices and edges of the connected component containing e
void component_counts(const WeightedHypergraph& g, const Incidence& inc,
                      std::uint64_t e, std::uint64_t& vertices,
                      std::uint64_t& edges,
                      const std::optional<std::uint64_t>& skip_edge,
                      std::optional<std::uint32_t> start_vertex) {
  std::vector<std::uint8_t> vseen(g.num_vertices, 0);
  std::vector<std::uint8_t> eseen(g.num_edges(), 0);
  std::deque<std::uint32_t> frontier;  // vertices
  auto push_vertex = [&](std::uint32_t v) {
    if (!vseen[v]) {
      vseen[v] = 1;
      frontier.push_back(v);
    }
  };
  if (start_vertex) {
    push_vertex(*start_vertex);
  } else {
    eseen[e] = 1;
    for (unsigned a = 0; a < g.arity; ++a) push_vertex(g.edge(e)[a]);
  }
  vertices = 0;
  edges = start_vertex ? 0 : 1;
  while (!frontier.empty()) {
    const std::uint32_t v = frontier.front();
    frontier.pop_front();
    ++vertices;
    for (std::uint32_t e2 : inc.edges_at[v]) {
      if (eseen[e2]) continue;
      if (skip_edge && e2 == *skip_edge) continue;
      eseen[e2] = 1;
      ++edges;
      for (unsigned a = 0; a < g.arity; ++a) push_vertex(g.edge(e2)[a]);
    }
  }
}

ComponentClass classify_counts(std::uint64_t vertices, std::uint64_t edges,
                               unsigned h) {
  const std::uint64_t tree_nodes = (h - 1) * edges + 1;
  if (vertices == tree_nodes) return ComponentClass::hypertree;
  if (edges > 0 && vertices == tree_nodes - 1) return ComponentClass::unicyclic;
  return ComponentClass::complex_structure;
}

}  // namespace

ComponentClass classify_component(const WeightedHypergraph& g,
                                  const Incidence& inc, std::uint64_t e) {
  std::uint64_t vertices = 0, edges = 0;
  component_counts(g, inc, e, vertices, edges, std::nullopt, std::nullopt);
  return classify_counts(vertices, edges, g.arity);
}

ComponentClass classify_component(const WeightedHypergraph& g, std::uint64_t e) {
  Incidence inc(g);
  return classify_component(g, inc, e);
}

std::vector<ComponentClass> edge_component_classes(const WeightedHypergraph& g) {
  Incidence inc(g);
  std::vector<ComponentClass> out(g.num_edges(),
                                  ComponentClass::complex_structure);
  std::vector<std::uint8_t> done(g.num_edges(), 0);
  std::vector<std::uint8_t> vseen(g.num_vertices, 0);
  std::vector<std::uint32_t> touched, level;
  for (std::uint64_t e = 0; e < g.num_edges(); ++e) {
    if (done[e]) continue;
    const auto component = edge_bfs_order(g, inc, e, level);
    touched.clear();
    for (std::uint32_t e2 : component) {
      for (unsigned a = 0; a < g.arity; ++a) {
        const std::uint32_t v = g.edge(e2)[a];
        if (!vseen[v]) {
          vseen[v] = 1;
          touched.push_back(v);
        }
      }
    }
    const ComponentClass cls =
        classify_counts(touched.size(), component.size(), g.arity);
    for (std::uint32_t e2 : component) {
      out[e2] = cls;
      done[e2] = 1;
    }
    for (std::uint32_t v : touched) vseen[v] = 0;
  }
  return out;
}

std::uint32_t unicyclic_break(const WeightedHypergraph& g, std::uint64_t e) {
  Incidence inc(g);
  if (classify_component(g, inc, e) != ComponentClass::unicyclic)
    throw std::invalid_argument("unicyclic_break: component is not unicyclic");
  for (unsigned a = 0; a < g.arity; ++a) {
    const std::uint32_t v = g.edge(e)[a];
    std::uint64_t vertices = 0, edges = 0;
    component_counts(g, inc, e, vertices, edges, e, v);
    if (classify_counts(vertices, edges, g.arity) == ComponentClass::hypertree)
      return v;
  }
  throw std::logic_error("unicyclic_break: no breaking vertex found");
}

WeightedHypergraph random_hypergraph(std::uint32_t n, std::uint64_t m,
                                     unsigned h, std::uint64_t seed) {
  if (n < h) throw std::invalid_argument("random_hypergraph: need n >= h");
  WeightedHypergraph g = WeightedHypergraph::empty(n, h);
  Rng rng(seed, tag_of(StreamTag::edge));
  std::vector<std::uint32_t> edge(h);
  for (std::uint64_t e = 0; e < m; ++e) {
    std::size_t filled = 0;
    while (filled < h) {
      const auto v = static_cast<std::uint32_t>(rng.next_below(n));
      bool fresh = true;
      for (std::size_t a = 0; a < filled; ++a)
        if (edge[a] == v) fresh = false;
      if (fresh) edge[filled++] = v;
    }
    g.add_edge(edge, 1.0);
  }
  return g;
}

VertexWeightSampler exponential_weights(double mu) {
  VertexWeightSampler s;
  s.declared_mu = mu;
  s.fill = [mu](Rng& rng, std::vector<double>& w) {
    for (double& v : w) v = rng.next_exponential(mu);
  };
  return s;
}

VertexWeightSampler correlated_exponential_weights(double mu) {
  VertexWeightSampler s;
  s.declared_mu = mu;
  s.fill = [mu](Rng& rng, std::vector<double>& w) {
    const double shared = rng.next_exponential(1.0);
    for (double& v : w) v = 0.5 * mu * (shared + rng.next_exponential(1.0));
  };
  return s;
}

bool NonPeelableReport::all_within_bound() const {
  for (const auto& e : edges)
    if (!e.within_bound()) return false;
  return true;
}

NonPeelableReport mc_nonpeelable(const WeightedHypergraph& g,
                                 const VertexWeightSampler& sampler,
                                 double rho, std::uint64_t trials,
                                 std::uint64_t seed) {
  if (sampler.declared_mu <= 0.0 || !sampler.fill)
    throw std::invalid_argument("mc_nonpeelable: bad sampler configuration");
  const std::uint64_t m = g.num_edges();
  Incidence inc(g);

  NonPeelableReport report;
  report.trials = trials;
  report.edges.resize(m);
  for (std::uint64_t e = 0; e < m; ++e) {
    report.edges[e].excluded =
        classify_component(g, inc, e) == ComponentClass::complex_structure;
    const double d = spreadness(g, inc, e, rho);
    const double we = g.edge_weights[e];
    report.edges[e].bound =
        we > 0.0 ? sampler.declared_mu * d / we
                 : std::numeric_limits<double>::infinity();
  }

  WeightedHypergraph work = g;
  std::vector<std::uint64_t> fail_count(m, 0);
  double trial_mean_sum = 0.0, trial_mean_sq_sum = 0.0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(seed, tag_of(StreamTag::trial) + t);
    sampler.fill(rng, work.vertex_weights);
    double sum = 0.0;
    for (double w : work.vertex_weights) sum += w;
    const double mean = sum / static_cast<double>(work.vertex_weights.size());
    trial_mean_sum += mean;
    trial_mean_sq_sum += mean * mean;
    const PeelingResult res = peel(work, rho);
    for (std::uint64_t e = 0; e < m; ++e)
      if (!res.is_peeled(e)) ++fail_count[e];
  }

  // configuration guard: the empirical weight mean must not exceed the
  // declared mu beyond sampling noise. Per-trial means are independent even
  // when the weights within a trial are not.
  if (trials > 1 && g.num_vertices > 0) {
    const double mean = trial_mean_sum / static_cast<double>(trials);
    const double var =
        trial_mean_sq_sum / static_cast<double>(trials) - mean * mean;
    const double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(trials));
    if (mean > sampler.declared_mu + 5.0 * se)
      throw std::invalid_argument(
          "mc_nonpeelable: sampler mean exceeds declared mu");
  }

  for (std::uint64_t e = 0; e < m; ++e) {
    auto& stat = report.edges[e];
    stat.frequency =
        static_cast<double>(fail_count[e]) / static_cast<double>(trials);
    const double b = std::min(stat.bound, 1.0);
    stat.sigma = std::sqrt(b * (1.0 - b) / static_cast<double>(trials));
  }
  return report;
}

void write_graph(const WeightedHypergraph& g, const std::string& path) {
  std::ofstream f(path, std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for write: " + path);
  f << g.num_vertices << ' ' << g.num_edges() << ' ' << g.arity << '\n';
  f.precision(17);
  for (std::uint64_t e = 0; e < g.num_edges(); ++e) {
    for (unsigned a = 0; a < g.arity; ++a) f << g.edge(e)[a] << ' ';
    f << g.edge_weights[e] << '\n';
  }
  for (std::uint32_t v = 0; v < g.num_vertices; ++v)
    f << g.vertex_weights[v] << '\n';
  if (!f) throw std::runtime_error("write failed: " + path);
}

WeightedHypergraph read_graph(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::uint32_t n = 0;
  std::uint64_t m = 0;
  unsigned h = 0;
  if (!(f >> n >> m >> h))
    throw std::runtime_error("bad graph header in " + path);
  WeightedHypergraph g = WeightedHypergraph::empty(n, h);
  std::vector<std::uint32_t> edge(h);
  for (std::uint64_t e = 0; e < m; ++e) {
    for (unsigned a = 0; a < h; ++a)
      if (!(f >> edge[a]))
        throw std::runtime_error("truncated edge list in " + path);
    double w = 0.0;
    if (!(f >> w)) throw std::runtime_error("missing edge weight in " + path);
    g.add_edge(edge, w);
  }
  for (std::uint32_t v = 0; v < n; ++v)
    if (!(f >> g.vertex_weights[v]))
      throw std::runtime_error("missing vertex weights in " + path);
  g.validate();
  return g;
}

}  // namespace psk
