#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "peelsketch/rng.hpp"

namespace psk {

// Vertex- and edge-weighted h-uniform hypergraph. Multi-edges are permitted
// as distinct entries; vertices within an edge are distinct.
struct WeightedHypergraph {
  std::uint32_t num_vertices = 0;
  unsigned arity = 3;
  std::vector<double> vertex_weights;      // size num_vertices
  std::vector<std::uint32_t> edge_vertices;  // num_edges * arity, flat
  std::vector<double> edge_weights;        // size num_edges

  static WeightedHypergraph empty(std::uint32_t n, unsigned h);

  std::uint64_t num_edges() const { return edge_weights.size(); }
  const std::uint32_t* edge(std::uint64_t e) const {
    return edge_vertices.data() + e * arity;
  }
  void add_edge(const std::vector<std::uint32_t>& vertices, double weight);
  void validate() const;
};

// incidence lists, built once per analysis
struct Incidence {
  std::vector<std::vector<std::uint32_t>> edges_at;  // per vertex
  explicit Incidence(const WeightedHypergraph& g);
};

struct PeelingResult {
  std::vector<std::uint32_t> sequence;  // valid peeling order
  std::vector<std::uint8_t> peeled;     // flag per edge
  std::uint64_t peeled_count = 0;

  bool is_peeled(std::uint64_t e) const { return peeled[e] != 0; }
  std::vector<std::uint32_t> survivors() const;
};

// rho-free: some incident vertex carries at most w_e / rho of
// vertex-plus-other-edge weight
bool is_free(const WeightedHypergraph& g, const Incidence& inc,
             std::uint64_t e, double rho);
bool is_free(const WeightedHypergraph& g, std::uint64_t e, double rho);

// exhaustively removes free edges; order_seed shuffles the processing order
// (the peeled set is order-independent, which the tests assert)
PeelingResult peel(const WeightedHypergraph& g, double rho,
                   std::optional<std::uint64_t> order_seed = std::nullopt);

// D(e) = sum over edges e' in the component of e of rho^(1 + d(e, e')),
// where d is the vertex-path distance between edges (shared vertex: 0)
double spreadness(const WeightedHypergraph& g, const Incidence& inc,
                  std::uint64_t e, double rho);
double spreadness(const WeightedHypergraph& g, std::uint64_t e, double rho);

enum class ComponentClass { hypertree, unicyclic, complex_structure };

ComponentClass classify_component(const WeightedHypergraph& g,
                                  const Incidence& inc, std::uint64_t e);
ComponentClass classify_component(const WeightedHypergraph& g, std::uint64_t e);

// class of every edge's component, one BFS per component
std::vector<ComponentClass> edge_component_classes(const WeightedHypergraph& g);

// some vertex of e whose component after deleting e is a hypertree;
// requires C(e) unicyclic
std::uint32_t unicyclic_break(const WeightedHypergraph& g, std::uint64_t e);

// M i.i.d. uniform size-h edges (whole-edge repetition allowed), unit edge
// weights, zero vertex weights
WeightedHypergraph random_hypergraph(std::uint32_t n, std::uint64_t m,
                                     unsigned h, std::uint64_t seed);

// Monte Carlo check of the non-peelable probability bound mu * D(e) / w_e
// under random vertex weights. The sampler fills all vertex weights per
// trial (dependent weights allowed); declared_mu must bound their mean.
struct VertexWeightSampler {
  double declared_mu = 0.0;
  std::function<void(Rng&, std::vector<double>&)> fill;
};

VertexWeightSampler exponential_weights(double mu);
// dependent weights: w_v = mu/2 * (shared + own), both Exp(1)
VertexWeightSampler correlated_exponential_weights(double mu);

struct EdgeBoundStat {
  double frequency = 0.0;   // observed non-peelable frequency
  double bound = 0.0;       // mu * D(e) / w_e
  double sigma = 0.0;       // binomial deviation at the bound
  bool excluded = false;    // complex component, bound not asserted
  bool within_bound() const {
    return excluded || bound >= 1.0 || frequency <= bound + 3.0 * sigma;
  }
};

struct NonPeelableReport {
  std::vector<EdgeBoundStat> edges;
  std::uint64_t trials = 0;
  bool all_within_bound() const;
};

NonPeelableReport mc_nonpeelable(const WeightedHypergraph& g,
                                 const VertexWeightSampler& sampler,
                                 double rho, std::uint64_t trials,
                                 std::uint64_t seed);

// text format: "N M h" header, M lines of h vertex ids and an edge weight,
// then N vertex-weight lines
void write_graph(const WeightedHypergraph& g, const std::string& path);
WeightedHypergraph read_graph(const std::string& path);

}  // namespace psk
