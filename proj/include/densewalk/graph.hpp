#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace densewalk {

using VertexId = std::uint32_t;

struct Edge {
  VertexId u = 0;  // u < v always
  VertexId v = 0;
  double weight = 1.0;

  friend bool operator==(const Edge& a, const Edge& b) {
    return a.u == b.u && a.v == b.v && a.weight == b.weight;
  }
};

// Undirected weighted simple graph over vertex ids 0..n-1. No self-loops,
// no duplicate edges, weights strictly positive. Immutable after build;
// adjacency stored CSR-style with neighbor lists sorted ascending.
class Graph {
 public:
  Graph() = default;
  // Validates and normalizes the edge list (throws DataError on self-loops,
  // duplicates, out-of-range endpoints, or non-positive weights).
  Graph(VertexId num_vertices, std::vector<Edge> edges);

  VertexId num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  std::size_t degree(VertexId v) const;
  double weighted_degree(VertexId v) const;
  std::span<const VertexId> neighbors(VertexId v) const;
  std::span<const double> neighbor_weights(VertexId v) const;
  bool has_edge(VertexId u, VertexId v) const;
  // Edges sorted by (u, v).
  const std::vector<Edge>& edges() const { return edges_; }
  bool connected() const;
  // Stable 64-bit digest of (n, edges, weights); identifies the graph a
  // WalkSet was sampled from.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  void check_vertex(VertexId v) const;

  VertexId n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> adj_;
  std::vector<double> adj_weights_;
  std::vector<double> weighted_deg_;
};

struct LoadedGraph {
  Graph graph;
  // original_ids[new_id] = vertex label used in the input file.
  std::vector<std::int64_t> original_ids;
};

// Text edge list: one "u v" or "u v w" per line, whitespace separated,
// '#' starts a comment. Vertex labels are arbitrary non-negative integers
// and are compacted to 0..n-1 in ascending label order. Duplicate lines and
// reversed pairs collapse to one undirected edge keeping the first weight.
// directed_input only documents the source convention; an undirected edge is
// recorded for every pair seen in either direction regardless.
// Malformed lines, self-loops and non-positive weights raise DataError with
// the offending line number.
LoadedGraph load_edge_list(const std::string& path, bool directed_input = false);

// Canonical form: edges sorted by (u, v), weight omitted when exactly 1.
void save_edge_list(const Graph& g, const std::string& path);

struct ComponentResult {
  Graph graph;
  // original_ids[new_id] = id in the input graph.
  std::vector<VertexId> original_ids;
};

// Largest connected component, vertices relabeled 0..k-1 preserving relative
// order. Ties between equal-sized components go to the one containing the
// smallest original vertex id.
ComponentResult largest_connected_component(const Graph& g);

// |edges inside subset| / |subset|. Throws DataError on an empty subset or
// out-of-range / duplicate members.
double subgraph_density(const Graph& g, std::span<const VertexId> subset);

}  // namespace densewalk
