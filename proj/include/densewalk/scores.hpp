#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "densewalk/graph.hpp"
#include "densewalk/walks.hpp"

namespace densewalk {

// Symmetric transition-count matrix assembled from generated walks. The
// diagonal is identically zero: self-steps are discarded and tallied.
struct ScoreMatrix {
  VertexId n = 0;
  std::size_t total_transitions = 0;     // non-self steps counted
  std::size_t discarded_self_steps = 0;
  std::unordered_map<std::uint64_t, double> counts;  // key packs (u < v)

  static std::uint64_t key(VertexId u, VertexId v) {
    if (u > v) std::swap(u, v);
    return (static_cast<std::uint64_t>(u) << 32) | v;
  }
  double get(VertexId u, VertexId v) const;
  // Positive entries as (u, v, count) sorted by (u, v).
  std::vector<std::tuple<VertexId, VertexId, double>> nonzero() const;
};

// Every consecutive walk pair (a, b) increments the symmetric count of
// {a, b} by one. Walk entries must be < n.
ScoreMatrix assemble_scores(const WalkSet& walks, VertexId n);

// "u,v,count" CSV with a header row, pairs ascending.
void save_scores(const ScoreMatrix& scores, const std::string& path);
ScoreMatrix load_scores(const std::string& path);

enum class AssembleMode { top_k, sample };

struct AssembledGraph {
  Graph graph;
  std::size_t requested_edges = 0;
  // True when fewer than requested_edges pairs had positive counts.
  bool shortfall = false;
};

// top_k: highest counts first, ties by (u, v) ascending. sample: weighted
// draw without replacement, probability proportional to count. All emitted
// edges have weight 1.
AssembledGraph assemble_graph(const ScoreMatrix& scores,
                              std::size_t target_edges, AssembleMode mode,
                              std::uint64_t seed);

}  // namespace densewalk
