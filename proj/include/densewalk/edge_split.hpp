#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "densewalk/graph.hpp"

namespace densewalk {

using VertexPair = std::pair<VertexId, VertexId>;

// Link-prediction split of a connected graph. Held-out edges are drawn only
// from edges outside one uniformly chosen spanning tree, so the train graph
// stays connected. Nonedge lists are disjoint samples of pairs absent from
// the original graph, one per held-out edge.
struct EdgeSplit {
  Graph train;
  std::vector<Edge> val_edges;
  std::vector<Edge> test_edges;
  std::vector<VertexPair> val_nonedges;
  std::vector<VertexPair> test_nonedges;
  std::uint64_t seed = 0;
  double val_frac = 0.0;
  double test_frac = 0.0;
  // How many requested removals could not be satisfied while keeping the
  // spanning tree intact (validation is filled before test).
  std::size_t val_shortfall = 0;
  std::size_t test_shortfall = 0;
};

// Removes floor(val_frac*|E|) + floor(test_frac*|E|) edges. Fractions must
// lie in [0, 0.5); the input must be connected. Throws DataError when the
// complement graph cannot supply one nonedge per held-out edge.
EdgeSplit split_edges(const Graph& g, double val_frac, double test_frac,
                      std::uint64_t seed);

// Directory layout: train.edges, val.edges, test.edges, val.nonedges,
// test.nonedges, meta.json. original_ids, when given, is persisted in
// meta.json so downstream results can be mapped back to input labels.
void save_split(const EdgeSplit& split, const std::string& dir,
                std::span<const std::int64_t> original_ids = {});
EdgeSplit load_split(const std::string& dir);

}  // namespace densewalk
