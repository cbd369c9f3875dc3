#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "densewalk/density.hpp"
#include "densewalk/graph.hpp"

namespace densewalk {

enum class StartStrategy { uniform_random, dense_top_k, density_weighted };

struct WalkStrategy {
  StartStrategy kind = StartStrategy::uniform_random;
  // dense_top_k: size of the initializer set; 0 means max(10, ceil(0.1 n)).
  std::size_t k = 0;
  double random_mix_frac = 0.0;
  // density_weighted: softmax temperature over scores.
  double temperature = 1.0;
};

struct WalkConfig {
  int walk_length = 2;  // steps; a stored walk has walk_length + 1 vertices
  std::size_t batch_size = 13;
  std::size_t num_batches = 100;
  WalkStrategy strategy;
  std::uint64_t seed = 0;
};

// Fixed-length walk collection, flat-packed. Walks produced by sample_walks
// respect the source graph's adjacency; generated (surrogate) walks need not.
struct WalkSet {
  int walk_length = 0;
  VertexId n = 0;  // vertex id domain
  std::uint64_t seed = 0;
  std::uint64_t graph_fingerprint = 0;
  std::vector<VertexId> flat;

  std::size_t size() const {
    return walk_length >= 0 ? flat.size() / (walk_length + 1) : 0;
  }
  std::span<const VertexId> walk(std::size_t idx) const {
    const std::size_t len = walk_length + 1;
    return {flat.data() + idx * len, len};
  }
  void append(std::span<const VertexId> w) {
    flat.insert(flat.end(), w.begin(), w.end());
  }
};

// batch_size * num_batches walks. Start vertices are drawn per strategy over
// vertices of degree >= 1 (zero-degree starts are never emitted); dense
// strategies require a ranking. Walk w draws from the stream derived as
// (seed, "walk", w), so output is independent of thread count. Throws
// DataError on an edgeless graph or when no eligible start exists.
WalkSet sample_walks(const Graph& g, const WalkConfig& cfg,
                     const DensityRanking* ranking = nullptr);

// count walks all starting at vertex v (degree >= 1 required).
WalkSet sample_walks_from(const Graph& g, VertexId v, std::size_t count,
                          int walk_length, std::uint64_t seed);

// Empirical Shannon entropy (natural log) of the distribution over distinct
// full walk sequences. Throws DataError on an empty set.
double walk_entropy(const WalkSet& walks);

// One walk per line, ids space-separated, preceded by the header line
// "#walkset l=<l> n=<n> seed=<seed>".
void export_walks(const WalkSet& walks, const std::string& path);

// Reads a walk file (header optional; '#' lines ignored); every consecutive
// pair must be an edge of g and all walks must share one length. Errors cite
// the offending line number.
WalkSet import_walks(const std::string& path, const Graph& g);

}  // namespace densewalk
