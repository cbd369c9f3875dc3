#include "densewalk/graphgen.hpp"

#include "densewalk/error.hpp"
#include "densewalk/rng.hpp"

namespace densewalk {

Graph path_graph(VertexId n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph cycle_graph(VertexId n) {
  if (n < 3) throw DataError("cycle_graph needs n >= 3");
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1.0});
  edges.push_back({0, n - 1, 1.0});
  return Graph(n, std::move(edges));
}

Graph star_graph(VertexId leaves) {
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= leaves; ++v) edges.push_back({0, v, 1.0});
  return Graph(leaves + 1, std::move(edges));
}

Graph complete_graph(VertexId n) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  return Graph(n, std::move(edges));
}

Graph barbell_graph(VertexId clique, VertexId path_len) {
  if (clique < 2) throw DataError("barbell_graph needs clique >= 2");
  const VertexId n = 2 * clique + path_len;
  std::vector<Edge> edges;
  auto add_clique = [&edges](VertexId base, VertexId size) {
    for (VertexId i = 0; i < size; ++i)
      for (VertexId j = i + 1; j < size; ++j)
        edges.push_back({base + i, base + j, 1.0});
  };
  add_clique(0, clique);
  add_clique(clique + path_len, clique);
  // Chain from the last vertex of block A through the path to the first
  // vertex of block B.
  VertexId prev = clique - 1;
  for (VertexId i = 0; i < path_len; ++i) {
    edges.push_back({prev, clique + i, 1.0});
    prev = clique + i;
  }
  edges.push_back({prev, clique + path_len, 1.0});
  return Graph(n, std::move(edges));
}

Graph erdos_renyi(VertexId n, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) throw DataError("erdos_renyi: p outside [0, 1]");
  Rng rng = derive_rng(seed, "gnp");
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v)
      if (rng.next_double() < p) edges.push_back({u, v, 1.0});
  return Graph(n, std::move(edges));
}

Graph planted_partition(VertexId n, unsigned blocks, double p_in, double p_out,
                        std::uint64_t seed) {
  if (blocks == 0) throw DataError("planted_partition: blocks must be >= 1");
  if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0)
    throw DataError("planted_partition: probabilities outside [0, 1]");
  Rng rng = derive_rng(seed, "planted");
  auto block_of = [&](VertexId v) {
    return static_cast<unsigned>((static_cast<std::uint64_t>(v) * blocks) / n);
  };
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) {
      const double p = block_of(u) == block_of(v) ? p_in : p_out;
      if (rng.next_double() < p) edges.push_back({u, v, 1.0});
    }
  return Graph(n, std::move(edges));
}

}  // namespace densewalk
