#pragma once

#include <cstdint>

#include "densewalk/graph.hpp"

namespace densewalk {

// Deterministic graph constructors used by the demos and the test corpora.

Graph path_graph(VertexId n);
Graph cycle_graph(VertexId n);
// Hub vertex 0 plus `leaves` degree-1 vertices.
Graph star_graph(VertexId leaves);
Graph complete_graph(VertexId n);
// Two K_clique blocks joined through a chain of path_len extra vertices:
// block A = [0, clique), chain = [clique, clique+path_len), block B after it.
Graph barbell_graph(VertexId clique, VertexId path_len);
// G(n, p); pair inclusion decided by the derived stream of `seed`.
Graph erdos_renyi(VertexId n, double p, std::uint64_t seed);
// Balanced blocks; within-block pairs kept with p_in, others with p_out.
Graph planted_partition(VertexId n, unsigned blocks, double p_in, double p_out,
                        std::uint64_t seed);

}  // namespace densewalk
