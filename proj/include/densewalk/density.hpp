#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "densewalk/proximity.hpp"

namespace densewalk {

// Gaussian-kernel influence of a proximity value: 1 - exp(-d / (2 sigma^2)).
// sigma must be positive; result lies in [0, 1) for d >= 0.
double influence(double distance, double sigma);

// Vertex ranking by aggregate influence score
//   scores[i] = sum_{m != i} influence(R[i][m], sigma),
// i.e. each vertex is scored over its own outgoing proximity row with the
// diagonal excluded. Scores lie in [0, n]; isolated vertices score 0.
struct DensityRanking {
  std::vector<double> scores;   // indexed by vertex id
  std::vector<VertexId> order;  // all vertices; ties broken by ascending id
  bool descending = true;       // true: order[0] has the highest score
  double sigma = 1.0;
  int l = 0;
  double c = 0.15;
  ProximityOrigin origin = ProximityOrigin::exact;
  std::uint64_t seed = 0;
  std::size_t walks_per_vertex = 0;
};

DensityRanking density_scores(const ProximityMatrix& R, double sigma,
                              bool descending = true);

// Same scores as proximity_exact + density_scores but one row at a time, so
// no O(n^2) matrix is ever held. Intended for graphs past
// ProximityParams::max_materialize_n.
DensityRanking density_scores_streaming(const TransitionMatrix& P,
                                        const ProximityParams& params,
                                        double sigma, bool descending = true);

// Mean positive off-diagonal proximity entry; the "auto" sigma policy.
// Throws DataError when the matrix has no positive off-diagonal entry.
double auto_sigma(const ProximityMatrix& R);

// Top ceil((1-random_mix_frac)*k) vertices of the ranking order plus
// uniformly drawn non-members to reach k; returned ascending. k <= n,
// random_mix_frac in [0, 1].
std::vector<VertexId> select_initializers(const DensityRanking& ranking,
                                          std::size_t k,
                                          double random_mix_frac,
                                          std::uint64_t seed);

// CSV "vertex_id,score,rank" (rank 1 = first in order) plus a JSON sidecar
// holding the scoring parameters.
void save_ranking(const DensityRanking& ranking, const std::string& csv_path,
                  const std::string& json_path);
DensityRanking load_ranking(const std::string& csv_path,
                            const std::string& json_path);

}  // namespace densewalk
