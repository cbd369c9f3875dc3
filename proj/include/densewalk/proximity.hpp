#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "densewalk/graph.hpp"

namespace densewalk {

// Row-stochastic transition matrix P[i][j] = w_ij / weighted_degree(i),
// CSR with columns ascending. Isolated vertices keep an all-zero row.
struct TransitionMatrix {
  VertexId n = 0;
  std::vector<std::size_t> offsets;
  std::vector<VertexId> cols;
  std::vector<double> probs;

  std::span<const VertexId> row_cols(VertexId i) const {
    return {cols.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  std::span<const double> row_probs(VertexId i) const {
    return {probs.data() + offsets[i], offsets[i + 1] - offsets[i]};
  }
  double row_sum(VertexId i) const;
};

TransitionMatrix transition_matrix(const Graph& g);

enum class ProximityOrigin { exact, monte_carlo };

// Restart-discounted walk proximity truncated at horizon l:
// R[i][m] = sum_{eta=0..l} (P^eta)[i][m] * c * (1-c)^eta.
// Sparse rows (columns ascending, exact zeros dropped). Row sums never exceed
// 1-(1-c)^(l+1); the diagonal is at least c.
struct ProximityMatrix {
  VertexId n = 0;
  int l = 0;
  double c = 0.15;
  ProximityOrigin origin = ProximityOrigin::exact;
  std::uint64_t seed = 0;            // Monte-Carlo runs only
  std::size_t walks_per_vertex = 0;  // Monte-Carlo runs only
  std::vector<std::size_t> offsets;
  std::vector<VertexId> cols;
  std::vector<double> values;

  double at(VertexId i, VertexId m) const;
  double row_sum(VertexId i) const;
  // Least upper bound on any row sum: 1 - (1-c)^(l+1).
  double series_bound() const;
};

struct ProximityParams {
  int l = 3;
  double c = 0.15;
  // Guard against runaway horizons; raise deliberately if a longer series is
  // really wanted.
  int max_l = 16;
  // proximity_exact materializes n sparse rows; above this many vertices use
  // density_scores_streaming instead of holding the matrix.
  VertexId max_materialize_n = 5000;
};

// Exact truncated series via per-source vector propagation (never a dense
// matrix power). Cost O(n * l * nnz(P)) time, O(n) workspace per thread.
ProximityMatrix proximity_exact(const TransitionMatrix& P,
                                const ProximityParams& params);

// One exact row of the series, written into caller-owned workspace so large
// graphs can stream rows without materializing the matrix. acc must be
// zero-filled on entry; on return acc[m] holds R[source][m] for every m in
// touched and the caller is responsible for re-zeroing those slots. cur,
// next, and frontier are scratch (any contents, sized n / n / any).
void proximity_row_exact(const TransitionMatrix& P, VertexId source, int l,
                         double c, std::vector<double>& acc,
                         std::vector<VertexId>& touched,
                         std::vector<double>& cur, std::vector<double>& next,
                         std::vector<VertexId>& frontier);

// Unbiased estimator: walks_per_vertex fixed-length-l walks per source; a
// visit to m at step eta contributes c*(1-c)^eta (step 0 credits the
// diagonal). Each source vertex draws from its own derived stream, so results
// do not depend on the parallel schedule.
ProximityMatrix proximity_monte_carlo(const TransitionMatrix& P,
                                      const ProximityParams& params,
                                      std::size_t walks_per_vertex,
                                      std::uint64_t seed);

// "i m value" triplet lines, row-major.
void save_proximity(const ProximityMatrix& R, const std::string& path);

}  // namespace densewalk
