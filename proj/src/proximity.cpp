#include "densewalk/proximity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "densewalk/error.hpp"
#include "densewalk/parallel.hpp"
#include "densewalk/rng.hpp"

namespace densewalk {

double TransitionMatrix::row_sum(VertexId i) const {
  const auto p = row_probs(i);
  return std::accumulate(p.begin(), p.end(), 0.0);
}

TransitionMatrix transition_matrix(const Graph& g) {
  TransitionMatrix P;
  P.n = g.num_vertices();
  P.offsets.assign(P.n + 1, 0);
  for (VertexId v = 0; v < P.n; ++v)
    P.offsets[v + 1] = P.offsets[v] + g.degree(v);
  P.cols.resize(P.offsets.back());
  P.probs.resize(P.offsets.back());
  for (VertexId v = 0; v < P.n; ++v) {
    const auto nbrs = g.neighbors(v);
    const auto wts = g.neighbor_weights(v);
    const double total = g.weighted_degree(v);
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      P.cols[P.offsets[v] + k] = nbrs[k];
      P.probs[P.offsets[v] + k] = wts[k] / total;
    }
  }
  return P;
}

double ProximityMatrix::at(VertexId i, VertexId m) const {
  const auto begin = cols.begin() + static_cast<std::ptrdiff_t>(offsets[i]);
  const auto end = cols.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]);
  const auto it = std::lower_bound(begin, end, m);
  if (it == end || *it != m) return 0.0;
  return values[static_cast<std::size_t>(it - cols.begin())];
}

double ProximityMatrix::row_sum(VertexId i) const {
  return std::accumulate(values.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                         values.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]),
                         0.0);
}

double ProximityMatrix::series_bound() const {
  return 1.0 - std::pow(1.0 - c, l + 1);
}

namespace {

void validate_params(const TransitionMatrix& P, const ProximityParams& params) {
  if (params.l < 0) throw DataError("proximity: horizon l must be >= 0");
  if (params.l > params.max_l)
    throw DataError("proximity: horizon " + std::to_string(params.l) +
                    " exceeds max_l " + std::to_string(params.max_l));
  if (!(params.c > 0.0 && params.c < 1.0))
    throw DataError("proximity: restart weight c must lie in (0, 1)");
  if (P.n == 0) throw DataError("proximity: empty transition matrix");
}

// Dense accumulator row -> sorted sparse row, dropping exact zeros.
void compress_row(const std::vector<double>& dense,
                  const std::vector<VertexId>& touched,
                  std::vector<VertexId>& out_cols,
                  std::vector<double>& out_vals) {
  out_cols.assign(touched.begin(), touched.end());
  std::sort(out_cols.begin(), out_cols.end());
  out_cols.erase(std::unique(out_cols.begin(), out_cols.end()),
                 out_cols.end());
  out_vals.clear();
  out_vals.reserve(out_cols.size());
  for (VertexId m : out_cols) out_vals.push_back(dense[m]);
}

ProximityMatrix assemble(VertexId n,
                         std::vector<std::vector<VertexId>>& row_cols,
                         std::vector<std::vector<double>>& row_vals) {
  ProximityMatrix R;
  R.n = n;
  R.offsets.assign(n + 1, 0);
  for (VertexId i = 0; i < n; ++i)
    R.offsets[i + 1] = R.offsets[i] + row_cols[i].size();
  R.cols.reserve(R.offsets.back());
  R.values.reserve(R.offsets.back());
  for (VertexId i = 0; i < n; ++i) {
    R.cols.insert(R.cols.end(), row_cols[i].begin(), row_cols[i].end());
    R.values.insert(R.values.end(), row_vals[i].begin(), row_vals[i].end());
    row_cols[i].clear();
    row_cols[i].shrink_to_fit();
    row_vals[i].clear();
    row_vals[i].shrink_to_fit();
  }
  return R;
}

}  // namespace

void proximity_row_exact(const TransitionMatrix& P, VertexId source, int l,
                         double c, std::vector<double>& acc,
                         std::vector<VertexId>& touched,
                         std::vector<double>& cur, std::vector<double>& next,
                         std::vector<VertexId>& frontier) {
  // acc must be zero-filled on entry; touched collects every column that
  // received mass so the caller can reset acc cheaply.
  touched.clear();
  std::fill(cur.begin(), cur.end(), 0.0);
  cur[source] = 1.0;
  frontier.assign(1, source);
  double weight = c;  // c * (1-c)^eta
  for (int eta = 0;; ++eta) {
    for (VertexId m : frontier) {
      if (acc[m] == 0.0) touched.push_back(m);
      acc[m] += weight * cur[m];
    }
    if (eta == l) break;
    weight *= 1.0 - c;
    std::fill(next.begin(), next.end(), 0.0);
    std::vector<VertexId> next_frontier;
    for (VertexId m : frontier) {
      const double mass = cur[m];
      const auto cols = P.row_cols(m);
      const auto probs = P.row_probs(m);
      for (std::size_t k = 0; k < cols.size(); ++k) {
        if (next[cols[k]] == 0.0) next_frontier.push_back(cols[k]);
        next[cols[k]] += mass * probs[k];
      }
    }
    cur.swap(next);
    frontier.swap(next_frontier);
    if (frontier.empty()) break;  // walk died at an isolated vertex
  }
}

ProximityMatrix proximity_exact(const TransitionMatrix& P,
                                const ProximityParams& params) {
  validate_params(P, params);
  if (P.n > params.max_materialize_n)
    throw DataError(
        "proximity_exact: " + std::to_string(P.n) +
        " vertices exceeds max_materialize_n " +
        std::to_string(params.max_materialize_n) +
        "; use the streaming density path for graphs this large");
  const VertexId n = P.n;
  std::vector<std::vector<VertexId>> row_cols(n);
  std::vector<std::vector<double>> row_vals(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> acc(n, 0.0), cur(n), next(n);
    std::vector<VertexId> touched, frontier;
    for (std::size_t i = begin; i < end; ++i) {
      const auto src = static_cast<VertexId>(i);
      proximity_row_exact(P, src, params.l, params.c, acc, touched, cur, next,
                          frontier);
      compress_row(acc, touched, row_cols[i], row_vals[i]);
      for (VertexId m : touched) acc[m] = 0.0;
    }
  });
  ProximityMatrix R = assemble(n, row_cols, row_vals);
  R.l = params.l;
  R.c = params.c;
  R.origin = ProximityOrigin::exact;
  return R;
}

ProximityMatrix proximity_monte_carlo(const TransitionMatrix& P,
                                      const ProximityParams& params,
                                      std::size_t walks_per_vertex,
                                      std::uint64_t seed) {
  validate_params(P, params);
  if (walks_per_vertex == 0)
    throw DataError("proximity_monte_carlo: walks_per_vertex must be >= 1");
  const VertexId n = P.n;
  // Rows with all-equal probabilities (every unweighted graph) take a single
  // bounded draw instead of a cumulative scan.
  std::vector<char> uniform_row(n, 1);
  for (VertexId v = 0; v < n; ++v) {
    const auto probs = P.row_probs(v);
    for (double p : probs)
      if (p != probs[0]) {
        uniform_row[v] = 0;
        break;
      }
  }
  std::vector<std::vector<VertexId>> row_cols(n);
  std::vector<std::vector<double>> row_vals(n);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> acc(n, 0.0);
    std::vector<VertexId> touched;
    for (std::size_t i = begin; i < end; ++i) {
      const auto src = static_cast<VertexId>(i);
      Rng rng = derive_rng(seed, "proximity-mc", src);
      touched.clear();
      const double per_walk = 1.0 / static_cast<double>(walks_per_vertex);
      for (std::size_t w = 0; w < walks_per_vertex; ++w) {
        VertexId at = src;
        double weight = params.c * per_walk;
        for (int eta = 0;; ++eta) {
          if (acc[at] == 0.0) touched.push_back(at);
          acc[at] += weight;
          if (eta == params.l) break;
          const auto cols = P.row_cols(at);
          if (cols.empty()) break;  // dead end: later steps contribute nothing
          if (uniform_row[at]) {
            at = cols[rng.bounded(cols.size())];
          } else {
            const auto probs = P.row_probs(at);
            double u = rng.next_double();
            std::size_t pick = cols.size() - 1;
            for (std::size_t k = 0; k + 1 < cols.size(); ++k) {
              u -= probs[k];
              if (u < 0.0) {
                pick = k;
                break;
              }
            }
            at = cols[pick];
          }
          weight *= 1.0 - params.c;
        }
      }
      compress_row(acc, touched, row_cols[i], row_vals[i]);
      for (VertexId m : touched) acc[m] = 0.0;
    }
  });
  ProximityMatrix R = assemble(n, row_cols, row_vals);
  R.l = params.l;
  R.c = params.c;
  R.origin = ProximityOrigin::monte_carlo;
  R.seed = seed;
  R.walks_per_vertex = walks_per_vertex;
  return R;
}

void save_proximity(const ProximityMatrix& R, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  char buf[96];
  for (VertexId i = 0; i < R.n; ++i)
    for (std::size_t k = R.offsets[i]; k < R.offsets[i + 1]; ++k) {
      std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", i, R.cols[k],
                    R.values[k]);
      out << buf;
    }
}

}  // namespace densewalk
