#pragma once

// Shared test fixtures and independent reference implementations ("oracles").
// Each oracle recomputes a quantity by a different algorithm than the library
// uses, so a test that compares the two catches bugs in either formulation.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "densewalk/edge_split.hpp"
#include "densewalk/graph.hpp"
#include "densewalk/scores.hpp"

namespace testsupport {

using densewalk::Edge;
using densewalk::Graph;
using densewalk::VertexId;
using densewalk::VertexPair;

using Matrix = std::vector<std::vector<double>>;

inline Graph make_graph(VertexId n,
                        const std::vector<std::pair<VertexId, VertexId>>& pairs,
                        double weight = 1.0) {
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs)
    edges.push_back({std::min(u, v), std::max(u, v), weight});
  return Graph(n, std::move(edges));
}

// Row-stochastic transition matrix built straight from the adjacency list,
// bypassing the library's CSR representation.
inline Matrix dense_transition(const Graph& g) {
  const VertexId n = g.num_vertices();
  Matrix P(n, std::vector<double>(n, 0.0));
  for (VertexId u = 0; u < n; ++u) {
    const double total = g.weighted_degree(u);
    if (total <= 0.0) continue;
    const auto nbrs = g.neighbors(u);
    const auto w = g.neighbor_weights(u);
    for (std::size_t k = 0; k < nbrs.size(); ++k)
      P[u][nbrs[k]] = w[k] / total;
  }
  return P;
}

inline Matrix mat_mul(const Matrix& A, const Matrix& B) {
  const std::size_t n = A.size();
  Matrix C(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const double a = A[i][k];
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) C[i][j] += a * B[k][j];
    }
  return C;
}

// Truncated restart-discounted proximity by exhaustive enumeration of the
// walk probability tree: every path of length <= l from the source deposits
// prob(path) * c * (1-c)^depth on its endpoint. Exponential in l; intended
// for the small fixtures only.
inline Matrix oracle_proximity(const Graph& g, int l, double c) {
  const VertexId n = g.num_vertices();
  const Matrix P = dense_transition(g);
  Matrix R(n, std::vector<double>(n, 0.0));
  for (VertexId src = 0; src < n; ++src) {
    auto& row = R[src];
    auto visit = [&](auto&& self, VertexId at, int depth, double prob) -> void {
      row[at] += prob * c * std::pow(1.0 - c, depth);
      if (depth == l) return;
      for (VertexId m = 0; m < n; ++m)
        if (P[at][m] > 0.0) self(self, m, depth + 1, prob * P[at][m]);
    };
    visit(visit, src, 0, 1.0);
  }
  return R;
}

// Exact first and second moments of the Monte-Carlo proximity estimator that
// averages walks_per_vertex independent fixed-length-l walks. A single walk
// contributes X(i,m) = sum_eta w_eta * [walk_i(eta) = m] with
// w_eta = c (1-c)^eta, so
//   E[X]   = sum_eta w_eta q_eta,                q_eta = (P^eta)[i][m]
//   E[X^2] = sum_eta w_eta^2 q_eta
//          + 2 sum_{eta<eta'} w_eta w_eta' q_eta (P^{eta'-eta})[m][m].
// sd_mean is the standard deviation of the walks_per_vertex-walk average.
struct McStats {
  Matrix mean;
  Matrix sd_mean;
};

inline McStats mc_entry_stats(const Graph& g, int l, double c,
                              std::size_t walks_per_vertex) {
  const VertexId n = g.num_vertices();
  const Matrix P = dense_transition(g);
  std::vector<Matrix> powers(static_cast<std::size_t>(l) + 1);
  powers[0] = Matrix(n, std::vector<double>(n, 0.0));
  for (VertexId i = 0; i < n; ++i) powers[0][i][i] = 1.0;
  for (int eta = 1; eta <= l; ++eta) powers[eta] = mat_mul(powers[eta - 1], P);

  std::vector<double> w(static_cast<std::size_t>(l) + 1);
  for (int eta = 0; eta <= l; ++eta) w[eta] = c * std::pow(1.0 - c, eta);

  McStats out;
  out.mean.assign(n, std::vector<double>(n, 0.0));
  out.sd_mean.assign(n, std::vector<double>(n, 0.0));
  for (VertexId i = 0; i < n; ++i)
    for (VertexId m = 0; m < n; ++m) {
      double mean = 0.0, second = 0.0;
      for (int eta = 0; eta <= l; ++eta) {
        const double q = powers[eta][i][m];
        mean += w[eta] * q;
        second += w[eta] * w[eta] * q;
        for (int later = eta + 1; later <= l; ++later)
          second += 2.0 * w[eta] * w[later] * q * powers[later - eta][m][m];
      }
      const double var = std::max(0.0, second - mean * mean);
      out.mean[i][m] = mean;
      out.sd_mean[i][m] =
          std::sqrt(var / static_cast<double>(walks_per_vertex));
    }
  return out;
}

// Brute-force Mann-Whitney statistic: every positive/negative pair compared
// directly, ties worth one half.
inline double naive_auc(const densewalk::ScoreMatrix& scores,
                        const std::vector<VertexPair>& positives,
                        const std::vector<VertexPair>& negatives) {
  double wins = 0.0;
  for (const auto& p : positives) {
    const double sp = scores.get(p.first, p.second);
    for (const auto& q : negatives) {
      const double sn = scores.get(q.first, q.second);
      if (sp > sn)
        wins += 1.0;
      else if (sp == sn)
        wins += 0.5;
    }
  }
  return wins / (static_cast<double>(positives.size()) *
                 static_cast<double>(negatives.size()));
}

// Average precision recomputed with an independently written sort and
// accumulation. Tie order (descending score, then ascending pair) must match
// the library so that exact equality is meaningful.
inline double naive_ap(const densewalk::ScoreMatrix& scores,
                       const std::vector<VertexPair>& positives,
                       const std::vector<VertexPair>& negatives) {
  struct Item {
    double score;
    VertexPair pair;
    bool positive;
  };
  std::vector<Item> items;
  items.reserve(positives.size() + negatives.size());
  for (const auto& p : positives)
    items.push_back({scores.get(p.first, p.second), p, true});
  for (const auto& p : negatives)
    items.push_back({scores.get(p.first, p.second), p, false});
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.pair < b.pair;
  });
  double ap = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (!items[i].positive) continue;
    ++hits;
    ap += static_cast<double>(hits) / static_cast<double>(i + 1);
  }
  return ap / static_cast<double>(positives.size());
}

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() /
                        "densewalk-test-XXXXXX")
                           .string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (!mkdtemp(buf.data()))
      throw std::runtime_error("mkdtemp failed for " + tmpl);
    path_ = buf.data();
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const {
    return (std::filesystem::path(path_) / name).string();
  }

 private:
  std::string path_;
};

// Runs fn, returning the what() of whatever std::exception it throws
// (empty string when it does not throw). Lets tests assert on message
// fragments such as cited line numbers.
template <typename Fn>
inline std::string error_message(Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

}  // namespace testsupport
