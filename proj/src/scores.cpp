#include "densewalk/scores.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "densewalk/error.hpp"
#include "densewalk/rng.hpp"

namespace densewalk {

double ScoreMatrix::get(VertexId u, VertexId v) const {
  const auto it = counts.find(key(u, v));
  return it == counts.end() ? 0.0 : it->second;
}

std::vector<std::tuple<VertexId, VertexId, double>> ScoreMatrix::nonzero()
    const {
  std::vector<std::tuple<VertexId, VertexId, double>> out;
  out.reserve(counts.size());
  for (const auto& [k, c] : counts) {
    if (c <= 0.0) continue;
    out.emplace_back(static_cast<VertexId>(k >> 32),
                     static_cast<VertexId>(k & 0xffffffffu), c);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) < std::get<0>(b)
                                            : std::get<1>(a) < std::get<1>(b);
  });
  return out;
}

ScoreMatrix assemble_scores(const WalkSet& walks, VertexId n) {
  if (walks.size() == 0)
    throw DataError("assemble_scores: empty walk set");
  ScoreMatrix scores;
  scores.n = n;
  const std::size_t len = static_cast<std::size_t>(walks.walk_length) + 1;
  for (std::size_t w = 0; w < walks.size(); ++w) {
    const VertexId* row = walks.flat.data() + w * len;
    for (std::size_t s = 0; s + 1 < len; ++s) {
      const VertexId a = row[s], b = row[s + 1];
      if (a >= n || b >= n)
        throw DataError("assemble_scores: walk vertex id out of range");
      if (a == b) {
        ++scores.discarded_self_steps;
        continue;
      }
      scores.counts[ScoreMatrix::key(a, b)] += 1.0;
      ++scores.total_transitions;
    }
  }
  return scores;
}

void save_scores(const ScoreMatrix& scores, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "u,v,count\n";
  char buf[96];
  for (const auto& [u, v, c] : scores.nonzero()) {
    std::snprintf(buf, sizeof(buf), "%u,%u,%.17g\n", u, v, c);
    out << buf;
  }
}

ScoreMatrix load_scores(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("u,v,", 0) != 0)
    throw DataError(path + ": missing 'u,v,count' header");
  ScoreMatrix scores;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::uint64_t u, v;
    double c;
    if (!(ls >> u >> v >> c))
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": expected 'u,v,count'");
    if (u == v)
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": diagonal entries are not allowed");
    scores.n = std::max({scores.n, static_cast<VertexId>(u + 1),
                         static_cast<VertexId>(v + 1)});
    scores.counts[ScoreMatrix::key(static_cast<VertexId>(u),
                                   static_cast<VertexId>(v))] += c;
    scores.total_transitions += static_cast<std::size_t>(c);
  }
  if (scores.counts.empty()) throw DataError(path + ": no score rows");
  return scores;
}

AssembledGraph assemble_graph(const ScoreMatrix& scores,
                              std::size_t target_edges, AssembleMode mode,
                              std::uint64_t seed) {
  if (scores.n < 2)
    throw DataError("assemble_graph: score matrix needs >= 2 vertices");
  auto entries = scores.nonzero();
  AssembledGraph out;
  out.requested_edges = target_edges;
  const std::size_t take = std::min(target_edges, entries.size());
  out.shortfall = take < target_edges;

  std::vector<std::size_t> picked;
  picked.reserve(take);
  if (mode == AssembleMode::top_k) {
    std::vector<std::size_t> order(entries.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      const double ca = std::get<2>(entries[a]), cb = std::get<2>(entries[b]);
      if (ca != cb) return ca > cb;
      return a < b;  // entries are (u, v)-sorted already
    });
    picked.assign(order.begin(), order.begin() + take);
  } else {
    // Weighted sampling without replacement (exponential-key method): the k
    // smallest values of -ln(U)/w are distributed as successive weighted
    // draws.
    Rng rng = derive_rng(seed, "assemble");
    std::vector<std::pair<double, std::size_t>> keys;
    keys.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const double u = rng.next_double_pos();
      keys.emplace_back(-std::log(u) / std::get<2>(entries[i]), i);
    }
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < take; ++i) picked.push_back(keys[i].second);
    std::sort(picked.begin(), picked.end());
  }

  std::vector<Edge> edges;
  edges.reserve(take);
  for (std::size_t idx : picked)
    edges.push_back({std::get<0>(entries[idx]), std::get<1>(entries[idx]), 1.0});
  out.graph = Graph(scores.n, std::move(edges));
  return out;
}

}  // namespace densewalk
