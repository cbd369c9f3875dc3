#include "densewalk/edge_split.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "densewalk/error.hpp"
#include "densewalk/rng.hpp"

namespace densewalk {

namespace {

struct UnionFind {
  std::vector<VertexId> parent;
  explicit UnionFind(VertexId n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  VertexId find(VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(VertexId a, VertexId b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

std::uint64_t pair_key(VertexId u, VertexId v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

}  // namespace

EdgeSplit split_edges(const Graph& g, double val_frac, double test_frac,
                      std::uint64_t seed) {
  if (!(val_frac >= 0.0 && val_frac < 0.5))
    throw DataError("split_edges: val_frac must lie in [0, 0.5)");
  if (!(test_frac >= 0.0 && test_frac < 0.5))
    throw DataError("split_edges: test_frac must lie in [0, 0.5)");
  if (!g.connected())
    throw DataError("split_edges: input graph is not connected");
  const std::size_t m = g.num_edges();
  const VertexId n = g.num_vertices();

  // Random spanning tree: Kruskal over a shuffled edge order. Held-out edges
  // come only from outside the tree, so the train graph stays connected no
  // matter which subset is removed.
  std::vector<std::size_t> edge_order(m);
  std::iota(edge_order.begin(), edge_order.end(), 0);
  {
    Rng rng = derive_rng(seed, "spanning-tree");
    rng.shuffle(edge_order);
  }
  std::vector<char> in_tree(m, 0);
  UnionFind uf(n);
  for (std::size_t idx : edge_order)
    if (uf.unite(g.edges()[idx].u, g.edges()[idx].v)) in_tree[idx] = 1;

  std::vector<std::size_t> removable;
  for (std::size_t i = 0; i < m; ++i)
    if (!in_tree[i]) removable.push_back(i);
  {
    Rng rng = derive_rng(seed, "holdout");
    rng.shuffle(removable);
  }

  EdgeSplit split;
  split.seed = seed;
  split.val_frac = val_frac;
  split.test_frac = test_frac;
  const std::size_t want_val = static_cast<std::size_t>(val_frac * m);
  const std::size_t want_test = static_cast<std::size_t>(test_frac * m);

  std::size_t cursor = 0;
  std::vector<char> removed(m, 0);
  auto take = [&](std::size_t want, std::vector<Edge>& out) {
    while (out.size() < want && cursor < removable.size()) {
      const std::size_t idx = removable[cursor++];
      removed[idx] = 1;
      out.push_back(g.edges()[idx]);
    }
    return want - out.size();
  };
  split.val_shortfall = take(want_val, split.val_edges);
  split.test_shortfall = take(want_test, split.test_edges);

  std::vector<Edge> train_edges;
  train_edges.reserve(m - split.val_edges.size() - split.test_edges.size());
  for (std::size_t i = 0; i < m; ++i)
    if (!removed[i]) train_edges.push_back(g.edges()[i]);
  split.train = Graph(n, std::move(train_edges));

  // One nonedge per held-out edge, all distinct, absent from the original
  // graph. Enumerate the complement when it is small relative to the demand,
  // otherwise rejection-sample.
  const std::size_t need =
      split.val_edges.size() + split.test_edges.size();
  const std::size_t all_pairs =
      static_cast<std::size_t>(n) * (n - 1) / 2;
  if (all_pairs - m < need)
    throw DataError("split_edges: insufficient nonedges (" +
                    std::to_string(all_pairs - m) + " available, " +
                    std::to_string(need) + " required)");
  std::vector<VertexPair> nonedges;
  if (need > 0) {
    Rng rng = derive_rng(seed, "nonedges");
    if (all_pairs < 4 * need + 64 || n <= 2048) {
      std::vector<VertexPair> complement;
      complement.reserve(all_pairs - m);
      for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
          if (!g.has_edge(u, v)) complement.push_back({u, v});
      rng.shuffle(complement);
      nonedges.assign(complement.begin(), complement.begin() + need);
    } else {
      std::unordered_set<std::uint64_t> chosen;
      while (nonedges.size() < need) {
        const auto u = static_cast<VertexId>(rng.bounded(n));
        const auto v = static_cast<VertexId>(rng.bounded(n));
        if (u == v || g.has_edge(u, v)) continue;
        if (!chosen.insert(pair_key(u, v)).second) continue;
        nonedges.push_back({std::min(u, v), std::max(u, v)});
      }
    }
  }
  split.val_nonedges.assign(nonedges.begin(),
                            nonedges.begin() + split.val_edges.size());
  split.test_nonedges.assign(nonedges.begin() + split.val_edges.size(),
                             nonedges.end());
  return split;
}

namespace {

void write_edge_file(const std::vector<Edge>& edges, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  char buf[96];
  for (const auto& e : edges) {
    if (e.weight == 1.0)
      std::snprintf(buf, sizeof(buf), "%u %u\n", e.u, e.v);
    else
      std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", e.u, e.v, e.weight);
    out << buf;
  }
}

void write_pair_file(const std::vector<VertexPair>& pairs,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (const auto& [u, v] : pairs) out << u << ' ' << v << '\n';
}

std::vector<Edge> read_edge_file(const std::string& path, VertexId n) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::uint64_t u, v;
    double w = 1.0;
    if (!(ls >> u >> v))
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": expected 'u v [w]'");
    ls >> w;
    if (u >= n || v >= n)
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": vertex id out of range");
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  return edges;
}

std::vector<VertexPair> read_pair_file(const std::string& path, VertexId n) {
  auto edges = read_edge_file(path, n);
  std::vector<VertexPair> pairs;
  pairs.reserve(edges.size());
  for (const auto& e : edges) pairs.push_back({e.u, e.v});
  return pairs;
}

}  // namespace

void save_split(const EdgeSplit& split, const std::string& dir,
                std::span<const std::int64_t> original_ids) {
  std::filesystem::create_directories(dir);
  const auto path = [&dir](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };
  write_edge_file(split.train.edges(), path("train.edges"));
  write_edge_file(split.val_edges, path("val.edges"));
  write_edge_file(split.test_edges, path("test.edges"));
  write_pair_file(split.val_nonedges, path("val.nonedges"));
  write_pair_file(split.test_nonedges, path("test.nonedges"));

  nlohmann::json meta;
  meta["num_vertices"] = split.train.num_vertices();
  meta["seed"] = split.seed;
  meta["val_frac"] = split.val_frac;
  meta["test_frac"] = split.test_frac;
  meta["val_shortfall"] = split.val_shortfall;
  meta["test_shortfall"] = split.test_shortfall;
  if (!original_ids.empty())
    meta["original_ids"] =
        std::vector<std::int64_t>(original_ids.begin(), original_ids.end());
  std::ofstream out(path("meta.json"));
  if (!out) throw DataError("cannot write " + path("meta.json"));
  out << meta.dump(2) << '\n';
}

EdgeSplit load_split(const std::string& dir) {
  const auto path = [&dir](const char* name) {
    return (std::filesystem::path(dir) / name).string();
  };
  std::ifstream meta_in(path("meta.json"));
  if (!meta_in) throw DataError("cannot open " + path("meta.json"));
  nlohmann::json meta;
  try {
    meta_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path("meta.json") + ": " + e.what());
  }
  EdgeSplit split;
  const VertexId n = meta.at("num_vertices").get<VertexId>();
  split.seed = meta.value("seed", std::uint64_t{0});
  split.val_frac = meta.value("val_frac", 0.0);
  split.test_frac = meta.value("test_frac", 0.0);
  split.val_shortfall = meta.value("val_shortfall", std::size_t{0});
  split.test_shortfall = meta.value("test_shortfall", std::size_t{0});
  split.train = Graph(n, read_edge_file(path("train.edges"), n));
  split.val_edges = read_edge_file(path("val.edges"), n);
  split.test_edges = read_edge_file(path("test.edges"), n);
  split.val_nonedges = read_pair_file(path("val.nonedges"), n);
  split.test_nonedges = read_pair_file(path("test.nonedges"), n);
  return split;
}

}  // namespace densewalk
