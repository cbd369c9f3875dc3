#include "densewalk/graph.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "densewalk/error.hpp"

namespace densewalk {

Graph::Graph(VertexId num_vertices, std::vector<Edge> edges) : n_(num_vertices) {
  for (auto& e : edges) {
    if (e.u >= n_ || e.v >= n_)
      throw DataError("edge endpoint out of range: " + std::to_string(e.u) +
                      " " + std::to_string(e.v) + " with " +
                      std::to_string(n_) + " vertices");
    if (e.u == e.v)
      throw DataError("self-loop on vertex " + std::to_string(e.u));
    if (!(e.weight > 0.0))
      throw DataError("non-positive weight on edge " + std::to_string(e.u) +
                      " " + std::to_string(e.v));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges.size(); ++i)
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v)
      throw DataError("duplicate edge " + std::to_string(edges[i].u) + " " +
                      std::to_string(edges[i].v));
  edges_ = std::move(edges);

  std::vector<std::size_t> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  offsets_.assign(n_ + 1, 0);
  for (VertexId v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[v];
  adj_.resize(offsets_[n_]);
  adj_weights_.resize(offsets_[n_]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adj_[cursor[e.u]] = e.v;
    adj_weights_[cursor[e.u]++] = e.weight;
    adj_[cursor[e.v]] = e.u;
    adj_weights_[cursor[e.v]++] = e.weight;
  }
  // Neighbor lists must be ascending for binary search; insertion order from
  // the sorted edge list already sorts the v-side, so fix up both uniformly.
  for (VertexId v = 0; v < n_; ++v) {
    const auto begin = offsets_[v], end = offsets_[v + 1];
    std::vector<std::pair<VertexId, double>> row;
    row.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i)
      row.emplace_back(adj_[i], adj_weights_[i]);
    std::sort(row.begin(), row.end());
    for (std::size_t i = begin; i < end; ++i) {
      adj_[i] = row[i - begin].first;
      adj_weights_[i] = row[i - begin].second;
    }
  }
  weighted_deg_.assign(n_, 0.0);
  for (VertexId v = 0; v < n_; ++v) {
    double sum = 0.0;
    for (std::size_t i = offsets_[v]; i < offsets_[v + 1]; ++i)
      sum += adj_weights_[i];
    weighted_deg_[v] = sum;
  }
}

void Graph::check_vertex(VertexId v) const {
  if (v >= n_)
    throw DataError("vertex id " + std::to_string(v) + " out of range (n=" +
                    std::to_string(n_) + ")");
}

std::size_t Graph::degree(VertexId v) const {
  check_vertex(v);
  return offsets_[v + 1] - offsets_[v];
}

double Graph::weighted_degree(VertexId v) const {
  check_vertex(v);
  return weighted_deg_[v];
}

std::span<const VertexId> Graph::neighbors(VertexId v) const {
  check_vertex(v);
  return {adj_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

std::span<const double> Graph::neighbor_weights(VertexId v) const {
  check_vertex(v);
  return {adj_weights_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  check_vertex(u);
  check_vertex(v);
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

bool Graph::connected() const {
  if (n_ <= 1) return true;
  std::vector<char> seen(n_, 0);
  std::vector<VertexId> stack{0};
  seen[0] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    VertexId u = stack.back();
    stack.pop_back();
    for (VertexId w : neighbors(u)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++visited;
        stack.push_back(w);
      }
    }
  }
  return visited == n_;
}

std::uint64_t Graph::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  mix(&n_, sizeof(n_));
  for (const auto& e : edges_) {
    mix(&e.u, sizeof(e.u));
    mix(&e.v, sizeof(e.v));
    mix(&e.weight, sizeof(e.weight));
  }
  return h;
}

namespace {

bool blank_or_comment(const std::string& line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

LoadedGraph load_edge_list(const std::string& path, bool directed_input) {
  (void)directed_input;  // both conventions collapse to the same undirected edge set
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list: " + path);

  struct RawEdge {
    std::int64_t u, v;
    double w;
  };
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_or_comment(line)) continue;
    std::istringstream ls(line);
    std::int64_t u, v;
    if (!(ls >> u >> v))
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": expected 'u v' or 'u v w'");
    double w = 1.0;
    std::string rest;
    if (ls >> rest) {
      char* endp = nullptr;
      w = std::strtod(rest.c_str(), &endp);
      if (endp == rest.c_str() || *endp != '\0')
        throw DataError(path + " line " + std::to_string(line_no) +
                        ": bad weight '" + rest + "'");
      std::string extra;
      if (ls >> extra)
        throw DataError(path + " line " + std::to_string(line_no) +
                        ": trailing token '" + extra + "'");
    }
    if (u < 0 || v < 0)
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": negative vertex id");
    if (u == v)
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": self-loop on vertex " + std::to_string(u));
    if (!(w > 0.0))
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": non-positive weight");
    raw.push_back({u, v, w});
  }
  if (raw.empty()) throw DataError(path + ": no edges found");

  std::map<std::int64_t, VertexId> compact;
  for (const auto& e : raw) {
    compact.emplace(e.u, 0);
    compact.emplace(e.v, 0);
  }
  LoadedGraph out;
  out.original_ids.reserve(compact.size());
  VertexId next = 0;
  for (auto& [orig, id] : compact) {
    id = next++;
    out.original_ids.push_back(orig);
  }

  // First occurrence wins for duplicated pairs in either orientation.
  std::map<std::pair<VertexId, VertexId>, double> dedup;
  for (const auto& e : raw) {
    VertexId u = compact[e.u], v = compact[e.v];
    if (u > v) std::swap(u, v);
    dedup.emplace(std::make_pair(u, v), e.w);
  }
  std::vector<Edge> edges;
  edges.reserve(dedup.size());
  for (const auto& [pair, w] : dedup) edges.push_back({pair.first, pair.second, w});
  out.graph = Graph(static_cast<VertexId>(compact.size()), std::move(edges));
  return out;
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write edge list: " + path);
  char buf[96];
  for (const auto& e : g.edges()) {
    if (e.weight == 1.0) {
      std::snprintf(buf, sizeof(buf), "%u %u\n", e.u, e.v);
    } else {
      std::snprintf(buf, sizeof(buf), "%u %u %.17g\n", e.u, e.v, e.weight);
    }
    out << buf;
  }
  if (!out) throw DataError("failed writing " + path);
}

ComponentResult largest_connected_component(const Graph& g) {
  const VertexId n = g.num_vertices();
  std::vector<int> comp(n, -1);
  int num_comps = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != -1) continue;
    const int id = num_comps++;
    std::vector<VertexId> stack{s};
    comp[s] = id;
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId w : g.neighbors(u)) {
        if (comp[w] == -1) {
          comp[w] = id;
          stack.push_back(w);
        }
      }
    }
  }
  std::vector<std::size_t> size(num_comps, 0);
  for (VertexId v = 0; v < n; ++v) ++size[comp[v]];
  // Scanning vertices in id order means the first component to reach the
  // winning size is the one containing the smallest original id.
  int best = 0;
  for (int c = 1; c < num_comps; ++c)
    if (size[c] > size[best]) best = c;

  ComponentResult out;
  std::vector<VertexId> new_id(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    if (comp[v] == best) {
      new_id[v] = static_cast<VertexId>(out.original_ids.size());
      out.original_ids.push_back(v);
    }
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges())
    if (comp[e.u] == best && comp[e.v] == best)
      edges.push_back({new_id[e.u], new_id[e.v], e.weight});
  out.graph = Graph(static_cast<VertexId>(out.original_ids.size()),
                    std::move(edges));
  return out;
}

double subgraph_density(const Graph& g, std::span<const VertexId> subset) {
  if (subset.empty()) throw DataError("subgraph_density: empty vertex subset");
  std::vector<char> in_set(g.num_vertices(), 0);
  for (VertexId v : subset) {
    if (v >= g.num_vertices())
      throw DataError("subgraph_density: vertex " + std::to_string(v) +
                      " out of range");
    if (in_set[v])
      throw DataError("subgraph_density: duplicate vertex " +
                      std::to_string(v));
    in_set[v] = 1;
  }
  std::size_t inside = 0;
  for (const auto& e : g.edges())
    if (in_set[e.u] && in_set[e.v]) ++inside;
  return static_cast<double>(inside) / static_cast<double>(subset.size());
}

}  // namespace densewalk
