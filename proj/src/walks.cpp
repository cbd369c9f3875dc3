#include "densewalk/walks.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "densewalk/error.hpp"
#include "densewalk/parallel.hpp"
#include "densewalk/rng.hpp"

namespace densewalk {

namespace {

VertexId step_from(const Graph& g, VertexId at, Rng& rng) {
  const auto nbrs = g.neighbors(at);
  const auto wts = g.neighbor_weights(at);
  double u = rng.next_double() * g.weighted_degree(at);
  std::size_t pick = nbrs.size() - 1;
  for (std::size_t k = 0; k + 1 < nbrs.size(); ++k) {
    u -= wts[k];
    if (u < 0.0) {
      pick = k;
      break;
    }
  }
  return nbrs[pick];
}

// Start-vertex sampler chosen once up front; each call must consume the
// walk's own stream only, so walk output stays schedule-independent.
struct StartSampler {
  std::vector<VertexId> pool;    // uniform strategies: candidates
  std::vector<double> cum;       // density_weighted: cumulative softmax mass
  bool weighted = false;

  VertexId draw(Rng& rng) const {
    if (!weighted) return pool[rng.bounded(pool.size())];
    const double u = rng.next_double() * cum.back();
    const auto it = std::upper_bound(cum.begin(), cum.end(), u);
    const auto idx = std::min<std::size_t>(it - cum.begin(), pool.size() - 1);
    return pool[idx];
  }
};

StartSampler make_start_sampler(const Graph& g, const WalkConfig& cfg,
                                const DensityRanking* ranking) {
  std::vector<VertexId> eligible;
  for (VertexId v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) >= 1) eligible.push_back(v);
  if (eligible.empty())
    throw DataError("sample_walks: no vertex with degree >= 1");

  StartSampler sampler;
  switch (cfg.strategy.kind) {
    case StartStrategy::uniform_random:
      sampler.pool = std::move(eligible);
      return sampler;
    case StartStrategy::dense_top_k: {
      if (ranking == nullptr)
        throw DataError("sample_walks: dense_top_k requires a density ranking");
      if (ranking->scores.size() != g.num_vertices())
        throw DataError("sample_walks: ranking size does not match graph");
      std::size_t k = cfg.strategy.k;
      if (k == 0)
        k = std::max<std::size_t>(
            10, static_cast<std::size_t>(
                    std::ceil(0.1 * static_cast<double>(g.num_vertices()))));
      k = std::min<std::size_t>(k, g.num_vertices());
      const auto selected = select_initializers(
          *ranking, k, cfg.strategy.random_mix_frac, cfg.seed);
      for (VertexId v : selected)
        if (g.degree(v) >= 1) sampler.pool.push_back(v);
      if (sampler.pool.empty())
        throw DataError(
            "sample_walks: every selected start vertex is isolated");
      return sampler;
    }
    case StartStrategy::density_weighted: {
      if (ranking == nullptr)
        throw DataError(
            "sample_walks: density_weighted requires a density ranking");
      if (ranking->scores.size() != g.num_vertices())
        throw DataError("sample_walks: ranking size does not match graph");
      if (!(cfg.strategy.temperature > 0.0))
        throw DataError("sample_walks: temperature must be positive");
      sampler.weighted = true;
      sampler.pool = std::move(eligible);
      double top = ranking->scores[sampler.pool.front()];
      for (VertexId v : sampler.pool)
        top = std::max(top, ranking->scores[v]);
      sampler.cum.reserve(sampler.pool.size());
      double running = 0.0;
      for (VertexId v : sampler.pool) {
        running +=
            std::exp((ranking->scores[v] - top) / cfg.strategy.temperature);
        sampler.cum.push_back(running);
      }
      return sampler;
    }
  }
  throw InternalError("sample_walks: unknown start strategy");
}

}  // namespace

WalkSet sample_walks(const Graph& g, const WalkConfig& cfg,
                     const DensityRanking* ranking) {
  if (g.num_edges() == 0)
    throw DataError("sample_walks: graph has no edges");
  if (cfg.walk_length < 1)
    throw DataError("sample_walks: walk_length must be >= 1");
  if (cfg.batch_size == 0 || cfg.num_batches == 0)
    throw DataError("sample_walks: batch_size and num_batches must be >= 1");
  const StartSampler sampler = make_start_sampler(g, cfg, ranking);

  WalkSet walks;
  walks.walk_length = cfg.walk_length;
  walks.n = g.num_vertices();
  walks.seed = cfg.seed;
  walks.graph_fingerprint = g.fingerprint();
  const std::size_t count = cfg.batch_size * cfg.num_batches;
  const std::size_t len = static_cast<std::size_t>(cfg.walk_length) + 1;
  walks.flat.assign(count * len, 0);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      Rng rng = derive_rng(cfg.seed, "walk", w);
      VertexId* out = walks.flat.data() + w * len;
      VertexId at = sampler.draw(rng);
      out[0] = at;
      for (int s = 1; s <= cfg.walk_length; ++s) {
        at = step_from(g, at, rng);
        out[s] = at;
      }
    }
  });
  return walks;
}

WalkSet sample_walks_from(const Graph& g, VertexId v, std::size_t count,
                          int walk_length, std::uint64_t seed) {
  if (v >= g.num_vertices())
    throw DataError("sample_walks_from: vertex id out of range");
  if (g.degree(v) == 0)
    throw DataError("sample_walks_from: start vertex " + std::to_string(v) +
                    " is isolated");
  if (walk_length < 1)
    throw DataError("sample_walks_from: walk_length must be >= 1");
  if (count == 0)
    throw DataError("sample_walks_from: count must be >= 1");
  WalkSet walks;
  walks.walk_length = walk_length;
  walks.n = g.num_vertices();
  walks.seed = seed;
  walks.graph_fingerprint = g.fingerprint();
  const std::size_t len = static_cast<std::size_t>(walk_length) + 1;
  walks.flat.assign(count * len, 0);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      Rng rng = derive_rng(seed, "walk", w);
      VertexId* out = walks.flat.data() + w * len;
      out[0] = v;
      VertexId at = v;
      for (int s = 1; s <= walk_length; ++s) {
        at = step_from(g, at, rng);
        out[s] = at;
      }
    }
  });
  return walks;
}

double walk_entropy(const WalkSet& walks) {
  const std::size_t count = walks.size();
  if (count == 0) throw DataError("walk_entropy: empty walk set");
  std::vector<std::size_t> idx(count);
  std::iota(idx.begin(), idx.end(), 0);
  const std::size_t len = static_cast<std::size_t>(walks.walk_length) + 1;
  const VertexId* flat = walks.flat.data();
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat + a * len, flat + (a + 1) * len,
                                        flat + b * len, flat + (b + 1) * len);
  });
  const auto same = [&](std::size_t a, std::size_t b) {
    return std::equal(flat + a * len, flat + (a + 1) * len, flat + b * len);
  };
  double entropy = 0.0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= count; ++i) {
    if (i < count && same(idx[i - 1], idx[i])) {
      ++run;
      continue;
    }
    const double p = static_cast<double>(run) / static_cast<double>(count);
    entropy -= p * std::log(p);
    run = 1;
  }
  return entropy;
}

void export_walks(const WalkSet& walks, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "#walkset l=" << walks.walk_length << " n=" << walks.n
      << " seed=" << walks.seed << '\n';
  const std::size_t len = static_cast<std::size_t>(walks.walk_length) + 1;
  for (std::size_t w = 0; w < walks.size(); ++w) {
    const VertexId* row = walks.flat.data() + w * len;
    for (std::size_t s = 0; s < len; ++s) {
      if (s) out << ' ';
      out << row[s];
    }
    out << '\n';
  }
}

WalkSet import_walks(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  WalkSet walks;
  walks.n = g.num_vertices();
  walks.graph_fingerprint = g.fingerprint();
  walks.walk_length = -1;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("seed=");
      if (pos != std::string::npos)
        walks.seed = std::strtoull(line.c_str() + pos + 5, nullptr, 10);
      continue;
    }
    std::istringstream ls(line);
    std::vector<VertexId> row;
    std::uint64_t id;
    while (ls >> id) {
      if (id >= g.num_vertices())
        throw DataError(path + " line " + std::to_string(line_no) +
                        ": vertex id " + std::to_string(id) +
                        " out of range");
      row.push_back(static_cast<VertexId>(id));
    }
    if (!ls.eof())
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": malformed vertex id");
    if (row.size() < 2)
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": a walk needs at least two vertices");
    if (walks.walk_length < 0)
      walks.walk_length = static_cast<int>(row.size()) - 1;
    else if (row.size() != static_cast<std::size_t>(walks.walk_length) + 1)
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": walk length differs from earlier walks");
    for (std::size_t s = 0; s + 1 < row.size(); ++s)
      if (!g.has_edge(row[s], row[s + 1]))
        throw DataError(path + " line " + std::to_string(line_no) + ": step " +
                        std::to_string(row[s]) + " -> " +
                        std::to_string(row[s + 1]) +
                        " is not an edge of the graph");
    walks.append(row);
  }
  if (walks.walk_length < 0) throw DataError(path + ": no walks found");
  return walks;
}

}  // namespace densewalk
