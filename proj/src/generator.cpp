#include "densewalk/generator.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "densewalk/error.hpp"
#include "densewalk/parallel.hpp"
#include "densewalk/rng.hpp"

namespace densewalk {

namespace {

std::string join(const std::string& dir, const char* name) {
  return (std::filesystem::path(dir) / name).string();
}

nlohmann::json read_meta(const std::string& dir) {
  const std::string path = join(dir, "generator.json");
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  nlohmann::json meta;
  try {
    in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path + ": " + e.what());
  }
  return meta;
}

// Cumulative-weight draw; entries of zero weight are never selected. A row
// whose total mass is zero degenerates to a uniform pick.
template <typename Ids>
VertexId draw_from(const Ids& ids, const std::vector<double>& cum, Rng& rng) {
  const double total = cum.back();
  if (!(total > 0.0)) return ids[rng.bounded(ids.size())];
  const double u = rng.next_double() * total;
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  const auto idx = std::min<std::size_t>(it - cum.begin(), ids.size() - 1);
  return ids[idx];
}

}  // namespace

MarkovGenerator::MarkovGenerator(double alpha) : alpha_(alpha) {
  if (alpha < 0.0)
    throw DataError("MarkovGenerator: alpha must be non-negative");
}

void MarkovGenerator::fit(const WalkSet& train, const Graph& g) {
  if (train.size() == 0)
    throw DataError("MarkovGenerator::fit: empty training walk set");
  if (train.n != g.num_vertices())
    throw DataError(
        "MarkovGenerator::fit: walk set and graph disagree on vertex count");
  n_ = g.num_vertices();
  fitted_l_ = train.walk_length;
  graph_fingerprint_ = g.fingerprint();

  start_counts_.assign(n_, 0.0);
  std::vector<std::unordered_map<VertexId, double>> observed(n_);
  for (std::size_t w = 0; w < train.size(); ++w) {
    const auto walk = train.walk(w);
    start_counts_[walk[0]] += 1.0;
    for (std::size_t s = 0; s + 1 < walk.size(); ++s)
      observed[walk[s]][walk[s + 1]] += 1.0;
  }

  start_support_.clear();
  start_cum_.clear();
  double running = 0.0;
  for (VertexId v = 0; v < n_; ++v) {
    if (start_counts_[v] <= 0.0) continue;
    start_support_.push_back(v);
    running += start_counts_[v];
    start_cum_.push_back(running);
  }

  support_.assign(n_, {});
  support_cum_.assign(n_, {});
  for (VertexId u = 0; u < n_; ++u) {
    auto& sup = support_[u];
    for (const auto& [v, _] : observed[u]) sup.push_back(v);
    for (VertexId v : g.neighbors(u))
      if (!observed[u].count(v)) sup.push_back(v);
    std::sort(sup.begin(), sup.end());
    auto& cum = support_cum_[u];
    cum.reserve(sup.size());
    double total = 0.0;
    for (VertexId v : sup) {
      const auto it = observed[u].find(v);
      total += (it == observed[u].end() ? 0.0 : it->second) + alpha_;
      cum.push_back(total);
    }
  }
}

double MarkovGenerator::transition_count(VertexId u, VertexId v) const {
  if (u >= n_ || v >= n_)
    throw DataError("transition_count: vertex id out of range");
  const auto& sup = support_[u];
  const auto it = std::lower_bound(sup.begin(), sup.end(), v);
  if (it == sup.end() || *it != v) return 0.0;
  const auto idx = static_cast<std::size_t>(it - sup.begin());
  const double w = support_cum_[u][idx] - (idx ? support_cum_[u][idx - 1] : 0.0);
  return w - alpha_;
}

double MarkovGenerator::start_count(VertexId v) const {
  if (v >= n_) throw DataError("start_count: vertex id out of range");
  return start_counts_[v];
}

WalkSet MarkovGenerator::generate(std::size_t count, int walk_length,
                                  std::uint64_t seed) const {
  if (n_ == 0) throw DataError("MarkovGenerator::generate: not fitted");
  if (walk_length < 1)
    throw DataError("MarkovGenerator::generate: walk_length must be >= 1");
  WalkSet walks;
  walks.walk_length = walk_length;
  walks.n = n_;
  walks.seed = seed;
  walks.graph_fingerprint = graph_fingerprint_;
  const std::size_t len = static_cast<std::size_t>(walk_length) + 1;
  walks.flat.assign(count * len, 0);
  parallel_for(count, [&](std::size_t begin, std::size_t end) {
    for (std::size_t w = begin; w < end; ++w) {
      Rng rng = derive_rng(seed, "generate", w);
      VertexId* out = walks.flat.data() + w * len;
      VertexId at = draw_from(start_support_, start_cum_, rng);
      out[0] = at;
      for (int s = 1; s <= walk_length; ++s) {
        if (!support_[at].empty())
          at = draw_from(support_[at], support_cum_[at], rng);
        out[s] = at;  // empty support: repeat in place
      }
    }
  });
  return walks;
}

void MarkovGenerator::save(const std::string& dir) const {
  if (n_ == 0) throw DataError("MarkovGenerator::save: not fitted");
  std::filesystem::create_directories(dir);
  nlohmann::json meta;
  meta["type"] = "markov";
  meta["alpha"] = alpha_;
  meta["num_vertices"] = n_;
  meta["fitted_walk_length"] = fitted_l_;
  meta["graph_fingerprint"] = graph_fingerprint_;
  {
    std::ofstream out(join(dir, "generator.json"));
    if (!out) throw DataError("cannot write " + join(dir, "generator.json"));
    out << meta.dump(2) << '\n';
  }
  char buf[128];
  {
    std::ofstream out(join(dir, "starts.tsv"));
    if (!out) throw DataError("cannot write " + join(dir, "starts.tsv"));
    for (VertexId v = 0; v < n_; ++v) {
      if (start_counts_[v] <= 0.0) continue;
      std::snprintf(buf, sizeof(buf), "%u\t%.17g\n", v, start_counts_[v]);
      out << buf;
    }
  }
  {
    // Smoothed support weights (count + alpha), so loading needs no graph.
    std::ofstream out(join(dir, "transitions.tsv"));
    if (!out) throw DataError("cannot write " + join(dir, "transitions.tsv"));
    for (VertexId u = 0; u < n_; ++u)
      for (std::size_t k = 0; k < support_[u].size(); ++k) {
        const double w =
            support_cum_[u][k] - (k ? support_cum_[u][k - 1] : 0.0);
        std::snprintf(buf, sizeof(buf), "%u\t%u\t%.17g\n", u, support_[u][k],
                      w);
        out << buf;
      }
  }
}

std::unique_ptr<MarkovGenerator> MarkovGenerator::load(const std::string& dir) {
  const nlohmann::json meta = read_meta(dir);
  if (meta.value("type", std::string{}) != "markov")
    throw DataError(dir + ": bundle is not a markov generator");
  auto gen = std::make_unique<MarkovGenerator>(meta.value("alpha", 0.01));
  gen->n_ = meta.at("num_vertices").get<VertexId>();
  gen->fitted_l_ = meta.value("fitted_walk_length", 0);
  gen->graph_fingerprint_ = meta.value("graph_fingerprint", std::uint64_t{0});
  if (gen->n_ == 0) throw DataError(dir + ": bundle has zero vertices");

  gen->start_counts_.assign(gen->n_, 0.0);
  {
    const std::string path = join(dir, "starts.tsv");
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::uint64_t v;
    double c;
    while (in >> v >> c) {
      if (v >= gen->n_)
        throw DataError(path + ": vertex id out of range");
      gen->start_counts_[v] = c;
    }
  }
  double running = 0.0;
  for (VertexId v = 0; v < gen->n_; ++v) {
    if (gen->start_counts_[v] <= 0.0) continue;
    gen->start_support_.push_back(v);
    running += gen->start_counts_[v];
    gen->start_cum_.push_back(running);
  }
  if (gen->start_support_.empty())
    throw DataError(dir + ": bundle has no start vertices");

  gen->support_.assign(gen->n_, {});
  gen->support_cum_.assign(gen->n_, {});
  {
    const std::string path = join(dir, "transitions.tsv");
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    std::uint64_t u, v;
    double w;
    VertexId prev_u = 0;
    VertexId prev_v = 0;
    bool first = true;
    while (in >> u >> v >> w) {
      if (u >= gen->n_ || v >= gen->n_)
        throw DataError(path + ": vertex id out of range");
      if (!first && (u < prev_u || (u == prev_u && v <= prev_v)))
        throw DataError(path + ": rows must be sorted by (source, successor)");
      first = false;
      prev_u = static_cast<VertexId>(u);
      prev_v = static_cast<VertexId>(v);
      auto& sup = gen->support_[u];
      auto& cum = gen->support_cum_[u];
      sup.push_back(static_cast<VertexId>(v));
      cum.push_back((cum.empty() ? 0.0 : cum.back()) + w);
    }
  }
  return gen;
}

void ReplayGenerator::fit(const WalkSet& train, const Graph& g) {
  if (train.size() == 0)
    throw DataError("ReplayGenerator::fit: empty training walk set");
  if (train.n != g.num_vertices())
    throw DataError(
        "ReplayGenerator::fit: walk set and graph disagree on vertex count");
  corpus_ = train;
}

WalkSet ReplayGenerator::generate(std::size_t count, int walk_length,
                                  std::uint64_t seed) const {
  if (corpus_.size() == 0)
    throw DataError("ReplayGenerator::generate: not fitted");
  if (walk_length != corpus_.walk_length)
    throw DataError("ReplayGenerator::generate: requested walk_length " +
                    std::to_string(walk_length) +
                    " differs from corpus length " +
                    std::to_string(corpus_.walk_length));
  WalkSet walks;
  walks.walk_length = corpus_.walk_length;
  walks.n = corpus_.n;
  walks.seed = seed;
  walks.graph_fingerprint = corpus_.graph_fingerprint;
  walks.flat.reserve(count * (static_cast<std::size_t>(walk_length) + 1));
  Rng rng = derive_rng(seed, "replay");
  if (count == corpus_.size()) {
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);
    for (std::size_t idx : order) walks.append(corpus_.walk(idx));
  } else {
    for (std::size_t w = 0; w < count; ++w)
      walks.append(corpus_.walk(rng.bounded(corpus_.size())));
  }
  return walks;
}

void ReplayGenerator::save(const std::string& dir) const {
  if (corpus_.size() == 0)
    throw DataError("ReplayGenerator::save: not fitted");
  std::filesystem::create_directories(dir);
  nlohmann::json meta;
  meta["type"] = "replay";
  meta["num_vertices"] = corpus_.n;
  meta["fitted_walk_length"] = corpus_.walk_length;
  meta["graph_fingerprint"] = corpus_.graph_fingerprint;
  meta["corpus_seed"] = corpus_.seed;
  std::ofstream out(join(dir, "generator.json"));
  if (!out) throw DataError("cannot write " + join(dir, "generator.json"));
  out << meta.dump(2) << '\n';
  export_walks(corpus_, join(dir, "corpus.walks"));
}

std::unique_ptr<ReplayGenerator> ReplayGenerator::load(const std::string& dir) {
  const nlohmann::json meta = read_meta(dir);
  if (meta.value("type", std::string{}) != "replay")
    throw DataError(dir + ": bundle is not a replay generator");
  auto gen = std::make_unique<ReplayGenerator>();
  gen->corpus_.n = meta.at("num_vertices").get<VertexId>();
  gen->corpus_.seed = meta.value("corpus_seed", std::uint64_t{0});
  gen->corpus_.graph_fingerprint =
      meta.value("graph_fingerprint", std::uint64_t{0});
  gen->corpus_.walk_length = -1;

  const std::string path = join(dir, "corpus.walks");
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<VertexId> row;
    std::uint64_t id;
    while (ls >> id) {
      if (id >= gen->corpus_.n)
        throw DataError(path + " line " + std::to_string(line_no) +
                        ": vertex id out of range");
      row.push_back(static_cast<VertexId>(id));
    }
    if (row.size() < 2)
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": a walk needs at least two vertices");
    if (gen->corpus_.walk_length < 0)
      gen->corpus_.walk_length = static_cast<int>(row.size()) - 1;
    else if (row.size() !=
             static_cast<std::size_t>(gen->corpus_.walk_length) + 1)
      throw DataError(path + " line " + std::to_string(line_no) +
                      ": walk length differs from earlier walks");
    gen->corpus_.append(row);
  }
  if (gen->corpus_.walk_length < 0) throw DataError(path + ": no walks found");
  return gen;
}

std::unique_ptr<MarkovGenerator> fit_markov(const WalkSet& train,
                                            const Graph& g, double alpha) {
  auto gen = std::make_unique<MarkovGenerator>(alpha);
  gen->fit(train, g);
  return gen;
}

std::unique_ptr<ReplayGenerator> replay_generator(const WalkSet& train) {
  auto gen = std::make_unique<ReplayGenerator>();
  if (train.size() == 0)
    throw DataError("replay_generator: empty training walk set");
  gen->fit(train, Graph(train.n, {}));
  return gen;
}

std::unique_ptr<WalkGenerator> load_generator(const std::string& dir) {
  const nlohmann::json meta = read_meta(dir);
  const std::string type = meta.value("type", std::string{});
  if (type == "markov") return MarkovGenerator::load(dir);
  if (type == "replay") return ReplayGenerator::load(dir);
  throw DataError(dir + ": unknown generator type '" + type + "'");
}

}  // namespace densewalk
