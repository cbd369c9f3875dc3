#include "densewalk/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "densewalk/error.hpp"
#include "densewalk/parallel.hpp"
#include "densewalk/rng.hpp"

namespace densewalk {

double influence(double distance, double sigma) {
  if (!(sigma > 0.0)) throw DataError("influence: sigma must be positive");
  return 1.0 - std::exp(-distance / (2.0 * sigma * sigma));
}

namespace {

std::vector<VertexId> ranked_order(const std::vector<double>& scores,
                                   bool descending) {
  std::vector<VertexId> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    if (scores[a] != scores[b])
      return descending ? scores[a] > scores[b] : scores[a] < scores[b];
    return a < b;
  });
  return order;
}

}  // namespace

DensityRanking density_scores(const ProximityMatrix& R, double sigma,
                              bool descending) {
  if (!(sigma > 0.0))
    throw DataError("density_scores: sigma must be positive");
  DensityRanking ranking;
  ranking.scores.assign(R.n, 0.0);
  parallel_for(R.n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      double total = 0.0;
      for (std::size_t k = R.offsets[i]; k < R.offsets[i + 1]; ++k) {
        if (R.cols[k] == i) continue;
        total += influence(R.values[k], sigma);
      }
      ranking.scores[i] = total;
    }
  });
  ranking.order = ranked_order(ranking.scores, descending);
  ranking.descending = descending;
  ranking.sigma = sigma;
  ranking.l = R.l;
  ranking.c = R.c;
  ranking.origin = R.origin;
  ranking.seed = R.seed;
  ranking.walks_per_vertex = R.walks_per_vertex;
  return ranking;
}

DensityRanking density_scores_streaming(const TransitionMatrix& P,
                                        const ProximityParams& params,
                                        double sigma, bool descending) {
  if (!(sigma > 0.0))
    throw DataError("density_scores_streaming: sigma must be positive");
  if (params.l < 0 || params.l > params.max_l)
    throw DataError("density_scores_streaming: horizon out of range");
  if (!(params.c > 0.0 && params.c < 1.0))
    throw DataError("density_scores_streaming: c must lie in (0, 1)");
  if (P.n == 0) throw DataError("density_scores_streaming: empty matrix");
  DensityRanking ranking;
  ranking.scores.assign(P.n, 0.0);
  parallel_for(P.n, [&](std::size_t begin, std::size_t end) {
    std::vector<double> acc(P.n, 0.0), cur(P.n), next(P.n);
    std::vector<VertexId> touched, frontier;
    for (std::size_t i = begin; i < end; ++i) {
      const auto src = static_cast<VertexId>(i);
      proximity_row_exact(P, src, params.l, params.c, acc, touched, cur, next,
                          frontier);
      double total = 0.0;
      for (VertexId m : touched) {
        if (m != src) total += influence(acc[m], sigma);
        acc[m] = 0.0;
      }
      ranking.scores[i] = total;
    }
  });
  ranking.order = ranked_order(ranking.scores, descending);
  ranking.descending = descending;
  ranking.sigma = sigma;
  ranking.l = params.l;
  ranking.c = params.c;
  ranking.origin = ProximityOrigin::exact;
  return ranking;
}

double auto_sigma(const ProximityMatrix& R) {
  double total = 0.0;
  std::size_t count = 0;
  for (VertexId i = 0; i < R.n; ++i)
    for (std::size_t k = R.offsets[i]; k < R.offsets[i + 1]; ++k) {
      if (R.cols[k] == i || R.values[k] <= 0.0) continue;
      total += R.values[k];
      ++count;
    }
  if (count == 0)
    throw DataError(
        "auto_sigma: proximity matrix has no positive off-diagonal entry");
  return total / static_cast<double>(count);
}

std::vector<VertexId> select_initializers(const DensityRanking& ranking,
                                          std::size_t k,
                                          double random_mix_frac,
                                          std::uint64_t seed) {
  const std::size_t n = ranking.order.size();
  if (k > n)
    throw DataError("select_initializers: k " + std::to_string(k) +
                    " exceeds vertex count " + std::to_string(n));
  if (!(random_mix_frac >= 0.0 && random_mix_frac <= 1.0))
    throw DataError("select_initializers: random_mix_frac must lie in [0, 1]");
  const auto ranked_take = static_cast<std::size_t>(
      std::ceil((1.0 - random_mix_frac) * static_cast<double>(k)));
  std::vector<VertexId> chosen(ranking.order.begin(),
                               ranking.order.begin() + ranked_take);
  if (chosen.size() < k) {
    std::unordered_set<VertexId> member(chosen.begin(), chosen.end());
    std::vector<VertexId> rest;
    rest.reserve(n - chosen.size());
    for (VertexId v = 0; v < n; ++v)
      if (!member.count(v)) rest.push_back(v);
    Rng rng = derive_rng(seed, "initializer-mix");
    rng.shuffle(rest);
    chosen.insert(chosen.end(), rest.begin(),
                  rest.begin() + (k - chosen.size()));
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

void save_ranking(const DensityRanking& ranking, const std::string& csv_path,
                  const std::string& json_path) {
  std::ofstream csv(csv_path);
  if (!csv) throw DataError("cannot write " + csv_path);
  csv << "vertex_id,score,rank\n";
  std::vector<std::size_t> rank_of(ranking.order.size());
  for (std::size_t r = 0; r < ranking.order.size(); ++r)
    rank_of[ranking.order[r]] = r + 1;
  char buf[96];
  for (VertexId v = 0; v < ranking.scores.size(); ++v) {
    std::snprintf(buf, sizeof(buf), "%u,%.17g,%zu\n", v, ranking.scores[v],
                  rank_of[v]);
    csv << buf;
  }

  nlohmann::json meta;
  meta["descending"] = ranking.descending;
  meta["sigma"] = ranking.sigma;
  meta["l"] = ranking.l;
  meta["c"] = ranking.c;
  meta["origin"] =
      ranking.origin == ProximityOrigin::exact ? "exact" : "monte_carlo";
  meta["seed"] = ranking.seed;
  meta["walks_per_vertex"] = ranking.walks_per_vertex;
  std::ofstream js(json_path);
  if (!js) throw DataError("cannot write " + json_path);
  js << meta.dump(2) << '\n';
}

DensityRanking load_ranking(const std::string& csv_path,
                            const std::string& json_path) {
  std::ifstream csv(csv_path);
  if (!csv) throw DataError("cannot open " + csv_path);
  DensityRanking ranking;
  std::string line;
  if (!std::getline(csv, line) || line.rfind("vertex_id,", 0) != 0)
    throw DataError(csv_path + ": missing 'vertex_id,score,rank' header");
  std::vector<std::pair<std::size_t, VertexId>> by_rank;
  std::size_t line_no = 1;
  while (std::getline(csv, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::uint64_t v;
    double score;
    std::size_t rank;
    if (!(ls >> v >> score >> rank))
      throw DataError(csv_path + " line " + std::to_string(line_no) +
                      ": expected 'vertex_id,score,rank'");
    if (v != ranking.scores.size())
      throw DataError(csv_path + " line " + std::to_string(line_no) +
                      ": vertex ids must appear in ascending order");
    ranking.scores.push_back(score);
    by_rank.push_back({rank, static_cast<VertexId>(v)});
  }
  if (ranking.scores.empty()) throw DataError(csv_path + ": no rows");
  std::sort(by_rank.begin(), by_rank.end());
  ranking.order.reserve(by_rank.size());
  for (std::size_t r = 0; r < by_rank.size(); ++r) {
    if (by_rank[r].first != r + 1)
      throw DataError(csv_path + ": ranks must be a permutation of 1..n");
    ranking.order.push_back(by_rank[r].second);
  }

  std::ifstream js(json_path);
  if (!js) throw DataError("cannot open " + json_path);
  nlohmann::json meta;
  try {
    js >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(json_path + ": " + e.what());
  }
  ranking.descending = meta.value("descending", true);
  ranking.sigma = meta.value("sigma", 1.0);
  ranking.l = meta.value("l", 0);
  ranking.c = meta.value("c", 0.15);
  ranking.origin = meta.value("origin", std::string("exact")) == "monte_carlo"
                       ? ProximityOrigin::monte_carlo
                       : ProximityOrigin::exact;
  ranking.seed = meta.value("seed", std::uint64_t{0});
  ranking.walks_per_vertex = meta.value("walks_per_vertex", std::size_t{0});
  return ranking;
}

}  // namespace densewalk
