#include "densewalk/metrics.hpp"

#include <algorithm>
#include <vector>

#include "densewalk/error.hpp"

namespace densewalk {

namespace {

struct RankedPair {
  double score;
  VertexPair pair;
  bool positive;
};

std::vector<RankedPair> collect(const ScoreMatrix& scores,
                                std::span<const VertexPair> positives,
                                std::span<const VertexPair> negatives,
                                const char* who) {
  if (positives.empty())
    throw DataError(std::string(who) + ": no positive pairs");
  if (negatives.empty())
    throw DataError(std::string(who) + ": no negative pairs");
  std::vector<RankedPair> ranked;
  ranked.reserve(positives.size() + negatives.size());
  for (const auto& p : positives)
    ranked.push_back({scores.get(p.first, p.second), p, true});
  for (const auto& p : negatives)
    ranked.push_back({scores.get(p.first, p.second), p, false});
  return ranked;
}

}  // namespace

double roc_auc(const ScoreMatrix& scores,
               std::span<const VertexPair> positives,
               std::span<const VertexPair> negatives) {
  auto ranked = collect(scores, positives, negatives, "roc_auc");
  // Average-rank Mann-Whitney: with ties assigned mid-ranks, the rank sum of
  // positives recovers wins + ties/2 of every positive-negative comparison.
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedPair& a, const RankedPair& b) {
              return a.score < b.score;
            });
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < ranked.size()) {
    std::size_t j = i;
    while (j < ranked.size() && ranked[j].score == ranked[i].score) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (std::size_t k = i; k < j; ++k)
      if (ranked[k].positive) positive_rank_sum += mid_rank;
    i = j;
  }
  const auto p = static_cast<double>(positives.size());
  const auto n = static_cast<double>(negatives.size());
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * n);
}

double average_precision(const ScoreMatrix& scores,
                         std::span<const VertexPair> positives,
                         std::span<const VertexPair> negatives) {
  auto ranked = collect(scores, positives, negatives, "average_precision");
  std::sort(ranked.begin(), ranked.end(),
            [](const RankedPair& a, const RankedPair& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.pair < b.pair;
            });
  double ap = 0.0;
  std::size_t true_positives = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (!ranked[i].positive) continue;
    ++true_positives;
    ap += static_cast<double>(true_positives) / static_cast<double>(i + 1);
  }
  return ap / static_cast<double>(positives.size());
}

double edge_overlap(const Graph& assembled, const Graph& reference) {
  if (assembled.num_vertices() != reference.num_vertices())
    throw DataError("edge_overlap: graphs disagree on vertex count");
  if (reference.num_edges() == 0)
    throw DataError("edge_overlap: reference graph has no edges");
  std::size_t shared = 0;
  for (const auto& e : assembled.edges())
    if (reference.has_edge(e.u, e.v)) ++shared;
  return static_cast<double>(shared) /
         static_cast<double>(reference.num_edges());
}

}  // namespace densewalk
