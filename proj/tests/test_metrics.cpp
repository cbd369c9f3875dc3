#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "densewalk/error.hpp"
#include "densewalk/graph.hpp"
#include "densewalk/graphgen.hpp"
#include "densewalk/metrics.hpp"
#include "densewalk/rng.hpp"
#include "densewalk/scores.hpp"
#include "densewalk/walks.hpp"
#include "support.hpp"

using namespace densewalk;
using testsupport::TempDir;
using testsupport::make_graph;

namespace {

WalkSet manual_walks(VertexId n, int walk_length,
                     const std::vector<std::vector<VertexId>>& rows) {
  WalkSet walks;
  walks.n = n;
  walks.walk_length = walk_length;
  for (const auto& row : rows) walks.append(row);
  return walks;
}

ScoreMatrix manual_scores(
    VertexId n,
    const std::vector<std::tuple<VertexId, VertexId, double>>& entries) {
  ScoreMatrix s;
  s.n = n;
  for (const auto& [u, v, count] : entries)
    s.counts[ScoreMatrix::key(u, v)] = count;
  return s;
}

}  // namespace

TEST_CASE("transition counting over a single walk") {
  const ScoreMatrix s = assemble_scores(manual_walks(3, 2, {{0, 1, 2}}), 3);
  CHECK(s.get(0, 1) == 1.0);
  CHECK(s.get(1, 2) == 1.0);
  CHECK(s.get(0, 2) == 0.0);
  CHECK(s.total_transitions == 2);
  CHECK(s.discarded_self_steps == 0);
}

TEST_CASE("reversed steps collapse onto one symmetric count") {
  const ScoreMatrix s =
      assemble_scores(manual_walks(2, 1, {{0, 1}, {1, 0}}), 2);
  CHECK(s.get(0, 1) == 2.0);
  CHECK(s.get(1, 0) == 2.0);
  CHECK(s.counts.size() == 1);
}

TEST_CASE("self steps are discarded but tallied") {
  const ScoreMatrix s =
      assemble_scores(manual_walks(3, 2, {{0, 0, 1}, {1, 2, 2}}), 3);
  // Walks [0,0,1] and [1,2,2]: two real transitions, two self steps.
  CHECK(s.get(0, 1) == 1.0);
  CHECK(s.get(1, 2) == 1.0);
  CHECK(s.get(2, 2) == 0.0);
  CHECK(s.total_transitions == 2);
  CHECK(s.discarded_self_steps == 2);
}

TEST_CASE("scores add across walk sets") {
  const WalkSet batch1 = manual_walks(3, 1, {{0, 1}, {1, 2}});
  const WalkSet batch2 = manual_walks(3, 1, {{0, 1}});
  WalkSet both = batch1;
  both.append(batch2.walk(0));
  const ScoreMatrix s1 = assemble_scores(batch1, 3);
  const ScoreMatrix s2 = assemble_scores(batch2, 3);
  const ScoreMatrix all = assemble_scores(both, 3);
  CHECK(all.get(0, 1) == s1.get(0, 1) + s2.get(0, 1));
  CHECK(all.get(1, 2) == s1.get(1, 2) + s2.get(1, 2));
}

TEST_CASE("triangle walk mass spreads evenly over the three edges") {
  const Graph g = complete_graph(3);
  WalkConfig cfg;
  cfg.walk_length = 2;
  cfg.batch_size = 100;
  cfg.num_batches = 100;
  cfg.seed = 77;
  const ScoreMatrix s = assemble_scores(sample_walks(g, cfg, nullptr), 3);
  const double total = static_cast<double>(s.total_transitions);
  CHECK(total == 20000.0);
  for (const auto& [u, v] : {std::pair<VertexId, VertexId>{0, 1},
                             {0, 2},
                             {1, 2}})
    CHECK(std::abs(s.get(u, v) - total / 3.0) < 0.05 * total / 3.0);
}

TEST_CASE("assembly validation") {
  WalkSet empty;
  empty.walk_length = 1;
  empty.n = 2;
  CHECK_THROWS_AS(assemble_scores(empty, 2), DataError);
  CHECK_THROWS_AS(assemble_scores(manual_walks(3, 1, {{0, 2}}), 2), DataError);
}

TEST_CASE("top-count graph assembly with deterministic tie order") {
  const ScoreMatrix s = manual_scores(3, {{0, 1, 5.0}, {1, 2, 3.0}, {0, 2, 1.0}});
  const AssembledGraph top2 = assemble_graph(s, 2, AssembleMode::top_k, 1);
  CHECK(top2.graph.num_edges() == 2);
  CHECK(top2.graph.has_edge(0, 1));
  CHECK(top2.graph.has_edge(1, 2));
  CHECK_FALSE(top2.shortfall);
  CHECK(top2.requested_edges == 2);

  const AssembledGraph none = assemble_graph(s, 0, AssembleMode::top_k, 1);
  CHECK(none.graph.num_edges() == 0);
  CHECK(none.graph.num_vertices() == 3);
  CHECK_FALSE(none.shortfall);

  const AssembledGraph more = assemble_graph(s, 9, AssembleMode::top_k, 1);
  CHECK(more.graph.num_edges() == 3);
  CHECK(more.shortfall);

  ScoreMatrix blank;
  blank.n = 4;
  const AssembledGraph starved = assemble_graph(blank, 2, AssembleMode::top_k, 1);
  CHECK(starved.graph.num_edges() == 0);
  CHECK(starved.shortfall);

  // Count tie between (0,1) and (1,2): ascending pair order wins.
  const ScoreMatrix tie = manual_scores(3, {{1, 2, 2.0}, {0, 1, 2.0}, {0, 2, 1.0}});
  const AssembledGraph first = assemble_graph(tie, 1, AssembleMode::top_k, 1);
  CHECK(first.graph.has_edge(0, 1));
}

TEST_CASE("sampled graph assembly draws without replacement by weight") {
  const ScoreMatrix s = manual_scores(
      4, {{0, 1, 100.0}, {1, 2, 1.0}, {2, 3, 1.0}, {0, 3, 1.0}});
  const AssembledGraph a = assemble_graph(s, 2, AssembleMode::sample, 9);
  CHECK(a.graph.num_edges() == 2);
  const AssembledGraph b = assemble_graph(s, 2, AssembleMode::sample, 9);
  CHECK(a.graph == b.graph);  // seed-deterministic

  // The overwhelming count makes pair (0,1) a near-certain member.
  std::size_t hits = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed)
    hits += assemble_graph(s, 2, AssembleMode::sample, seed).graph.has_edge(0, 1);
  CHECK(hits >= 48);

  CHECK_THROWS_AS(assemble_graph(manual_scores(1, {}), 1, AssembleMode::top_k, 1),
                  DataError);
}

TEST_CASE("score files round trip") {
  const ScoreMatrix s = manual_scores(5, {{0, 4, 2.5}, {1, 2, 7.0}});
  TempDir tmp;
  save_scores(s, tmp.file("scores.csv"));
  const ScoreMatrix back = load_scores(tmp.file("scores.csv"));
  CHECK(back.n == 5);
  CHECK(back.get(0, 4) == 2.5);
  CHECK(back.get(1, 2) == 7.0);
  CHECK(back.counts.size() == 2);

  testsupport::write_file(tmp.file("bad.csv"), "u,v,count\n3,3,1\n");
  CHECK_THROWS_AS(load_scores(tmp.file("bad.csv")), DataError);
  testsupport::write_file(tmp.file("hdr.csv"), "a,b\n");
  CHECK_THROWS_AS(load_scores(tmp.file("hdr.csv")), DataError);
}

TEST_CASE("separability extremes pin the ROC-AUC range") {
  const ScoreMatrix s = manual_scores(4, {{0, 1, 9.0}, {2, 3, 8.0}});
  const std::vector<VertexPair> pos{{0, 1}, {2, 3}};
  const std::vector<VertexPair> neg{{0, 2}, {1, 3}};
  CHECK(roc_auc(s, pos, neg) == 1.0);
  CHECK(roc_auc(s, neg, pos) == 0.0);  // swapping roles mirrors the score

  ScoreMatrix blank;
  blank.n = 4;
  CHECK(roc_auc(blank, pos, neg) == 0.5);  // every pair ties at zero
}

TEST_CASE("one misranked negative yields three quarters") {
  // positives score {3, 1}, negatives {2, 0}: one of four comparisons lost.
  const ScoreMatrix s = manual_scores(
      5, {{0, 1, 3.0}, {2, 3, 1.0}, {0, 4, 2.0}});
  const std::vector<VertexPair> pos{{0, 1}, {2, 3}};
  const std::vector<VertexPair> neg{{0, 4}, {1, 2}};
  CHECK(roc_auc(s, pos, neg) == 0.75);
  CHECK(average_precision(s, pos, neg) ==
        doctest::Approx(0.5 * (1.0 + 2.0 / 3.0)).epsilon(1e-15));
}

TEST_CASE("average precision endpoints") {
  const ScoreMatrix s = manual_scores(4, {{0, 1, 5.0}});
  const std::vector<VertexPair> pos{{0, 1}};
  const std::vector<VertexPair> neg{{0, 2}, {0, 3}, {1, 2}};
  CHECK(average_precision(s, pos, neg) == 1.0);  // positive ranked first

  // The positive pair is absent (score 0), so it ranks last of four.
  const ScoreMatrix worst =
      manual_scores(4, {{0, 2, 3.0}, {0, 3, 2.0}, {1, 2, 1.0}});
  CHECK(average_precision(worst, pos, neg) == 0.25);
}

TEST_CASE("metric inputs are validated") {
  const ScoreMatrix s = manual_scores(3, {{0, 1, 1.0}});
  const std::vector<VertexPair> pos{{0, 1}};
  const std::vector<VertexPair> none;
  CHECK_THROWS_AS(roc_auc(s, pos, none), DataError);
  CHECK_THROWS_AS(roc_auc(s, none, pos), DataError);
  CHECK_THROWS_AS(average_precision(s, none, pos), DataError);
}

TEST_CASE("rank metrics agree exactly with brute-force references") {
  Rng rng(2718);
  for (int trial = 0; trial < 200; ++trial) {
    const VertexId n = 5 + static_cast<VertexId>(rng.bounded(60));
    std::vector<VertexPair> all_pairs;
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v) all_pairs.push_back({u, v});
    rng.shuffle(all_pairs);

    const std::size_t num_pos =
        1 + static_cast<std::size_t>(rng.bounded(
                std::min<std::uint64_t>(40, all_pairs.size() - 1)));
    const std::size_t num_neg =
        1 + static_cast<std::size_t>(rng.bounded(std::min<std::uint64_t>(
                60, all_pairs.size() - num_pos)));
    const std::vector<VertexPair> pos(all_pairs.begin(),
                                      all_pairs.begin() + num_pos);
    const std::vector<VertexPair> neg(all_pairs.begin() + num_pos,
                                      all_pairs.begin() + num_pos + num_neg);

    // Integer counts in a narrow range force heavy ties; some pairs stay
    // absent entirely (score zero).
    ScoreMatrix s;
    s.n = n;
    for (const auto& [u, v] : pos)
      if (rng.bounded(4) != 0)
        s.counts[ScoreMatrix::key(u, v)] =
            static_cast<double>(1 + rng.bounded(5));
    for (const auto& [u, v] : neg)
      if (rng.bounded(4) != 0)
        s.counts[ScoreMatrix::key(u, v)] =
            static_cast<double>(1 + rng.bounded(5));

    CHECK(roc_auc(s, pos, neg) == testsupport::naive_auc(s, pos, neg));
    CHECK(average_precision(s, pos, neg) == testsupport::naive_ap(s, pos, neg));

    // Swapping the class labels complements the AUC.
    CHECK(roc_auc(s, neg, pos) ==
          doctest::Approx(1.0 - roc_auc(s, pos, neg)).epsilon(1e-12));

    // Any strictly monotone transform of the scores preserves both ranks and
    // ties, so the AUC must not move at all.
    ScoreMatrix warped;
    warped.n = n;
    for (const auto& [key, count] : s.counts)
      warped.counts[key] = 2.0 * count + 3.0;
    CHECK(roc_auc(warped, pos, neg) == roc_auc(s, pos, neg));
  }
}

TEST_CASE("edge overlap counts shared edges against the reference") {
  const Graph tri = complete_graph(3);
  CHECK(edge_overlap(tri, tri) == 1.0);
  const Graph pth = path_graph(3);  // shares 0-1 and 1-2 with the triangle
  CHECK(edge_overlap(pth, tri) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  const Graph none = make_graph(3, {});
  CHECK(edge_overlap(none, tri) == 0.0);
  CHECK_THROWS_AS(edge_overlap(tri, none), DataError);          // empty ref
  CHECK_THROWS_AS(edge_overlap(complete_graph(4), tri), DataError);  // n clash
}
