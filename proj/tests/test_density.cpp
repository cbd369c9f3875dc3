#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "densewalk/density.hpp"
#include "densewalk/error.hpp"
#include "densewalk/graph.hpp"
#include "densewalk/graphgen.hpp"
#include "densewalk/proximity.hpp"
#include "support.hpp"

using namespace densewalk;
using testsupport::TempDir;
using testsupport::make_graph;

namespace {

DensityRanking rank_graph(const Graph& g, int l, double sigma = 1.0,
                          bool descending = true) {
  const ProximityMatrix R =
      proximity_exact(transition_matrix(g), {.l = l, .c = 0.15});
  return density_scores(R, sigma, descending);
}

}  // namespace

TEST_CASE("influence kernel") {
  CHECK(influence(0.0, 1.0) == 0.0);
  CHECK(influence(2.0, 1.0) ==
        doctest::Approx(0.6321205588285577).epsilon(1e-15));  // 1 - e^{-1}
  CHECK(influence(1.0, 0.5) ==
        doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-15));
  // Monotone in the proximity value; strictly below 1 on the proximity
  // domain (entries never exceed 1). Far outside that domain the complement
  // exp(-d/2) underflows past machine epsilon and the result rounds to 1.0.
  CHECK(influence(0.2, 1.0) > influence(0.1, 1.0));
  CHECK(influence(1.0, 1.0) < 1.0);
  CHECK(influence(30.0, 1.0) < 1.0);
  CHECK(influence(1000.0, 1.0) == 1.0);
  CHECK_THROWS_AS(influence(1.0, 0.0), DataError);
  CHECK_THROWS_AS(influence(1.0, -1.0), DataError);
}

TEST_CASE("triangle: perfect symmetry, ties broken by ascending id") {
  const DensityRanking r = rank_graph(complete_graph(3), 2);
  CHECK(r.scores[0] == r.scores[1]);
  CHECK(r.scores[1] == r.scores[2]);
  CHECK(r.order == std::vector<VertexId>{0, 1, 2});
  CHECK(r.descending);
}

TEST_CASE("star: leaves concentrate proximity and outscore the hub") {
  // K_{1,4}, l=2, c=0.15, sigma=1. Each closed form sums the influence of a
  // row of the truncated series: the hub spreads mass over four leaves while
  // a leaf holds one strong entry back to the hub.
  const double c = 0.15;
  const double hub_entry = c * (1 - c) / 4.0;            // hub -> one leaf
  const double leaf_to_hub = c * (1 - c);                // leaf -> hub directly
  const double leaf_to_leaf = c * (1 - c) * (1 - c) / 4.0;
  const double hub_expected = 4.0 * influence(hub_entry, 1.0);
  const double leaf_expected =
      influence(leaf_to_hub, 1.0) + 3.0 * influence(leaf_to_leaf, 1.0);

  const DensityRanking r = rank_graph(star_graph(4), 2);
  CHECK(r.scores[0] == doctest::Approx(hub_expected).epsilon(1e-14));
  CHECK(r.scores[1] == doctest::Approx(leaf_expected).epsilon(1e-14));
  CHECK(r.scores[0] == doctest::Approx(0.06324468026019092).epsilon(1e-13));
  CHECK(r.scores[1] == doctest::Approx(0.10212705701892111).epsilon(1e-13));
  CHECK(r.scores[1] > r.scores[0]);
  // Leaves first (ties ascending), hub last.
  CHECK(r.order == std::vector<VertexId>{1, 2, 3, 4, 0});

  const DensityRanking asc = rank_graph(star_graph(4), 2, 1.0, false);
  CHECK(asc.order.front() == 0);
  CHECK_FALSE(asc.descending);
}

TEST_CASE("barbell: corridor attachment points rank above everything") {
  // barbell(5,4), l=3, c=0.15, sigma=1. Chain ends (5 and 8) funnel walks
  // back and forth to a handful of vertices; interior clique vertices spread
  // mass evenly; chain middles trail them.
  const DensityRanking r = rank_graph(barbell_graph(5, 4), 3);
  CHECK(r.scores[5] == doctest::Approx(0.14276076269387261).epsilon(1e-13));
  CHECK(r.scores[1] == doctest::Approx(0.14099725661087048).epsilon(1e-13));
  CHECK(r.scores[6] == doctest::Approx(0.13447691288525565).epsilon(1e-13));
  CHECK(r.scores[5] == r.scores[8]);   // mirror symmetry
  CHECK(r.scores[0] == r.scores[1]);   // interior clique vertices tie
  CHECK(r.scores[1] == r.scores[2]);
  CHECK(r.scores[6] == r.scores[7]);
  CHECK(r.scores[1] > r.scores[6]);    // clique interior above chain middle

  const std::set<VertexId> top5(r.order.begin(), r.order.begin() + 5);
  CHECK(top5 == std::set<VertexId>{0, 1, 2, 5, 8});
  CHECK(r.order == std::vector<VertexId>{5, 8, 0, 1, 2, 3, 10, 11, 12, 13, 4,
                                         9, 6, 7});
}

TEST_CASE("scores stay inside [0, n] and isolated vertices score zero") {
  const Graph g = make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  const DensityRanking r = rank_graph(g, 3);
  for (VertexId v = 0; v < 6; ++v) {
    CHECK(r.scores[v] >= 0.0);
    CHECK(r.scores[v] <= 6.0);
  }
  CHECK(r.scores[5] == 0.0);
  CHECK(r.order.back() == 5);

  const DensityRanking none = rank_graph(Graph(2, {}), 2);
  CHECK(none.scores == std::vector<double>{0.0, 0.0});
  CHECK(none.order == std::vector<VertexId>{0, 1});
}

TEST_CASE("scaling every edge weight leaves the ranking bit-identical") {
  const Graph a = erdos_renyi(15, 0.3, 21);
  std::vector<Edge> doubled = a.edges();
  for (Edge& e : doubled) e.weight *= 2.0;
  const Graph b(a.num_vertices(), std::move(doubled));
  const DensityRanking ra = rank_graph(a, 3);
  const DensityRanking rb = rank_graph(b, 3);
  CHECK(ra.scores == rb.scores);
  CHECK(ra.order == rb.order);
}

TEST_CASE("streaming scorer reproduces the materialized scorer exactly") {
  for (const Graph& g : {barbell_graph(4, 3), erdos_renyi(30, 0.2, 13)}) {
    const TransitionMatrix P = transition_matrix(g);
    const ProximityParams params{.l = 4, .c = 0.15};
    const DensityRanking dense =
        density_scores(proximity_exact(P, params), 0.8);
    const DensityRanking streamed = density_scores_streaming(P, params, 0.8);
    CHECK(dense.scores == streamed.scores);
    CHECK(dense.order == streamed.order);
  }
}

TEST_CASE("auto sigma averages the positive off-diagonal mass") {
  const ProximityMatrix R =
      proximity_exact(transition_matrix(complete_graph(3)), {.l = 1, .c = 0.15});
  // All six off-diagonal entries equal 0.5 * 0.15 * 0.85.
  CHECK(auto_sigma(R) == doctest::Approx(0.06375).epsilon(1e-14));

  const ProximityMatrix lonely =
      proximity_exact(transition_matrix(Graph(2, {})), {.l = 2, .c = 0.15});
  CHECK_THROWS_AS(auto_sigma(lonely), DataError);
}

TEST_CASE("initializer selection") {
  const DensityRanking r = rank_graph(barbell_graph(5, 4), 3);

  const auto top5 = select_initializers(r, 5, 0.0, 1);
  CHECK(top5 == std::vector<VertexId>{0, 1, 2, 5, 8});

  const auto everyone = select_initializers(r, 14, 0.0, 1);
  CHECK(everyone.size() == 14);
  CHECK(std::is_sorted(everyone.begin(), everyone.end()));

  // Half random: ceil(0.5 * 4) = 2 ranked leaders plus 2 random others.
  const auto mixed = select_initializers(r, 4, 0.5, 7);
  CHECK(mixed.size() == 4);
  CHECK(std::is_sorted(mixed.begin(), mixed.end()));
  CHECK(std::set<VertexId>(mixed.begin(), mixed.end()).size() == 4);
  CHECK(std::count(mixed.begin(), mixed.end(), 5) == 1);
  CHECK(std::count(mixed.begin(), mixed.end(), 8) == 1);

  const auto wild = select_initializers(r, 3, 1.0, 3);
  CHECK(wild.size() == 3);
  CHECK(std::set<VertexId>(wild.begin(), wild.end()).size() == 3);

  CHECK(select_initializers(r, 4, 0.5, 7) == mixed);  // seed-deterministic

  CHECK_THROWS_AS(select_initializers(r, 15, 0.0, 1), DataError);   // k > n
  CHECK_THROWS_AS(select_initializers(r, 3, -0.1, 1), DataError);
  CHECK_THROWS_AS(select_initializers(r, 3, 1.5, 1), DataError);
}

TEST_CASE("ranking files round trip with their parameters") {
  TempDir tmp;
  DensityRanking r = rank_graph(barbell_graph(4, 2), 3, 0.9);
  r.seed = 77;
  const std::string csv = tmp.file("ranking.csv");
  const std::string json = tmp.file("ranking.json");
  save_ranking(r, csv, json);

  const DensityRanking back = load_ranking(csv, json);
  REQUIRE(back.scores.size() == r.scores.size());
  for (std::size_t i = 0; i < r.scores.size(); ++i)
    CHECK(back.scores[i] == r.scores[i]);  // %.17g keeps doubles exact
  CHECK(back.order == r.order);
  CHECK(back.descending == r.descending);
  CHECK(back.sigma == r.sigma);
  CHECK(back.l == r.l);
  CHECK(back.c == r.c);
  CHECK(back.seed == r.seed);

  // Tampering with the rank column breaks the permutation check.
  std::string body = testsupport::read_file(csv);
  const auto pos = body.rfind(",");
  body.replace(pos, std::string::npos, ",1\n");
  testsupport::write_file(csv, body);
  CHECK_THROWS_AS(load_ranking(csv, json), DataError);

  testsupport::write_file(csv, "bogus,header,row\n");
  CHECK_THROWS_AS(load_ranking(csv, json), DataError);
}
