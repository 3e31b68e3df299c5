#include <catch2/catch_amalgamated.hpp>

#include "mtype/certificate.hpp"
#include "mtype/metric_graph.hpp"

using namespace mtype;

TEST_CASE("path graph metric") {
  auto g = MetricGraph::create({"1", "2", "3"},
                               {{0, 1, Rational(1)}, {1, 2, Rational(1)}});
  auto x = graph_metric(g);
  CHECK(x.dist(0, 2) == Scalar(2));
  CHECK(x.dist(0, 1) == Scalar(1));
}

TEST_CASE("graph validation rejects bad inputs") {
  CHECK_THROWS_AS(MetricGraph::create({"a", "b", "c"}, {{0, 1, Rational(1)}}),
                  Disconnected);
  CHECK_THROWS_AS(MetricGraph::create({"a", "b"}, {{0, 0, Rational(1)}}), Error);
  CHECK_THROWS_AS(MetricGraph::create({"a", "b"}, {{0, 1, Rational(0)}}), Error);
  CHECK_THROWS_AS(MetricGraph::create({"a"}, {{0, 1, Rational(1)}}),
                  IndexOutOfRange);
}

TEST_CASE("the 12-vertex cover graph has 16 edges and the right metric") {
  auto g = cantlift_cover_graph();
  CHECK(g.size() == 12);
  CHECK(g.edges().size() == 16);
  auto x = graph_metric(g);
  // Chords at the junctions shorten trips across them.
  CHECK(x.dist(0, 2) == Scalar(1));
  CHECK(x.dist(2, 4) == Scalar(1));
  CHECK(x.dist(0, 4) == Scalar(2));
  CHECK(x.dist(0, 6) == Scalar(4));
}

TEST_CASE("the 5-edge base graph realizes the stretched pair") {
  auto g = cantlift_base_graph();
  CHECK(g.edges().size() == 5);
  auto x = graph_metric(g);
  CHECK(x.dist(1, 3) == Scalar(2));
  CHECK(x.dist(0, 1) == Scalar(1));
  CHECK(x.dist(0, 2) == Scalar(1));
}

TEST_CASE("cycle_graph matches the cycle metric") {
  auto x = graph_metric(cycle_graph(6));
  auto y = cycle(6);
  REQUIRE(x.size() == y.size());
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) CHECK(x.dist(i, j) == y.dist(i, j));
}

TEST_CASE("lex-min shortest paths are shortest and reproducible") {
  auto g = cantlift_cover_graph();
  auto dist = detail::all_pairs_distances(g);
  auto p = lex_min_shortest_path(g, dist, 0, 6);
  REQUIRE(p.size() >= 2);
  CHECK(p.front() == 0);
  CHECK(p.back() == 6);
  Rational len = 0;
  for (std::size_t k = 0; k + 1 < p.size(); ++k) {
    bool found = false;
    for (const auto& [nb, e] : g.neighbors(p[k]))
      if (nb == p[k + 1]) {
        len += g.edges()[e].len;
        found = true;
        break;
      }
    REQUIRE(found);
  }
  CHECK(len == dist[0][6]);
  CHECK(p == lex_min_shortest_path(g, dist, 0, 6));
}
