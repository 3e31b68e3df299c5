#include <catch2/catch_amalgamated.hpp>

#include "mtype/json_io.hpp"

using namespace mtype;

TEST_CASE("scalar serialization") {
  CHECK(scalar_to_json(Scalar(Rational(3, 4))) == json("3/4"));
  CHECK(scalar_to_json(Scalar(5)) == json("5"));
  CHECK(scalar_to_json(Scalar(Real("0.25"))) == json(0.25));
  CHECK(rational_from_json(json("3/4")) == Rational(3, 4));
  CHECK(rational_from_json(json("-7/2")) == Rational(-7, 2));
  CHECK(rational_from_json(json(5)) == Rational(5));
  CHECK(rational_from_json(json(0.5)) == Rational(1, 2));
  CHECK_THROWS_AS(rational_from_json(json(nullptr)), Error);
  CHECK(scalar_from_json(json("1/3")).is_rational());
  CHECK_FALSE(scalar_from_json(json("1/3"), true).is_rational());
}

TEST_CASE("space round trip keeps mode and values") {
  auto x = cycle(5);
  auto j = space_to_json(x);
  CHECK(j.at("mode") == "exact");
  CHECK(j.at("dist")[0][1] == json("1"));
  auto back = space_from_json(j);
  CHECK(back == x);

  auto sf = snowflake(x, 0.5);
  auto js = space_to_json(sf);
  CHECK(js.at("mode") == "real");
  auto backs = space_from_json(js);
  REQUIRE_FALSE(backs.exact());
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t k = 0; k < 5; ++k)
      CHECK(approx_eq(backs.dist(i, k), sf.dist(i, k), 1e-12));
}

TEST_CASE("space JSON validation") {
  CHECK_THROWS_AS(space_from_json(json{{"labels", {"a", "b"}}}), Error);
  json bad{{"labels", {"a", "b"}}, {"dist", json::array({json::array({"0"})})}};
  CHECK_THROWS_AS(space_from_json(bad), LengthMismatch);
}

TEST_CASE("graph round trip") {
  auto g = cycle_graph(6);
  auto j = graph_to_json(g);
  REQUIRE(j.at("edges").size() == 6);
  CHECK(j.at("edges")[0].size() == 3);
  auto back = graph_from_json(j);
  auto m1 = graph_metric(g);
  auto m2 = graph_metric(back);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t k = 0; k < 6; ++k) CHECK(m1.dist(i, k) == m2.dist(i, k));
}

TEST_CASE("chain and walk round trips") {
  auto z = cantlift_chain();
  auto j = chain_to_json(z);
  auto back = chain_from_json(j);
  REQUIRE(back.size() == z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    CHECK(back.pi(i) == z.pi(i));
    for (std::size_t k = 0; k < z.size(); ++k) CHECK(back.a(i, k) == z.a(i, k));
  }

  auto w = MarkovWalk::create(cantlift_chain(), cantlift_base_space(),
                              {1, 0, 3, 2});
  auto jw = walk_to_json(w);
  REQUIRE(jw.contains("f"));
  auto backw = walk_from_json(jw, w.space);
  CHECK(backw.f == w.f);
  CHECK(backw.chain.pi(0) == w.chain.pi(0));

  // Without "f" the identity map is implied.
  auto jz = chain_to_json(z);
  auto idw = walk_from_json(jz, cantlift_base_space());
  for (std::size_t i = 0; i < idw.f.size(); ++i) CHECK(idw.f[i] == i);
}

TEST_CASE("measure round trip with pinned shape") {
  auto space = std::make_shared<const FiniteMetricSpace>(cycle(4));
  auto mu = EmpiricalMeasure::create(space, {0, 2},
                                     {Rational(1, 3), Rational(2, 3)});
  auto j = measure_to_json(mu, json("base"));
  CHECK(j.at("space") == json("base"));
  REQUIRE(j.at("atoms").size() == 2);
  CHECK(j.at("atoms")[0].at("point") == 0);
  CHECK(j.at("atoms")[0].at("w") == json("1/3"));
  CHECK(j.at("atoms")[1].at("point") == 2);
  CHECK(j.at("atoms")[1].at("w") == json("2/3"));
  auto back = measure_from_json(j, space);
  CHECK(back.support == mu.support);
  CHECK(back.weights == mu.weights);
}

TEST_CASE("lift spec round trip with pinned shape") {
  auto spec = LiftSpec::create(4, cantlift_projection(),
                               {{0, 1}, {1, 0}, {4, 5}, {5, 4}});
  auto j = liftspec_to_json(spec);
  CHECK(j.at("sigma").get<std::vector<std::size_t>>() == spec.sigma());
  REQUIRE(j.at("E").is_array());
  CHECK(j.at("E")[0].size() == 2);
  auto back = liftspec_from_json(j);
  CHECK(back.sigma() == spec.sigma());
  CHECK(back.base_size() == spec.base_size());
  CHECK(back.e().pairs == spec.e().pairs);

  // base_size can be forced wider than 1 + max(sigma).
  json widened{{"sigma", {0, 0}}, {"E", json::array({json::array({0, 1})})},
               {"base_size", 3}};
  CHECK_THROWS_AS(liftspec_from_json(widened), NotSurjective);
}

TEST_CASE("optimizer config round trip and defaults") {
  OptimizerConfig cfg;
  cfg.restarts = 5;
  cfg.copies = 2;
  cfg.seed = 99;
  cfg.max_t = 12;
  auto j = optimizer_config_to_json(cfg);
  auto back = optimizer_config_from_json(j);
  CHECK(back.restarts == 5);
  CHECK(back.copies == 2);
  CHECK(back.seed == 99);
  CHECK(back.max_t == 12);
  auto dflt = optimizer_config_from_json(json::object());
  CHECK(dflt.restarts == OptimizerConfig{}.restarts);
}

TEST_CASE("optimizer report serialization carries the exact ratio") {
  OptimizerConfig cfg;
  cfg.restarts = 2;
  cfg.max_iters = 10;
  SquareMatrix<Scalar> m(2, Scalar(0));
  m(0, 1) = m(1, 0) = Scalar(1);
  auto x = FiniteMetricSpace::from_matrix({"a", "b"}, std::move(m));
  auto rep = maximize(x, 2, 2, cfg);
  auto j = optimizer_report_to_json(rep);
  CHECK(j.at("found") == true);
  CHECK(parse_rational(j.at("ratio").get<std::string>()) == rep.ratio);
  CHECK(j.at("restarts").size() == 2);
  CHECK(j.at("weights").size() == 2);
}

TEST_CASE("space generators from JSON") {
  CHECK(space_from_generator(json{{"gen", "cycle"}, {"n", 6}}) == cycle(6));
  CHECK(space_from_generator(json{{"gen", "hamming"}, {"d", 3}}) ==
        hamming_cube(3));
  auto t = space_from_generator(json{{"gen", "torus"}, {"k", 4}, {"d", 2}});
  CHECK(t.size() == 16);
  auto r1 = space_from_generator(json{{"gen", "random"}, {"n", 5}, {"seed", 7}});
  auto r2 = space_from_generator(json{{"gen", "random"}, {"n", 5}, {"seed", 7}});
  CHECK(r1 == r2);
  auto g = space_from_generator(
      json{{"gen", "graph"},
           {"labels", {"a", "b", "c"}},
           {"edges", json::array({json::array({0, 1, "1"}),
                                  json::array({1, 2, "1/2"})})}});
  CHECK(g.dist(0, 2) == Scalar(Rational(3, 2)));
  CHECK_THROWS_AS(space_from_generator(json{{"gen", "nope"}}), Error);
  // Dispatcher: explicit matrices still work through the same entry point.
  auto via_any = space_from_any_json(space_to_json(cycle(4)));
  CHECK(via_any == cycle(4));
}
