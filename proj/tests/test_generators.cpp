#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "mtype/generators.hpp"
#include "mtype/lifting.hpp"
#include "mtype/rng.hpp"

using namespace mtype;

TEST_CASE("rng bounded draws stay in range and are deterministic") {
  Rng a(123, 0), b(123, 0), c(123, 1);
  bool diverged = false;
  for (int i = 0; i < 2000; ++i) {
    const auto v = a.below(17);
    CHECK(v < 17);
    CHECK(v == b.below(17));
    if (v != c.below(17)) diverged = true;
    const auto r = a.range(-5, 9);
    b.range(-5, 9);
    c.range(-5, 9);
    CHECK(r >= -5);
    CHECK(r <= 9);
  }
  CHECK(diverged);  // substreams separate
  CHECK(a.uniform() >= 0.0);
  CHECK(a.uniform() < 1.0);
  CHECK(a.exponential() >= 0.0);
}

TEST_CASE("rng small ranges hit every value") {
  Rng rng(5, 0);
  std::set<long long> seen;
  for (int i = 0; i < 200; ++i) seen.insert(rng.range(2, 4));
  CHECK(seen == std::set<long long>{2, 3, 4});
}

TEST_CASE("random spaces are valid metric spaces with unit-range distances") {
  Rng rng(9, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.below(6));
    auto x = random_metric_space(n, rng);  // from_matrix validates
    REQUIRE(x.size() == n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        CHECK(x.dist(i, j) >= 1);
        CHECK(x.dist(i, j) <= 2);
      }
  }
}

TEST_CASE("random chains are reversible and stochastic") {
  Rng rng(10, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.below(6));
    auto z = random_chain(n, rng);  // create() validates both properties
    Rational total = 0;
    for (std::size_t i = 0; i < n; ++i) total += z.pi(i);
    CHECK(total == 1);
  }
}

TEST_CASE("generator streams are reproducible") {
  Rng r1(77, 3), r2(77, 3);
  auto x1 = random_metric_space(5, r1);
  auto x2 = random_metric_space(5, r2);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) CHECK(x1.dist(i, j) == x2.dist(i, j));
  auto z1 = random_chain(4, r1);
  auto z2 = random_chain(4, r2);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(z1.pi(i) == z2.pi(i));
    for (std::size_t j = 0; j < 4; ++j) CHECK(z1.a(i, j) == z2.a(i, j));
  }
}

TEST_CASE("random group instances validate as isometry groups") {
  Rng rng(21, 0);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.below(5));
    auto inst = random_group_instance(n, rng);
    inst.group.validate_on(inst.space);  // throws on failure
    CHECK(inst.group.degree() == n);
  }
}

TEST_CASE("random lift instances are regular and lift cleanly") {
  Rng rng(33, 0);
  for (int trial = 0; trial < 25; ++trial) {
    auto inst = random_lift_instance(5, 4, rng);
    REQUIRE(is_regular(inst.spec));
    auto lifted = lift_chain(inst.base, inst.spec);
    CHECK(verify_lift(lifted, inst.base, inst.spec.sigma()));
  }
}

TEST_CASE("random measures are probability measures on distinct points") {
  Rng rng(14, 0);
  auto space = std::make_shared<const FiniteMetricSpace>(hamming_cube(3));
  for (int trial = 0; trial < 20; ++trial) {
    auto mu = random_measure(space, 5, rng);
    Rational total = 0;
    std::set<std::size_t> pts;
    for (std::size_t i = 0; i < mu.support.size(); ++i) {
      total += mu.weights[i];
      CHECK(mu.weights[i] > 0);
      pts.insert(mu.support[i]);
    }
    CHECK(total == 1);
    CHECK(pts.size() == mu.support.size());
    CHECK(mu.support.size() <= 5);
  }
}

TEST_CASE("random tuples index into the space") {
  Rng rng(2, 0);
  auto x = cycle(6);
  auto t = random_tuple(x, 40, rng);
  REQUIRE(t.size() == 40);
  for (auto v : t) CHECK(v < 6);
}
