#include <catch2/catch_amalgamated.hpp>

#include "mtype/generators.hpp"
#include "mtype/isometry_group.hpp"
#include "mtype/metric_space.hpp"

using namespace mtype;

TEST_CASE("group shape validation") {
  CHECK_THROWS_AS(IsometryGroup::create({}), NotAGroup);
  CHECK_THROWS_AS(IsometryGroup::create({{0, 0}}), NotAGroup);
  CHECK_THROWS_AS(IsometryGroup::create({{0, 2}}), IndexOutOfRange);
}

TEST_CASE("validate_on checks identity, closure, and isometry") {
  auto x = cycle(4);
  // Rotation subgroup without the identity.
  auto no_id = IsometryGroup::create({{1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}});
  CHECK_THROWS_AS(no_id.validate_on(x), NotAGroup);
  // Identity plus one rotation is not closed.
  auto open = IsometryGroup::create({{0, 1, 2, 3}, {1, 2, 3, 0}});
  CHECK_THROWS_AS(open.validate_on(x), NotAGroup);
  // A transposition of adjacent cycle points distorts distances.
  SquareMatrix<Scalar> m(3, Scalar(0));
  m(0, 1) = m(1, 0) = Scalar(1);
  m(1, 2) = m(2, 1) = Scalar(2);
  m(0, 2) = m(2, 0) = Scalar(3);
  auto line = FiniteMetricSpace::from_matrix({"a", "b", "c"}, std::move(m));
  auto swap01 = IsometryGroup::create({{0, 1, 2}, {1, 0, 2}});
  CHECK_THROWS_AS(swap01.validate_on(line), NotIsometries);
}

TEST_CASE("trivial group quotient returns the space with identity projection") {
  auto x = cycle(5);
  auto [q, chi] = quotient_by_group(x, IsometryGroup::trivial(5));
  CHECK(q.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(chi[i] == i);
    for (std::size_t j = 0; j < x.size(); ++j)
      CHECK(q.dist(i, j) == x.dist(i, j));
  }
}

TEST_CASE("swap on two points collapses to a single point") {
  SquareMatrix<Scalar> m(2, Scalar(0));
  m(0, 1) = m(1, 0) = Scalar(1);
  auto x = FiniteMetricSpace::from_matrix({"a", "b"}, std::move(m));
  auto g = IsometryGroup::create({{0, 1}, {1, 0}});
  auto [q, chi] = quotient_by_group(x, g);
  CHECK(q.size() == 1);
  CHECK(chi == std::vector<std::size_t>{0, 0});
}

TEST_CASE("rotation by two folds the 4-cycle onto two points") {
  auto x = cycle(4);
  auto g = IsometryGroup::create({{0, 1, 2, 3}, {2, 3, 0, 1}});
  auto [q, chi] = quotient_by_group(x, g);
  REQUIRE(q.size() == 2);
  CHECK(q.dist(0, 1) == Scalar(1));
  CHECK(chi == std::vector<std::size_t>{0, 1, 0, 1});
}

TEST_CASE("orbits partition the points") {
  auto g = IsometryGroup::create({{0, 1, 2, 3}, {2, 3, 0, 1}});
  auto [orbs, orbit_of] = g.orbits();
  REQUIRE(orbs.size() == 2);
  CHECK(orbs[0] == std::vector<std::size_t>{0, 2});
  CHECK(orbs[1] == std::vector<std::size_t>{1, 3});
  CHECK(orbit_of == std::vector<std::size_t>{0, 1, 0, 1});
}

TEST_CASE("random group instances validate and project onto submetries") {
  Rng rng(7, 0);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(rng.below(6));
    auto inst = random_group_instance(n, rng);
    auto [q, chi] = quotient_by_group(inst.space, inst.group);
    CHECK(is_submetry(chi, inst.space, q));
  }
}
