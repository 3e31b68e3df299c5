#include <catch2/catch_amalgamated.hpp>

#include "mtype/certificate.hpp"
#include "mtype/isometry_group.hpp"
#include "mtype/metric_space.hpp"

using namespace mtype;

namespace {

FiniteMetricSpace two_points(const Scalar& d = Scalar(1)) {
  SquareMatrix<Scalar> m(2, Scalar(0));
  m(0, 1) = d;
  m(1, 0) = d;
  return FiniteMetricSpace::from_matrix({"a", "b"}, std::move(m));
}

}  // namespace

TEST_CASE("two points at distance one form a space") {
  auto x = two_points();
  CHECK(x.size() == 2);
  CHECK(x.dist(0, 1) == Scalar(1));
  CHECK(x.exact());
}

TEST_CASE("the four-point space with one stretched pair validates") {
  SquareMatrix<Scalar> m(4, Scalar(1));
  for (std::size_t i = 0; i < 4; ++i) m(i, i) = Scalar(0);
  m(1, 3) = Scalar(2);
  m(3, 1) = Scalar(2);
  auto x = FiniteMetricSpace::from_matrix({"x1", "x2", "x3", "x4"}, std::move(m));
  CHECK(x.dist(1, 3) == Scalar(2));
  CHECK(x == cantlift_base_space());
}

TEST_CASE("triangle violations are rejected with the triangle kind") {
  SquareMatrix<Scalar> m(3, Scalar(0));
  m(0, 1) = m(1, 0) = Scalar(1);
  m(1, 2) = m(2, 1) = Scalar(1);
  m(0, 2) = m(2, 0) = Scalar(3);
  try {
    FiniteMetricSpace::from_matrix({"1", "2", "3"}, std::move(m));
    FAIL("expected MetricViolation");
  } catch (const MetricViolation& e) {
    CHECK(e.kind == MetricViolation::Kind::Triangle);
  }
}

TEST_CASE("asymmetric and nonzero-diagonal matrices are rejected") {
  SquareMatrix<Scalar> m(2, Scalar(0));
  m(0, 1) = Scalar(1);
  m(1, 0) = Scalar(2);
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({"a", "b"}, std::move(m)),
                  MetricViolation);
  SquareMatrix<Scalar> m2(2, Scalar(1));
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({"a", "b"}, std::move(m2)),
                  MetricViolation);
  SquareMatrix<Scalar> m3(2, Scalar(0));
  CHECK_THROWS_AS(FiniteMetricSpace::from_matrix({"a", "b"}, std::move(m3)),
                  MetricViolation);
}

TEST_CASE("p_product of singletons is a singleton") {
  SquareMatrix<Scalar> one(1, Scalar(0));
  auto pt = FiniteMetricSpace::from_matrix({"p"}, SquareMatrix<Scalar>(one));
  auto q = FiniteMetricSpace::from_matrix({"q"}, std::move(one));
  CHECK(p_product(pt, q, 2.0).size() == 1);
}

TEST_CASE("2-product of two unit segments has sqrt(2) diagonals") {
  auto x = two_points();
  auto prod = p_product(x, x, 2.0);
  REQUIRE(prod.size() == 4);
  CHECK(approx_eq(prod.dist(0, 3), root(Scalar(2), 2)));
  CHECK(approx_eq(prod.dist(1, 2), root(Scalar(2), 2)));
  CHECK(prod.dist(0, 1) == Scalar(1));
}

TEST_CASE("1-product of two unit segments has diagonal 2") {
  auto x = two_points();
  auto prod = p_product(x, x, 1.0);
  CHECK(prod.dist(0, 3) == Scalar(2));
  CHECK(prod.dist(1, 2) == Scalar(2));
}

TEST_CASE("p_power at n=1 returns the space itself") {
  auto x = two_points();
  CHECK(p_power(x, 1, 2.0) == x);
}

TEST_CASE("p_power matches iterated p_product") {
  auto x = two_points();
  auto a = p_power(x, 2, 2.0);
  auto b = p_product(x, x, 2.0);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      CHECK(approx_eq(a.dist(i, j), b.dist(i, j)));
}

TEST_CASE("the 1-power cube matches the Hamming cube pointwise") {
  auto cube = p_power(two_points(), 3, 1.0);
  auto ham = hamming_cube(3);
  REQUIRE(cube.size() == ham.size());
  for (std::size_t i = 0; i < cube.size(); ++i)
    for (std::size_t j = 0; j < cube.size(); ++j)
      CHECK(cube.dist(i, j) == ham.dist(i, j));
}

TEST_CASE("scaling") {
  auto x = two_points();
  CHECK(scale(x, Scalar(1)) == x);
  CHECK(scale(x, Scalar(3)).dist(0, 1) == Scalar(3));
  CHECK(scale(scale(x, Scalar(2)), Scalar(Rational(1, 2))) == x);
  CHECK_THROWS_AS(scale(x, Scalar(0)), InvalidScale);
}

TEST_CASE("snowflake") {
  auto x = two_points(Scalar(4));
  CHECK(snowflake(x, 1.0) == x);
  CHECK(snowflake(x, 0.5).dist(0, 1).real() == Real(2));

  SquareMatrix<Scalar> m(3, Scalar(0));
  m(0, 1) = m(1, 0) = Scalar(1);
  m(1, 2) = m(2, 1) = Scalar(1);
  m(0, 2) = m(2, 0) = Scalar(2);
  auto path = FiniteMetricSpace::from_matrix({"1", "2", "3"}, std::move(m));
  auto half = snowflake(path, 0.5);
  CHECK(approx_eq(half.dist(0, 2), root(Scalar(2), 2)));
  CHECK_THROWS_AS(snowflake(path, 0.0), InvalidExponent);
  CHECK_THROWS_AS(snowflake(path, 1.5), InvalidExponent);
}

TEST_CASE("hamming cube distances count differing coordinates") {
  auto h1 = hamming_cube(1);
  CHECK(h1.size() == 2);
  CHECK(h1.dist(0, 1) == Scalar(1));
  auto h2 = hamming_cube(2);
  CHECK(h2.dist(0, 1) == Scalar(1));
  CHECK(h2.dist(0, 3) == Scalar(2));
  CHECK(hamming_cube(3).dist(0, 7) == Scalar(3));
}

TEST_CASE("cycle distances are arc lengths") {
  auto c4 = cycle(4);
  CHECK(c4.dist(0, 1) == Scalar(1));
  CHECK(c4.dist(0, 2) == Scalar(2));
  CHECK(cycle(6).dist(0, 3) == Scalar(3));
  CHECK_THROWS_AS(cycle(2), OutOfRange);
}

TEST_CASE("discrete torus uses Euclidean combination of circle distances") {
  auto t = discrete_torus(4, 2);
  // (0,0) is index 0, (2,2) is index 10.
  CHECK(approx_eq(t.dist(0, 10), root(Scalar(8), 2)));
  CHECK(t.dist(0, 1) == Scalar(1));
}

TEST_CASE("identity map is a submetry") {
  auto x = cycle(4);
  std::vector<std::size_t> chi{0, 1, 2, 3};
  CHECK(is_submetry(chi, x, x));
}

TEST_CASE("group quotient projections are submetries") {
  auto x = cycle(4);
  auto g = IsometryGroup::create({{0, 1, 2, 3}, {2, 3, 0, 1}});
  g.validate_on(x);
  auto [q, chi] = quotient_by_group(x, g);
  CHECK(q.size() == 2);
  CHECK(q.dist(0, 1) == Scalar(1));
  CHECK(is_submetry(chi, x, q));
}

TEST_CASE("the 12-to-4 vertex projection is a submetry") {
  CHECK(is_submetry(cantlift_projection(), cantlift_cover_space(),
                    cantlift_base_space()));
}

TEST_CASE("a non-submetry is detected") {
  // Collapsing the 4 cycle onto a 2-point space of distance 2 misses the
  // radius-1 ball around the image.
  auto x = cycle(4);
  auto y = two_points(Scalar(2));
  std::vector<std::size_t> chi{0, 0, 1, 1};
  CHECK_FALSE(is_submetry(chi, x, y));
}
