#include <catch2/catch_amalgamated.hpp>

#include <memory>

#include "mtype/generators.hpp"
#include "mtype/wasserstein.hpp"

using namespace mtype;

namespace {

std::shared_ptr<const FiniteMetricSpace> line3() {
  SquareMatrix<Scalar> m(3, Scalar(0));
  m(0, 1) = m(1, 0) = Scalar(1);
  m(1, 2) = m(2, 1) = Scalar(2);
  m(0, 2) = m(2, 0) = Scalar(3);
  return std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::from_matrix({"0", "1", "3"}, std::move(m)));
}

std::shared_ptr<const FiniteMetricSpace> segment() {
  SquareMatrix<Scalar> m(2, Scalar(0));
  m(0, 1) = m(1, 0) = Scalar(1);
  return std::make_shared<const FiniteMetricSpace>(
      FiniteMetricSpace::from_matrix({"a", "b"}, std::move(m)));
}

}  // namespace

TEST_CASE("measure validation") {
  auto x = segment();
  CHECK_THROWS_AS(EmpiricalMeasure::create(x, {0, 0}, {Rational(1, 2), Rational(1, 2)}),
                  Error);
  CHECK_THROWS_AS(EmpiricalMeasure::create(x, {0}, {Rational(1, 2)}), NotStochastic);
  CHECK_THROWS_AS(EmpiricalMeasure::create(x, {0, 1}, {Rational(3, 2), Rational(-1, 2)}),
                  NotStochastic);
  CHECK_THROWS_AS(EmpiricalMeasure::create(x, {2}, {Rational(1)}), IndexOutOfRange);
  auto mu = EmpiricalMeasure::create(x, {0, 1}, {Rational(1, 3), Rational(2, 3)});
  CHECK(mu.support.size() == 2);
}

TEST_CASE("coupling validation enforces the marginals") {
  auto x = segment();
  auto mu = EmpiricalMeasure::create(x, {0, 1}, {Rational(1, 3), Rational(2, 3)});
  auto nu = EmpiricalMeasure::create(x, {1}, {Rational(1)});
  auto c = Coupling::create(mu, nu, {{Rational(1, 3)}, {Rational(2, 3)}});
  CHECK(c.q[0][0] == Rational(1, 3));
  CHECK_THROWS_AS(Coupling::create(mu, nu, {{Rational(2, 3)}, {Rational(1, 3)}}),
                  NotStochastic);
  CHECK_THROWS_AS(Coupling::create(mu, nu, {{Rational(1, 3)}}), LengthMismatch);
}

TEST_CASE("uniform transport distance on singletons is the point distance") {
  auto x = line3();
  CHECK(wp_uniform(*x, {0}, {2}, 1) == Scalar(3));
  CHECK(wp_uniform(*x, {1}, {1}, 2) == Scalar(0));
}

TEST_CASE("the two-atom line example costs 3/2 at p = 1") {
  auto x = line3();
  CHECK(wp_uniform(*x, {0, 1}, {1, 2}, 1) == Scalar(Rational(3, 2)));
  CHECK(wp_bruteforce(*x, {0, 1}, {1, 2}, 1) == Scalar(Rational(3, 2)));
  CHECK(approx_eq(symmetrized_power_distance(*x, {0, 1}, {1, 2}, 1),
                  Scalar(Rational(3, 2))));
}

TEST_CASE("identical tuples are at distance zero") {
  auto x = line3();
  CHECK(wp_uniform(*x, {0, 1, 2}, {0, 1, 2}, 2) == Scalar(0));
  CHECK(symmetrized_power_distance(*x, {0, 1, 2}, {2, 0, 1}, 2) == Scalar(0));
}

TEST_CASE("brute force is capped at 8 atoms") {
  auto x = segment();
  std::vector<std::size_t> u(9, 0), v(9, 1);
  CHECK_THROWS_AS(wp_bruteforce(*x, u, v, 1), TooLarge);
  CHECK_THROWS_AS(wp_uniform(*x, {0}, {0, 1}, 1), LengthMismatch);
  CHECK_THROWS_AS(wp_uniform(*x, {0}, {0}, 0), InvalidExponent);
}

TEST_CASE("rational transport distances") {
  auto x = segment();
  auto mu = EmpiricalMeasure::create(x, {0, 1}, {Rational(1, 3), Rational(2, 3)});
  auto nu = EmpiricalMeasure::create(x, {1}, {Rational(1)});
  CHECK(wp_rational(mu, mu, 1) == Scalar(0));
  CHECK(wp_rational(mu, nu, 1) == Scalar(Rational(1, 3)));
  auto da = EmpiricalMeasure::create(x, {0}, {Rational(1)});
  auto db = EmpiricalMeasure::create(x, {1}, {Rational(1)});
  CHECK(wp_rational(da, db, 1) == Scalar(1));
  CHECK(wp_rational(da, db, 3) == root(Scalar(1), 3));
  // Denominators beyond the cap are refused.
  auto fine = EmpiricalMeasure::create(
      x, {0, 1}, {Rational(1, 100000), Rational(99999, 100000)});
  CHECK_THROWS_AS(wp_rational(fine, nu, 1, 10000), ResolutionTooLarge);
}

TEST_CASE("tuple measures merge repeated points") {
  auto x = line3();
  auto single = phi_n(x, {1});
  CHECK(single.support == std::vector<std::size_t>{1});
  CHECK(single.weights == std::vector<Rational>{1});
  auto merged = phi_n(x, {2, 2});
  CHECK(merged.support == std::vector<std::size_t>{2});
  CHECK(merged.weights == std::vector<Rational>{1});
  auto pair = phi_n(x, {2, 0});
  CHECK(pair.support == std::vector<std::size_t>{0, 2});
  CHECK(pair.weights == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
}

TEST_CASE("the embedding of tuples into measures is isometric") {
  Rng rng(17, 0);
  for (int trial = 0; trial < 40; ++trial) {
    auto space = std::make_shared<const FiniteMetricSpace>(
        random_metric_space(2 + static_cast<std::size_t>(rng.below(5)), rng));
    const std::size_t len = 1 + static_cast<std::size_t>(rng.below(6));
    auto u = random_tuple(*space, len, rng);
    auto v = random_tuple(*space, len, rng);
    for (int p : {1, 2, 3}) {
      auto direct = symmetrized_power_distance(*space, u, v, p);
      auto routed = wp_rational(phi_n(space, u), phi_n(space, v), p);
      Real dev = direct.real() - routed.real();
      if (dev < 0) dev = -dev;
      CHECK(dev <= Real("1e-9"));
      auto oracle = wp_bruteforce(*space, u, v, p);
      auto fast = wp_uniform(*space, u, v, p);
      Real dev2 = oracle.real() - fast.real();
      if (dev2 < 0) dev2 = -dev2;
      CHECK(dev2 <= Real("1e-9"));
    }
  }
}

TEST_CASE("measures on different spaces cannot be compared") {
  auto mu = EmpiricalMeasure::create(segment(), {0}, {Rational(1)});
  auto nu = EmpiricalMeasure::create(line3(), {0}, {Rational(1)});
  CHECK_THROWS_AS(wp_rational(mu, nu, 1), SpaceMismatch);
}
