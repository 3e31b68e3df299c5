#include <catch2/catch_amalgamated.hpp>

#include "mtype/bounds.hpp"

using namespace mtype;

namespace {

bool close(const Real& a, const Real& b, double rel = 1e-12) {
  const Real scale = std::max(Real(1), abs(b));
  return abs(a - b) <= Real(rel) * scale;
}

}  // namespace

TEST_CASE("wp bound closed forms") {
  CHECK(close(bound_wp(4, 1, 1), Real(32)));
  CHECK(close(bound_wp(4, 16, 1), Real(64)));
  CHECK(close(bound_wp(4, 1, 16), Real(64)));
  CHECK(close(bound_wp(2.5, 1, 1), 16 * sqrt(Real(5) / 2)));
  // Joint d, t scaling: both enter with exponent 1/2 - 1/p.
  CHECK(close(bound_wp(4, 4, 4), bound_wp(4, 1, 1) * 2));
}

TEST_CASE("w2 bound closed forms") {
  CHECK(close(bound_w2(4, 1), 4 * sqrt(Real(3))));
  CHECK(close(bound_w2(4, 16), 8 * sqrt(Real(3))));
  // The constant degenerates to 4 as p drops to 2.
  CHECK(close(bound_w2(2.000001, 1), Real(4), 1e-2));
  CHECK(bound_w2(2.000001, 1) > 4);
}

TEST_CASE("distortion bound closed forms") {
  const double e = std::exp(1.0);
  CHECK(close(bound_distortion(e, 1.0, 4, 1), Real(1) / 2));
  CHECK(close(bound_distortion(e, 1.0, 4, 16), Real(1) / 4));
  // At alpha = 1/2 the log factor disappears entirely.
  CHECK(close(bound_distortion(100, 0.5, 4, 1), Real(1) / 2));
  CHECK(close(bound_distortion(7, 0.5, 4, 1), bound_distortion(900, 0.5, 4, 1)));
  // C scales linearly.
  CHECK(close(bound_distortion(e, 1.0, 4, 1, 6.0), Real(3)));
}

TEST_CASE("zeta exponent") {
  CHECK(close(bound_zeta(4), Real(1) / 3));
  CHECK(close(bound_zeta(3), Real(1) / 4));
  CHECK(bound_zeta(2.001) > 0);
  CHECK(bound_zeta(1e9) < Real(1) / 2);
}

TEST_CASE("domain checks") {
  CHECK_THROWS_AS(bound_wp(2, 1, 1), OutOfRange);
  CHECK_THROWS_AS(bound_wp(4, 0, 1), OutOfRange);
  CHECK_THROWS_AS(bound_wp(4, 1, 0), OutOfRange);
  CHECK_THROWS_AS(bound_w2(1.5, 1), OutOfRange);
  CHECK_THROWS_AS(bound_w2(4, 0), OutOfRange);
  CHECK_THROWS_AS(bound_distortion(1, 1.0, 4, 1), OutOfRange);
  CHECK_THROWS_AS(bound_distortion(10, 0.49, 4, 1), OutOfRange);
  CHECK_THROWS_AS(bound_distortion(10, 1.01, 4, 1), OutOfRange);
  CHECK_THROWS_AS(bound_distortion(10, 1.0, 2, 1), OutOfRange);
  CHECK_THROWS_AS(bound_distortion(10, 1.0, 4, 0), OutOfRange);
  CHECK_THROWS_AS(bound_distortion(10, 1.0, 4, 1, 0.0), OutOfRange);
  CHECK_THROWS_AS(bound_zeta(2), OutOfRange);
}
