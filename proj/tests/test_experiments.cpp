#include <catch2/catch_amalgamated.hpp>

#include "mtype/experiments.hpp"

using namespace mtype;

namespace {

// Expected squared displacement of the coordinate-flipping walk on the
// d-cube after t steps, from per-coordinate parities: with
// a = (1-2/d)^t and b = (1-4/d)^t,
//   E = d (1-a)/2 + d(d-1) (1-2a+b)/4,
// and the one-step energy is 1, so the ratio at time t is E/t.
Rational cube_ratio_oracle(int d, int t) {
  const auto powq = [](Rational base, int e) {
    Rational out = 1;
    for (int k = 0; k < e; ++k) out *= base;
    return out;
  };
  const Rational a = powq(1 - Rational(2, d), t);
  const Rational b = powq(1 - Rational(4, d), t);
  const Rational e = Rational(d) * (1 - a) / 2 +
                     Rational(d) * (d - 1) * (1 - 2 * a + b) / 4;
  return e / t;
}

}  // namespace

TEST_CASE("nearest neighbor chains") {
  auto srw = nearest_neighbor_chain(cycle(4));
  CHECK(srw.a(0, 1) == Rational(1, 2));
  CHECK(srw.a(0, 3) == Rational(1, 2));
  CHECK(srw.a(0, 2) == 0);
  CHECK(srw.a(0, 0) == 0);

  SquareMatrix<Scalar> m(3, Scalar(1));
  for (std::size_t i = 0; i < 3; ++i) m(i, i) = Scalar(0);
  auto uni = nearest_neighbor_chain(
      FiniteMetricSpace::from_matrix({"a", "b", "c"}, std::move(m)));
  CHECK(uni.a(0, 1) == Rational(1, 2));
  CHECK(uni.a(0, 2) == Rational(1, 2));

  SquareMatrix<Scalar> one(1, Scalar(0));
  CHECK_THROWS_AS(
      nearest_neighbor_chain(FiniteMetricSpace::from_matrix({"a"}, std::move(one))),
      OutOfRange);
}

TEST_CASE("torus experiment rows") {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 40;
  auto report = experiment_torus(4, 2, 2, 1e-6, cfg);
  REQUIRE(report.rows.size() == 6);  // n in {3,4}, k = 2, three walks each

  for (const auto& row : report.rows) {
    if (row.walk == "identity") {
      CHECK(row.skipped);
      CHECK(row.note.find("DegenerateWalk") != std::string::npos);
      continue;
    }
    REQUIRE_FALSE(row.skipped);
    CHECK(row.lift_ge_base);
    CHECK(row.scale_invariant);
    CHECK(row.lifted_ratio <= 1);
  }

  const auto& simple3 = report.rows[1];
  REQUIRE(simple3.walk == "simple");
  REQUIRE(simple3.n == 3);
  CHECK(simple3.base_ratio == Rational(1, 4));
  CHECK(simple3.lifted_ratio == 1);

  const auto& simple4 = report.rows[4];
  REQUIRE(simple4.walk == "simple");
  REQUIRE(simple4.n == 4);
  CHECK(simple4.base_ratio == 1);
  CHECK(simple4.lifted_ratio == 1);

  CHECK(report.all_hold);
  CHECK(report.max_ratio == 1.0);
  CHECK(report.t == 2);
}

TEST_CASE("torus experiment rejects bad parameters") {
  CHECK_THROWS_AS(experiment_torus(2, 2, 2), OutOfRange);
  CHECK_THROWS_AS(experiment_torus(4, 1, 2), OutOfRange);
  CHECK_THROWS_AS(experiment_torus(4, 2, 0), OutOfRange);
}

TEST_CASE("hamming growth table") {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.max_iters = 40;
  auto report = experiment_hamming(6, 2, cfg);
  REQUIRE(report.rows.size() == 3);

  CHECK(report.rows[0].d == 2);
  CHECK(report.rows[0].t == 2);
  CHECK(report.rows[0].simple_ratio == 1);
  CHECK_FALSE(report.rows[0].exceeds_one);
  CHECK(report.rows[0].has_optimized);
  CHECK(report.rows[0].optimized_ratio <= 1);
  CHECK(report.rows[0].optimized_ratio >= Rational(1, 2));

  CHECK(report.rows[1].d == 4);
  CHECK(report.rows[1].simple_ratio == Rational(9, 8));
  CHECK(report.rows[1].exceeds_one);
  CHECK(report.rows[1].increased_from_prev);
  CHECK_FALSE(report.rows[1].has_optimized);

  CHECK(report.rows[2].d == 6);
  CHECK(report.rows[2].simple_ratio == Rational(1085, 729));
  CHECK(report.rows[2].exceeds_one);
  CHECK(report.rows[2].increased_from_prev);

  for (const auto& row : report.rows)
    CHECK(row.simple_ratio == cube_ratio_oracle(row.d, row.t));

  CHECK(report.simple_strictly_increasing);
  CHECK(report.exceeds_one_from_4);
  CHECK_THROWS_AS(experiment_hamming(1), OutOfRange);
  CHECK_THROWS_AS(experiment_hamming(12), OutOfRange);
}

TEST_CASE("cube ratio oracle matches a direct energy computation") {
  for (int d = 2; d <= 4; d += 2)
    for (int t = 1; t <= 5; ++t) {
      const auto cube = hamming_cube(d);
      const auto w = MarkovWalk::identity_walk(nearest_neighbor_chain(cube), cube);
      CHECK(ratio(w, 2, t).rational() == cube_ratio_oracle(d, t));
    }
}

TEST_CASE("cantlift pipeline") {
  auto report = experiment_cantlift();
  CHECK(report.submetry_ok);
  CHECK(report.infeasible);
  CHECK(report.witness_verified);
  CHECK(report.feasible_variant_ok);
  CHECK(report.no_junction_ok);
  CHECK(report.summary == "INFEASIBLE, certificate verified");
}

TEST_CASE("wasserstein consistency sweep") {
  auto report = experiment_wasserstein(20, 5);
  CHECK(report.trials == 20);
  CHECK(report.seed == 5);
  CHECK(report.failures == 0);
  CHECK(report.ok);
  CHECK(report.max_isometry_dev <= 1e-9);
  CHECK(report.max_oracle_dev <= 1e-9);
  // Reruns reproduce the deviations bit for bit.
  auto again = experiment_wasserstein(20, 5);
  CHECK(again.max_isometry_dev == report.max_isometry_dev);
  CHECK(again.max_oracle_dev == report.max_oracle_dev);
  CHECK_THROWS_AS(experiment_wasserstein(0), OutOfRange);
}
