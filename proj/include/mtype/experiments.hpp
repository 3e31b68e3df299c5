#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtype/certificate.hpp"
#include "mtype/generators.hpp"
#include "mtype/lifting.hpp"
#include "mtype/markov.hpp"
#include "mtype/metric_graph.hpp"
#include "mtype/metric_space.hpp"
#include "mtype/optimizer.hpp"
#include "mtype/rng.hpp"
#include "mtype/scalar.hpp"
#include "mtype/wasserstein.hpp"

namespace mtype {

// Uniform weight on every closest pair; on a cycle or a Hamming cube this is
// the simple nearest-neighbor walk.
inline ReversibleChain nearest_neighbor_chain(const FiniteMetricSpace& x) {
  const std::size_t n = x.size();
  if (n < 2) throw OutOfRange("need at least 2 points");
  std::optional<Scalar> dmin;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Scalar& d = x.dist(i, j);
      if (!dmin || d < *dmin) dmin = d;
    }
  const double tol = x.exact() ? 0.0 : x.tol();
  SquareMatrix<Rational> w(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (approx_eq(x.dist(i, j), *dmin, tol)) {
        w(i, j) = 1;
        w(j, i) = 1;
      }
  return chain_from_weights(WeightParam::create(std::move(w)));
}

struct TorusRow {
  std::size_t n = 0, k = 0;
  int t = 0;
  std::string walk;  // "identity", "simple", "optimized"
  bool skipped = false;
  std::string note;
  Rational base_ratio, lifted_ratio, scaled_ratio;
  bool lift_ge_base = false;
  bool scale_invariant = false;
};

struct TorusReport {
  int t = 2;
  double tol = 1e-6;
  std::vector<TorusRow> rows;
  double max_ratio = 0.0;
  bool all_hold = true;
};

// For each cycle(n) and each k-fold cyclic covering cycle(kn) -> cycle(n):
// run identity, simple, and optimized walks on the base, lift them along the
// covering, rescale the cover by 1/k, and confirm the lift never loses ratio
// and that the 1/k rescale leaves the ratio unchanged.
inline TorusReport experiment_torus(std::size_t nmax, std::size_t kmax, int t,
                                    double tol = 1e-6,
                                    OptimizerConfig cfg = {}) {
  if (nmax < 3 || kmax < 2) throw OutOfRange("need nmax >= 3 and kmax >= 2");
  if (t < 1) throw OutOfRange("time must be >= 1");
  TorusReport report;
  report.t = t;
  report.tol = tol;
  const int cap = std::max(t, kDefaultMaxT);

  for (std::size_t n = 3; n <= nmax; ++n) {
    const FiniteMetricSpace base_space = cycle(static_cast<int>(n));
    const MetricGraph base_graph = cycle_graph(static_cast<int>(n));

    const auto walk_of = [&](const std::string& kind)
        -> std::optional<MarkovWalk> {
      if (kind == "identity") {
        std::vector<Rational> pi(n, Rational(1, static_cast<long long>(n)));
        SquareMatrix<Rational> a(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) a(i, i) = 1;
        return MarkovWalk::identity_walk(
            ReversibleChain::create(std::move(pi), std::move(a)), base_space);
      }
      if (kind == "simple")
        return MarkovWalk::identity_walk(nearest_neighbor_chain(base_space),
                                         base_space);
      OptimizerReport opt = maximize(base_space, 2, t, cfg);
      if (!opt.found) return std::nullopt;
      return MarkovWalk::create(chain_from_weights(opt.best), base_space,
                                opt.f);
    };

    for (std::size_t k = 2; k <= kmax; ++k) {
      const MetricGraph cover_graph = cycle_graph(static_cast<int>(k * n));
      std::vector<std::size_t> vertex_map(k * n);
      for (std::size_t v = 0; v < k * n; ++v) vertex_map[v] = v % n;

      for (const std::string kind : {"identity", "simple", "optimized"}) {
        TorusRow row;
        row.n = n;
        row.k = k;
        row.t = t;
        row.walk = kind;
        try {
          const auto w = walk_of(kind);
          if (!w) throw DegenerateWalk("no non-degenerate candidate found");
          row.base_ratio = ratio(*w, 2, t, cap).rational();
          LiftedWalk lift =
              covering_lift_walk(*w, cover_graph, base_graph, vertex_map);
          row.lifted_ratio = ratio(lift.walk, 2, t, cap).rational();
          const MarkovWalk scaled = MarkovWalk::create(
              lift.walk.chain,
              scale(lift.walk.space,
                    Scalar(Rational(1, static_cast<long long>(k)))),
              lift.walk.f);
          row.scaled_ratio = ratio(scaled, 2, t, cap).rational();
          row.lift_ge_base = row.lifted_ratio >= row.base_ratio;
          row.scale_invariant = row.scaled_ratio == row.lifted_ratio;
          const double r = Rational(row.lifted_ratio).convert_to<double>();
          report.max_ratio = std::max(report.max_ratio, r);
          if (!row.lift_ge_base || !row.scale_invariant ||
              Rational(row.base_ratio) > Rational(1) + Rational(tol) ||
              Rational(row.lifted_ratio) > Rational(1) + Rational(tol))
            report.all_hold = false;
        } catch (const DegenerateWalk& e) {
          row.skipped = true;
          row.note = std::string("DegenerateWalk: ") + e.what();
        }
        report.rows.push_back(std::move(row));
      }
    }
  }
  return report;
}

struct HammingRow {
  int d = 0, t = 0;
  Rational simple_ratio;
  bool has_optimized = false;
  Rational optimized_ratio;
  bool increased_from_prev = false;
  bool exceeds_one = false;
};

struct HammingReport {
  std::vector<HammingRow> rows;
  bool simple_strictly_increasing = true;
  bool exceeds_one_from_4 = true;
};

// Simple-walk and (for small d) optimized ratios on the Hamming cube at
// T = d.  Even dimensions only: those carry the growth claim, and the cube
// of even dimension is a power of the 4-cycle.
inline HammingReport experiment_hamming(int dmax, int optimize_dmax = 2,
                                        OptimizerConfig cfg = {}) {
  if (dmax < 2 || dmax > 10) throw OutOfRange("dmax must lie in [2, 10]");
  HammingReport report;
  std::optional<Rational> prev;
  for (int d = 2; d <= dmax; d += 2) {
    HammingRow row;
    row.d = d;
    row.t = d;
    const FiniteMetricSpace cube = hamming_cube(d);
    const MarkovWalk simple =
        MarkovWalk::identity_walk(nearest_neighbor_chain(cube), cube);
    row.simple_ratio = ratio(simple, 2, d, std::max(d, kDefaultMaxT)).rational();
    row.exceeds_one = row.simple_ratio > 1;
    if (prev) {
      row.increased_from_prev = row.simple_ratio > *prev;
      if (!row.increased_from_prev) report.simple_strictly_increasing = false;
    }
    if (d >= 4 && !row.exceeds_one) report.exceeds_one_from_4 = false;
    prev = row.simple_ratio;

    if (d <= optimize_dmax) {
      OptimizerReport opt = maximize(cube, 2, d, cfg);
      if (opt.found) {
        row.has_optimized = true;
        row.optimized_ratio = opt.ratio;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

struct CantliftReport {
  bool submetry_ok = false;         // projection is a metric quotient map
  bool infeasible = false;          // the blocked mass system has no solution
  bool witness_verified = false;    // Farkas combination checks exactly
  bool feasible_variant_ok = false; // perturbed masses admit exact masses
  bool no_junction_ok = false;      // dropping the junction restores feasibility
  std::string summary;
};

// The counterexample pipeline: the 12-cycle-with-chords graph maps onto the
// 4-point base as a submetry, yet no reversible lift of the base chain can
// satisfy the fiber-mass bookkeeping; the certificate is an exact Farkas
// witness.  Perturbing the base masses to fit the forced proportions makes
// the same system solvable.
inline CantliftReport experiment_cantlift() {
  CantliftReport report;
  const FiniteMetricSpace base = cantlift_base_space();
  const FiniteMetricSpace cover = cantlift_cover_space();
  const std::vector<std::size_t> chi = cantlift_projection();
  report.submetry_ok = is_submetry(chi, cover, base);

  const InfeasibilityCertificate cert = cantlift_certificate();
  report.infeasible = !cert.result.feasible;
  report.witness_verified = !cert.result.feasible && cert.verify();

  const auto feasible = solve_fiber_mass_system(cantlift_feasible_masses(), true);
  report.feasible_variant_ok = feasible.result.feasible && feasible.verify();

  const auto relaxed = solve_fiber_mass_system(cantlift_chain().pi(), false);
  report.no_junction_ok = relaxed.result.feasible && relaxed.verify();

  report.summary = report.infeasible && report.witness_verified
                       ? "INFEASIBLE, certificate verified"
                       : "certificate check failed";
  return report;
}

struct WassersteinReport {
  int trials = 0;
  std::uint64_t seed = 1;
  double max_isometry_dev = 0.0;
  double max_oracle_dev = 0.0;
  int failures = 0;  // deviations above 1e-9
  bool ok = true;
};

// Random tuples on random rational spaces: the symmetrized power distance
// must match the transport distance of the merged empirical measures, and
// the assignment solver must match the permutation brute force.
inline WassersteinReport experiment_wasserstein(int trials,
                                                std::uint64_t seed = 1) {
  if (trials < 1) throw OutOfRange("need at least one trial");
  WassersteinReport report;
  report.trials = trials;
  report.seed = seed;
  for (int i = 0; i < trials; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const auto space = std::make_shared<const FiniteMetricSpace>(
        random_metric_space(static_cast<std::size_t>(rng.range(2, 7)), rng));
    const std::size_t n = static_cast<std::size_t>(rng.range(1, 7));
    const auto w = random_tuple(*space, n, rng);
    const auto q = random_tuple(*space, n, rng);
    for (int p = 1; p <= 3; ++p) {
      const Scalar spd = symmetrized_power_distance(*space, w, q, p);
      const Scalar viam = wp_rational(phi_n(space, w), phi_n(space, q), p);
      const double iso_dev = std::fabs((spd - viam).to_double());
      const double oracle_dev =
          std::fabs((wp_uniform(*space, w, q, p) - wp_bruteforce(*space, w, q, p))
                        .to_double());
      report.max_isometry_dev = std::max(report.max_isometry_dev, iso_dev);
      report.max_oracle_dev = std::max(report.max_oracle_dev, oracle_dev);
      if (iso_dev > 1e-9 || oracle_dev > 1e-9) {
        ++report.failures;
        report.ok = false;
      }
    }
  }
  return report;
}

}  // namespace mtype
