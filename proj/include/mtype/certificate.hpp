#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mtype/linear_feasibility.hpp"
#include "mtype/markov.hpp"
#include "mtype/metric_graph.hpp"
#include "mtype/metric_space.hpp"

namespace mtype {

// Data of the no-lift example: a 4-point base space carried by a 5-edge
// graph, a 12-vertex cover-like graph over it, a reversible chain on the
// base, and the projection sending vertex i (0-based) to i mod 4.

inline MetricGraph cantlift_base_graph() {
  std::vector<std::string> labels{"x1", "x2", "x3", "x4"};
  std::vector<MetricGraph::Edge> edges;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (!(i == 1 && j == 3)) edges.push_back({i, j, Rational(1)});
  return MetricGraph::create(std::move(labels), std::move(edges));
}

inline MetricGraph cantlift_cover_graph() {
  std::vector<std::string> labels;
  for (int i = 1; i <= 12; ++i) labels.push_back("y" + std::to_string(i));
  std::vector<MetricGraph::Edge> edges;
  for (std::size_t i = 0; i < 12; ++i) edges.push_back({i, (i + 1) % 12, Rational(1)});
  // Chords at the two junction vertices (1-based 3 and 9).
  edges.push_back({2, 0, Rational(1)});
  edges.push_back({2, 4, Rational(1)});
  edges.push_back({8, 6, Rational(1)});
  edges.push_back({8, 10, Rational(1)});
  return MetricGraph::create(std::move(labels), std::move(edges));
}

inline FiniteMetricSpace cantlift_base_space() {
  return graph_metric(cantlift_base_graph());
}

inline FiniteMetricSpace cantlift_cover_space() {
  return graph_metric(cantlift_cover_graph());
}

// Projection taking cover vertex i (0-based) to base vertex i mod 4.
inline std::vector<std::size_t> cantlift_projection() {
  std::vector<std::size_t> chi(12);
  for (std::size_t i = 0; i < 12; ++i) chi[i] = i % 4;
  return chi;
}

inline ReversibleChain cantlift_chain() {
  std::vector<Rational> pi{Rational(3, 10), Rational(2, 10), Rational(3, 10),
                           Rational(2, 10)};
  SquareMatrix<Rational> a{
      {Rational(0), Rational(1, 3), Rational(1, 3), Rational(1, 3)},
      {Rational(1, 2), Rational(0), Rational(1, 2), Rational(0)},
      {Rational(1, 3), Rational(1, 3), Rational(0), Rational(1, 3)},
      {Rational(1, 2), Rational(0), Rational(1, 2), Rational(0)}};
  return ReversibleChain::create(std::move(pi), std::move(a));
}

// The linear system a hypothetical metric lift's fiber masses q_1..q_12
// would have to satisfy, given base state masses p_1..p_4:
//   - q_j >= 0;
//   - consecutive mass ratios agree: q_i/p_{r(i)} = q_{i+1}/p_{r(i+1)}
//     (cleared to p_{r(i+1)} q_i - p_{r(i)} q_{i+1} = 0), i = 1..11;
//   - each fiber's masses sum to the base mass: sum_{j = i mod 4} q_j = p_i;
//   - at the junction vertex, q_3 = q_1 + q_5 (optional: the constraint
//     contributed by the two chords).
// r(i) here is the 1-based index mod 4.
inline std::vector<LinearConstraint> fiber_mass_system(
    const std::vector<Rational>& p, bool include_junction = true) {
  if (p.size() != 4) throw LengthMismatch("base mass vector must have 4 entries");
  constexpr std::size_t n = 12;
  const auto r4 = [](std::size_t j) { return j % 4; };  // 0-based
  std::vector<LinearConstraint> rows;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> c(n, 0);
    c[j] = -1;
    rows.push_back(LinearConstraint::le(std::move(c), 0));
  }
  for (std::size_t j = 0; j + 1 < n; ++j) {
    std::vector<Rational> c(n, 0);
    c[j] = p[r4(j + 1)];
    c[j + 1] = -p[r4(j)];
    rows.push_back(LinearConstraint::eq(std::move(c), 0));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<Rational> c(n, 0);
    for (std::size_t j = i; j < n; j += 4) c[j] = 1;
    rows.push_back(LinearConstraint::eq(std::move(c), p[i]));
  }
  if (include_junction) {
    std::vector<Rational> c(n, 0);
    c[2] = 1;
    c[0] = -1;
    c[4] = -1;
    rows.push_back(LinearConstraint::eq(std::move(c), 0));
  }
  return rows;
}

// A solved fiber-mass system together with its exact verification.
struct InfeasibilityCertificate {
  std::vector<LinearConstraint> constraints;
  std::size_t nvars = 0;
  Feasibility result;

  bool verify() const {
    if (result.feasible) {
      if (result.point.size() != nvars) return false;
      for (const auto& row : constraints) {
        Rational lhs = 0;
        for (std::size_t v = 0; v < nvars; ++v)
          lhs += row.coef[v] * result.point[v];
        if (row.kind == LinearConstraint::Kind::Eq ? lhs != row.rhs
                                                   : lhs > row.rhs)
          return false;
      }
      return true;
    }
    return verify_infeasibility_witness(constraints, nvars, result.witness);
  }
};

inline InfeasibilityCertificate solve_fiber_mass_system(
    const std::vector<Rational>& p, bool include_junction = true) {
  InfeasibilityCertificate cert;
  cert.constraints = fiber_mass_system(p, include_junction);
  cert.nvars = 12;
  cert.result = solve_linear_system(cert.constraints, cert.nvars);
  return cert;
}

// The certificate on the example's own data: infeasible, with an exact
// witness combination of the rows.
inline InfeasibilityCertificate cantlift_certificate() {
  const auto z = cantlift_chain();
  return solve_fiber_mass_system(z.pi());
}

// Perturbed base masses satisfying p3 = 2 p1 make the same schema feasible.
inline std::vector<Rational> cantlift_feasible_masses() {
  return {Rational(2, 10), Rational(3, 20), Rational(4, 10), Rational(5, 20)};
}

}  // namespace mtype
