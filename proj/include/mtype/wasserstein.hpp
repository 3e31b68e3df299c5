#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <utility>
#include <vector>

#include "mtype/assignment.hpp"
#include "mtype/errors.hpp"
#include "mtype/metric_space.hpp"

namespace mtype {

// Finitely supported probability measure with exact rational weights on a
// shared space.
struct EmpiricalMeasure {
  std::shared_ptr<const FiniteMetricSpace> space;
  std::vector<std::size_t> support;
  std::vector<Rational> weights;

  static EmpiricalMeasure create(std::shared_ptr<const FiniteMetricSpace> space,
                                 std::vector<std::size_t> support,
                                 std::vector<Rational> weights) {
    if (!space) throw Error("measure needs a space");
    if (support.size() != weights.size())
      throw LengthMismatch("support and weight counts differ");
    if (support.empty()) throw LengthMismatch("empty measure");
    std::vector<bool> seen(space->size(), false);
    Rational total = 0;
    for (std::size_t k = 0; k < support.size(); ++k) {
      if (support[k] >= space->size())
        throw IndexOutOfRange("support point out of range");
      if (seen[support[k]]) throw Error("repeated support point");
      seen[support[k]] = true;
      if (!(weights[k] > 0))
        throw NotStochastic(NotStochastic::Which::Vector,
                            "weights must be strictly positive");
      total += weights[k];
    }
    if (total != 1)
      throw NotStochastic(NotStochastic::Which::Vector,
                          "weights sum to " + to_string(total));
    return EmpiricalMeasure{std::move(space), std::move(support),
                            std::move(weights)};
  }
};

// Coupling of two measures: nonnegative matrix with the prescribed marginals.
struct Coupling {
  std::vector<std::vector<Rational>> q;  // indexed [mu atom][nu atom]

  static Coupling create(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                         std::vector<std::vector<Rational>> q) {
    if (q.size() != mu.support.size())
      throw LengthMismatch("coupling row count");
    for (const auto& row : q)
      if (row.size() != nu.support.size())
        throw LengthMismatch("coupling column count");
    for (std::size_t i = 0; i < q.size(); ++i) {
      Rational rs = 0;
      for (const Rational& x : q[i]) {
        if (x < 0) throw NotStochastic(NotStochastic::Which::Matrix,
                                       "negative coupling entry");
        rs += x;
      }
      if (rs != mu.weights[i])
        throw NotStochastic(NotStochastic::Which::Matrix,
                            "row marginal mismatch");
    }
    for (std::size_t j = 0; j < nu.support.size(); ++j) {
      Rational cs = 0;
      for (std::size_t i = 0; i < q.size(); ++i) cs += q[i][j];
      if (cs != nu.weights[j])
        throw NotStochastic(NotStochastic::Which::Matrix,
                            "column marginal mismatch");
    }
    return Coupling{std::move(q)};
  }
};

namespace detail {

inline SquareMatrix<Scalar> tuple_cost(const FiniteMetricSpace& x,
                                       const std::vector<std::size_t>& u,
                                       const std::vector<std::size_t>& v,
                                       int p) {
  const std::size_t n = u.size();
  SquareMatrix<Scalar> cost(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] >= x.size()) throw IndexOutOfRange("tuple point out of range");
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] >= x.size()) throw IndexOutOfRange("tuple point out of range");
      cost(i, j) = pow_int(x.dist(u[i], v[j]), static_cast<unsigned>(p));
    }
  }
  return cost;
}

}  // namespace detail

// ((1/n) min over permutations of sum d(u_i, v_{perm i})^p)^{1/p}, by
// optimal assignment on the p-th-power cost matrix.
inline Scalar wp_uniform(const FiniteMetricSpace& x,
                         const std::vector<std::size_t>& u,
                         const std::vector<std::size_t>& v, int p) {
  if (u.size() != v.size() || u.empty())
    throw LengthMismatch("tuples must have equal positive length");
  if (p < 1) throw InvalidExponent("transport exponent must be >= 1");
  const auto [total, perm] =
      min_cost_assignment(detail::tuple_cost(x, u, v, p));
  return root(total / Scalar(u.size()), p);
}

// Same value by exhaustive minimum over all permutations; the oracle for
// the assignment route.
inline Scalar wp_bruteforce(const FiniteMetricSpace& x,
                            const std::vector<std::size_t>& u,
                            const std::vector<std::size_t>& v, int p) {
  if (u.size() != v.size() || u.empty())
    throw LengthMismatch("tuples must have equal positive length");
  if (p < 1) throw InvalidExponent("transport exponent must be >= 1");
  const std::size_t n = u.size();
  if (n > 8) throw TooLarge("brute force is capped at 8 atoms");
  const auto cost = detail::tuple_cost(x, u, v, p);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::optional<Scalar> best;
  do {
    Scalar s(0);
    for (std::size_t i = 0; i < n; ++i) s += cost(i, perm[i]);
    if (!best || s < *best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return root(*best / Scalar(n), p);
}

// Uniform empirical measure of a tuple, repeated points merged.
inline EmpiricalMeasure phi_n(std::shared_ptr<const FiniteMetricSpace> space,
                              const std::vector<std::size_t>& w) {
  if (!space) throw Error("measure needs a space");
  if (w.empty()) throw LengthMismatch("empty tuple");
  std::vector<std::size_t> sorted = w;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> support;
  std::vector<Rational> weights;
  const Rational unit(1, static_cast<unsigned long long>(w.size()));
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (!support.empty() && support.back() == sorted[k])
      weights.back() += unit;
    else {
      support.push_back(sorted[k]);
      weights.push_back(unit);
    }
  }
  return EmpiricalMeasure::create(std::move(space), std::move(support),
                                  std::move(weights));
}

// W_p between rational measures by atom splitting: every atom of weight k/N
// becomes k unit atoms at the common denominator N, reducing to the uniform
// case (transport polytope vertices are integral at resolution N).  The
// assignment is cubic in N, so N is capped.
inline Scalar wp_rational(const EmpiricalMeasure& mu, const EmpiricalMeasure& nu,
                          int p, long long resolution_cap = 10000) {
  if (p < 1) throw InvalidExponent("transport exponent must be >= 1");
  if (mu.space.get() != nu.space.get() && !(*mu.space == *nu.space))
    throw SpaceMismatch("measures live on different spaces");
  Integer den = 1;
  for (const Rational& w : mu.weights)
    den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(w));
  for (const Rational& w : nu.weights)
    den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(w));
  if (den > resolution_cap)
    throw ResolutionTooLarge("common denominator " + den.str() +
                             " exceeds the cap");
  const auto expand = [&](const EmpiricalMeasure& m) {
    std::vector<std::size_t> tuple;
    for (std::size_t k = 0; k < m.support.size(); ++k) {
      const Integer count = boost::multiprecision::numerator(m.weights[k]) *
                            (den / boost::multiprecision::denominator(m.weights[k]));
      for (Integer c = 0; c < count; ++c) tuple.push_back(m.support[k]);
    }
    return tuple;
  };
  return wp_uniform(*mu.space, expand(mu), expand(nu), p);
}

// The metric of the symmetrized n-th power scaled by n^{-1/p}; by the
// measure-embedding isometry it must agree with wp_rational on the merged
// empirical measures.
inline Scalar symmetrized_power_distance(const FiniteMetricSpace& x,
                                         const std::vector<std::size_t>& w,
                                         const std::vector<std::size_t>& q,
                                         int p) {
  if (w.size() != q.size() || w.empty())
    throw LengthMismatch("tuples must have equal positive length");
  if (p < 1) throw InvalidExponent("transport exponent must be >= 1");
  // n^{-1/p} (min over permutations of sum d^p)^{1/p}, written as the
  // scaled power-space quotient metric rather than the mean form.
  const auto [total, perm] = min_cost_assignment(detail::tuple_cost(x, w, q, p));
  return root(total, p) / root(Scalar(w.size()), p);
}

}  // namespace mtype
