#pragma once

#include <algorithm>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mtype/isometry_group.hpp"
#include "mtype/lifting.hpp"
#include "mtype/markov.hpp"
#include "mtype/metric_space.hpp"
#include "mtype/rng.hpp"
#include "mtype/scalar.hpp"
#include "mtype/wasserstein.hpp"

namespace mtype {

// Random instance builders for property suites.  Every value drawn is a
// small rational, so downstream checks stay exact.

// Distances in [1, 2] with denominator 8; the triangle inequality is
// automatic on that range.
inline FiniteMetricSpace random_metric_space(std::size_t n, Rng& rng) {
  SquareMatrix<Scalar> d(n, Scalar(0));
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "x" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const Rational v = 1 + Rational(rng.range(0, 8), 8);
      d(i, j) = Scalar(v);
      d(j, i) = d(i, j);
    }
  return FiniteMetricSpace::from_matrix(std::move(labels), std::move(d));
}

// Reversible chain from a random symmetric integer weight matrix; rows are
// padded with a self-loop so no state is isolated.
inline ReversibleChain random_chain(std::size_t n, Rng& rng) {
  std::vector<std::vector<long long>> w(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      w[i][j] = rng.range(0, 4);
      w[j][i] = w[i][j];
    }
  for (std::size_t i = 0; i < n; ++i) {
    long long r = std::accumulate(w[i].begin(), w[i].end(), 0ll);
    if (r == 0) w[i][i] = 1;
  }
  std::vector<Rational> r(n, 0);
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i] += w[i][j];
    total += r[i];
  }
  std::vector<Rational> pi(n);
  SquareMatrix<Rational> a(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = r[i] / total;
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(w[i][j]) / r[i];
  }
  return ReversibleChain::create(std::move(pi), std::move(a));
}

struct GroupInstance {
  FiniteMetricSpace space;
  IsometryGroup group;
};

// Space on n points whose distances depend only on the orbit of the point
// pair under a random cyclic permutation group; the generator is then an
// isometry by construction.
inline GroupInstance random_group_instance(std::size_t n, Rng& rng) {
  std::vector<std::size_t> g(n);
  std::iota(g.begin(), g.end(), 0);
  for (std::size_t i = n; i > 1; --i)
    std::swap(g[i - 1], g[static_cast<std::size_t>(rng.below(i))]);

  std::vector<std::vector<std::size_t>> elements;
  std::vector<std::size_t> cur(n);
  std::iota(cur.begin(), cur.end(), 0);
  do {
    elements.push_back(cur);
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = g[cur[i]];
    cur = std::move(next);
  } while (!std::is_sorted(cur.begin(), cur.end()) || cur != elements.front());

  // One value per pair orbit.
  SquareMatrix<Scalar> d(n, Scalar(0));
  std::vector<std::vector<bool>> done(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (done[i][j]) continue;
      const Rational v = 1 + Rational(rng.range(0, 8), 8);
      for (const auto& e : elements) {
        d(e[i], e[j]) = Scalar(v);
        d(e[j], e[i]) = Scalar(v);
        done[std::min(e[i], e[j])][std::max(e[i], e[j])] = true;
      }
    }
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "x" + std::to_string(i);
  FiniteMetricSpace space =
      FiniteMetricSpace::from_matrix(std::move(labels), std::move(d));
  IsometryGroup group = IsometryGroup::create(std::move(elements));
  group.validate_on(space);
  return GroupInstance{std::move(space), std::move(group)};
}

struct LiftInstance {
  ReversibleChain base;
  LiftSpec spec;
};

// Random regular lift data: per base pair, fibers are joined by a block
// construction (indices mod gcd of the fiber sizes shifted by a random
// nonempty set), which has constant nonzero degree on both sides;
// within-fiber shifts are negation-closed so the relation stays symmetric.
// States are randomly relabeled afterwards.
inline LiftInstance random_lift_instance(std::size_t max_base,
                                         std::size_t max_fiber, Rng& rng) {
  const std::size_t b = static_cast<std::size_t>(rng.range(2, static_cast<long long>(max_base)));
  std::vector<std::size_t> fiber_size(b);
  for (std::size_t s = 0; s < b; ++s)
    fiber_size[s] = static_cast<std::size_t>(rng.range(1, static_cast<long long>(max_fiber)));

  std::vector<std::size_t> offset(b + 1, 0);
  for (std::size_t s = 0; s < b; ++s) offset[s + 1] = offset[s] + fiber_size[s];
  const std::size_t n = offset[b];

  std::vector<std::size_t> sigma(n);
  for (std::size_t s = 0; s < b; ++s)
    for (std::size_t k = 0; k < fiber_size[s]; ++k) sigma[offset[s] + k] = s;

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t s = 0; s < b; ++s)
    for (std::size_t t = s; t < b; ++t) {
      const std::size_t ms = fiber_size[s], mt = fiber_size[t];
      if (s == t) {
        // Negation-closed nonempty shift set inside Z_ms.
        std::vector<bool> in(ms, false);
        for (std::size_t k = 0; k <= ms / 2; ++k)
          if (rng.coin()) {
            in[k] = true;
            in[(ms - k) % ms] = true;
          }
        if (std::none_of(in.begin(), in.end(), [](bool v) { return v; }))
          in[0] = true;
        for (std::size_t x = 0; x < ms; ++x)
          for (std::size_t y = 0; y < ms; ++y)
            if (in[(y + ms - x) % ms])
              pairs.push_back({offset[s] + x, offset[s] + y});
      } else {
        const std::size_t g = std::gcd(ms, mt);
        std::vector<bool> in(g, false);
        for (std::size_t k = 0; k < g; ++k) in[k] = rng.coin();
        if (std::none_of(in.begin(), in.end(), [](bool v) { return v; }))
          in[static_cast<std::size_t>(rng.below(g))] = true;
        for (std::size_t x = 0; x < ms; ++x)
          for (std::size_t y = 0; y < mt; ++y)
            if (in[(y % g + g - x % g) % g]) {
              pairs.push_back({offset[s] + x, offset[t] + y});
              pairs.push_back({offset[t] + y, offset[s] + x});
            }
      }
    }

  // Random relabeling of the lifted states.
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t i = n; i > 1; --i)
    std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(i))]);
  std::vector<std::size_t> sigma_p(n);
  for (std::size_t x = 0; x < n; ++x) sigma_p[perm[x]] = sigma[x];
  for (auto& [u, v] : pairs) {
    u = perm[u];
    v = perm[v];
  }

  return LiftInstance{random_chain(b, rng),
                      LiftSpec::create(b, std::move(sigma_p), std::move(pairs))};
}

// Measure with small-denominator weights on a random distinct subset.
inline EmpiricalMeasure random_measure(
    std::shared_ptr<const FiniteMetricSpace> space, std::size_t max_atoms,
    Rng& rng) {
  const std::size_t n = space->size();
  const std::size_t k = static_cast<std::size_t>(
      rng.range(1, static_cast<long long>(std::min(max_atoms, n))));
  std::vector<std::size_t> points(n);
  std::iota(points.begin(), points.end(), 0);
  for (std::size_t i = n; i > 1; --i)
    std::swap(points[i - 1], points[static_cast<std::size_t>(rng.below(i))]);
  points.resize(k);
  std::sort(points.begin(), points.end());
  std::vector<long long> w(k);
  long long total = 0;
  for (auto& v : w) {
    v = rng.range(1, 5);
    total += v;
  }
  std::vector<Rational> weights(k);
  for (std::size_t i = 0; i < k; ++i) weights[i] = Rational(w[i], total);
  return EmpiricalMeasure::create(std::move(space), std::move(points),
                                  std::move(weights));
}

// Point tuple with repeats allowed.
inline std::vector<std::size_t> random_tuple(const FiniteMetricSpace& x,
                                             std::size_t n, Rng& rng) {
  std::vector<std::size_t> out(n);
  for (auto& v : out) v = static_cast<std::size_t>(rng.below(x.size()));
  return out;
}

}  // namespace mtype
