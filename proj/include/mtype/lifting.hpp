#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/isometry_group.hpp"
#include "mtype/markov.hpp"
#include "mtype/metric_graph.hpp"
#include "mtype/metric_space.hpp"

namespace mtype {

// A surjection sigma onto the base state set plus a symmetric relation E
// over the lifted set; the data driving the explicit lift formulas.
class LiftSpec {
 public:
  static LiftSpec create(std::size_t base_size, std::vector<std::size_t> sigma,
                         std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    LiftSpec s;
    s.base_size_ = base_size;
    const std::size_t n = sigma.size();
    std::vector<bool> hit(base_size, false);
    for (std::size_t v : sigma) {
      if (v >= base_size) throw IndexOutOfRange("sigma value out of range");
      hit[v] = true;
    }
    for (bool h : hit)
      if (!h) throw NotSurjective("sigma misses a base state");
    s.sigma_ = std::move(sigma);
    s.e_ = PairSet::create(n, std::move(pairs));
    s.fibers_.assign(base_size, {});
    for (std::size_t x = 0; x < n; ++x) s.fibers_[s.sigma_[x]].push_back(x);
    return s;
  }

  std::size_t size() const { return sigma_.size(); }
  std::size_t base_size() const { return base_size_; }
  std::size_t sigma(std::size_t x) const { return sigma_[x]; }
  const std::vector<std::size_t>& sigma() const { return sigma_; }
  const PairSet& e() const { return e_; }
  // Fiber over base state s.
  const std::vector<std::size_t>& fiber(std::size_t s) const { return fibers_[s]; }
  // Fiber of x's own image, the set M_x.
  const std::vector<std::size_t>& mates(std::size_t x) const {
    return fibers_[sigma_[x]];
  }

  // |{y in v : (x,y) in E}|.
  std::size_t deg(std::size_t x, const std::vector<std::size_t>& v) const {
    std::size_t d = 0;
    for (std::size_t y : v)
      if (e_.contains(x, y)) ++d;
    return d;
  }

 private:
  std::size_t base_size_ = 0;
  std::vector<std::size_t> sigma_;
  PairSet e_;
  std::vector<std::vector<std::size_t>> fibers_;
};

inline std::size_t deg(std::size_t x, const std::vector<std::size_t>& v,
                       const PairSet& e) {
  std::size_t d = 0;
  for (std::size_t y : v)
    if (e.contains(x, y)) ++d;
  return d;
}

// Within each fiber, the E-degree into every fiber must be constant and
// nonzero; exactly the condition that makes the lift formulas stochastic.
inline bool is_regular(const LiftSpec& s) {
  for (std::size_t t = 0; t < s.base_size(); ++t) {
    const auto& target = s.fiber(t);
    for (std::size_t src = 0; src < s.base_size(); ++src) {
      const auto& f = s.fiber(src);
      const std::size_t d0 = s.deg(f[0], target);
      if (d0 == 0) return false;
      for (std::size_t k = 1; k < f.size(); ++k)
        if (s.deg(f[k], target) != d0) return false;
    }
  }
  return true;
}

// pi~_x = pi_{sigma x}/|M_x|;  a~_xy = a_{sigma x, sigma y}/deg(x, M_y) on E,
// 0 off E.  Regularity makes the rows stochastic and the result reversible.
inline ReversibleChain lift_chain(const ReversibleChain& z, const LiftSpec& s) {
  if (z.size() != s.base_size())
    throw LengthMismatch("base chain size does not match the lift data");
  if (!is_regular(s)) throw NotRegular("fiber degrees are not constant nonzero");
  const std::size_t n = s.size();
  std::vector<Rational> pi(n);
  for (std::size_t x = 0; x < n; ++x)
    pi[x] = z.pi(s.sigma(x)) / Rational(s.mates(x).size());
  SquareMatrix<Rational> a(n, Rational(0));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (!s.e().contains(x, y)) continue;
      a(x, y) = z.a(s.sigma(x), s.sigma(y)) / Rational(s.deg(x, s.mates(y)));
    }
  return ReversibleChain::create(std::move(pi), std::move(a));
}

// Sufficient (and in fact necessary) conditions for zt to be a lift of z:
// fiber masses match, and one-step exit probabilities into fibers match the
// base transitions from every positive-mass state.
inline bool verify_lift(const ReversibleChain& zt, const ReversibleChain& z,
                        const std::vector<std::size_t>& sigma) {
  if (sigma.size() != zt.size())
    throw LengthMismatch("sigma must be total on the lifted states");
  for (std::size_t v : sigma)
    if (v >= z.size()) throw IndexOutOfRange("sigma value out of range");
  std::vector<Rational> fiber_mass(z.size(), 0);
  for (std::size_t x = 0; x < zt.size(); ++x) fiber_mass[sigma[x]] += zt.pi(x);
  for (std::size_t t = 0; t < z.size(); ++t)
    if (fiber_mass[t] != z.pi(t)) return false;
  for (std::size_t x = 0; x < zt.size(); ++x) {
    if (zt.pi(x) == 0) continue;
    std::vector<Rational> row(z.size(), 0);
    for (std::size_t y = 0; y < zt.size(); ++y) row[sigma[y]] += zt.a(x, y);
    for (std::size_t t = 0; t < z.size(); ++t)
      if (row[t] != z.a(sigma[x], t)) return false;
  }
  return true;
}

// The one-step condition alone: every positive-mass lifted state exits into
// each fiber with exactly the base transition probability.
inline bool simplechain_condition(const ReversibleChain& zt,
                                  const ReversibleChain& z,
                                  const std::vector<std::size_t>& sigma) {
  if (sigma.size() != zt.size())
    throw LengthMismatch("sigma must be total on the lifted states");
  for (std::size_t v : sigma)
    if (v >= z.size()) throw IndexOutOfRange("sigma value out of range");
  for (std::size_t x = 0; x < zt.size(); ++x) {
    if (zt.pi(x) == 0) continue;
    std::vector<Rational> row(z.size(), 0);
    for (std::size_t y = 0; y < zt.size(); ++y) row[sigma[y]] += zt.a(x, y);
    for (std::size_t t = 0; t < z.size(); ++t)
      if (row[t] != z.a(sigma[x], t)) return false;
  }
  return true;
}

// Metric lift: lift of chains along sigma, compatible point maps
// (chi . ft = f . sigma), and identical one-step distance law.
inline bool verify_metric_lift(const MarkovWalk& wt, const MarkovWalk& w,
                               const std::vector<std::size_t>& chi,
                               const std::vector<std::size_t>& sigma,
                               double tol = kRealTol) {
  if (chi.size() != wt.space.size())
    throw LengthMismatch("chi must be total on the lifted space");
  for (std::size_t v : chi)
    if (v >= w.space.size()) throw IndexOutOfRange("chi value out of range");
  if (!verify_lift(wt.chain, w.chain, sigma)) return false;
  for (std::size_t x = 0; x < wt.chain.size(); ++x)
    if (chi[wt.f[x]] != w.f[sigma[x]]) return false;
  const auto dt = step_distance_distribution(wt);
  const auto d = step_distance_distribution(w);
  return StepDistanceDistribution::equal(dt, d, tol);
}

// A constructed lift: the walk upstairs plus the data that produced it.
struct LiftedWalk {
  MarkovWalk walk;
  std::vector<std::size_t> sigma;  // lifted state -> base state
  LiftSpec spec;
};

// Lift of a walk on the orbit space X/G back to X.  States are pairs
// (base state, point over its orbit); E joins pairs whose distance upstairs
// equals the orbit-space distance of the base images, which is regular
// because the group acts transitively on each fiber.
inline LiftedWalk quotient_lift_walk(const MarkovWalk& w,
                                     const FiniteMetricSpace& x,
                                     const IsometryGroup& g,
                                     const std::vector<std::size_t>& chi) {
  const auto [q, chi_canon] = quotient_by_group(x, g);
  if (!(w.space == q))
    throw SpaceMismatch("walk is not on the quotient of the given space");
  if (chi != chi_canon)
    throw SpaceMismatch("projection does not match the quotient construction");

  std::vector<std::size_t> sigma, ft;
  for (std::size_t s = 0; s < w.chain.size(); ++s)
    for (std::size_t pt = 0; pt < x.size(); ++pt)
      if (chi[pt] == w.f[s]) {
        sigma.push_back(s);
        ft.push_back(pt);
      }
  const std::size_t n = sigma.size();
  const double tol = x.exact() && q.exact() ? 0.0 : x.tol();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (approx_eq(x.dist(ft[u], ft[v]),
                    q.dist(w.f[sigma[u]], w.f[sigma[v]]), tol))
        pairs.push_back({u, v});
  LiftSpec spec = LiftSpec::create(w.chain.size(), sigma, std::move(pairs));
  ReversibleChain chain = lift_chain(w.chain, spec);
  return LiftedWalk{MarkovWalk::create(std::move(chain), x, std::move(ft)),
                    std::move(sigma), std::move(spec)};
}

// Covering map between metric graphs: fiber-respecting vertex map that is
// locally bijective on edge stars and preserves edge lengths.
inline void check_covering(const MetricGraph& cover, const MetricGraph& base,
                           const std::vector<std::size_t>& vertex_map) {
  if (vertex_map.size() != cover.size())
    throw LengthMismatch("vertex map must be total on the covering graph");
  std::vector<bool> hit(base.size(), false);
  for (std::size_t v : vertex_map) {
    if (v >= base.size()) throw IndexOutOfRange("vertex map value out of range");
    hit[v] = true;
  }
  for (bool h : hit)
    if (!h) throw NotCovering("vertex map misses a base vertex");
  for (const auto& e : cover.edges()) {
    const std::size_t u = vertex_map[e.u], v = vertex_map[e.v];
    if (u == v) throw NotCovering("covering edge collapses to a vertex");
    bool found = false;
    for (const auto& [nb, k] : base.neighbors(u))
      if (nb == v) {
        if (base.edges()[k].len != e.len)
          throw NotCovering("edge length not preserved");
        found = true;
        break;
      }
    if (!found) throw NotCovering("covering edge maps onto a non-edge");
  }
  for (std::size_t xt = 0; xt < cover.size(); ++xt) {
    const auto& star = cover.neighbors(xt);
    const auto& base_star = base.neighbors(vertex_map[xt]);
    if (star.size() != base_star.size())
      throw NotCovering("edge star size mismatch at vertex " + std::to_string(xt));
    std::set<std::size_t> images;
    for (const auto& [nb, k] : star) images.insert(vertex_map[nb]);
    if (images.size() != star.size())
      throw NotCovering("edge star not injective at vertex " + std::to_string(xt));
  }
}

namespace detail {

// Endpoint of the unique lift of the base vertex path starting at xt.
inline std::size_t lift_path_endpoint(const MetricGraph& cover,
                                      const MetricGraph& base,
                                      const std::vector<std::size_t>& vertex_map,
                                      const std::vector<std::size_t>& path,
                                      std::size_t xt) {
  std::size_t cur = xt;
  for (std::size_t step = 0; step + 1 < path.size(); ++step) {
    const std::size_t to = path[step + 1];
    std::size_t next = static_cast<std::size_t>(-1);
    for (const auto& [nb, k] : cover.neighbors(cur))
      if (vertex_map[nb] == to) {
        next = nb;  // unique by local bijectivity
        break;
      }
    if (next == static_cast<std::size_t>(-1))
      throw NotCovering("path lift stuck; star is not locally bijective");
    cur = next;
  }
  return cur;
}

}  // namespace detail

// Lift of a vertex-valued walk on graph_metric(base) along a covering of
// metric graphs.  For each unordered vertex pair a single shortest path is
// fixed (lexicographically smallest); E joins fiber points connected by the
// unique lifts of these paths, giving constant degree 1 into every fiber.
inline LiftedWalk covering_lift_walk(const MarkovWalk& w,
                                     const MetricGraph& cover,
                                     const MetricGraph& base,
                                     const std::vector<std::size_t>& vertex_map) {
  check_covering(cover, base, vertex_map);
  const FiniteMetricSpace y = graph_metric(base);
  if (!(w.space == y))
    throw SpaceMismatch("walk is not on the metric of the base graph");
  const auto base_dist = detail::all_pairs_distances(base);

  // States upstairs: (base state s, cover vertex over f(s)).
  std::vector<std::size_t> sigma, ft;
  for (std::size_t s = 0; s < w.chain.size(); ++s)
    for (std::size_t xt = 0; xt < cover.size(); ++xt)
      if (vertex_map[xt] == w.f[s]) {
        sigma.push_back(s);
        ft.push_back(xt);
      }
  const std::size_t n = sigma.size();

  // Fixed shortest path per unordered vertex pair, smaller endpoint first.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> paths;
  const auto path_between = [&](std::size_t u, std::size_t v) {
    const auto key = std::make_pair(std::min(u, v), std::max(u, v));
    auto it = paths.find(key);
    if (it == paths.end())
      it = paths.emplace(key, lex_min_shortest_path(base, base_dist, key.first,
                                                    key.second))
               .first;
    return it->second;
  };

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t p1 = w.f[sigma[u]], p2 = w.f[sigma[v]];
      if (p1 == p2) {
        if (ft[u] == ft[v]) pairs.push_back({u, v});
        continue;
      }
      std::vector<std::size_t> path = path_between(p1, p2);
      if (path.front() != p1) std::reverse(path.begin(), path.end());
      if (detail::lift_path_endpoint(cover, base, vertex_map, path, ft[u]) ==
          ft[v])
        pairs.push_back({u, v});
    }
  LiftSpec spec = LiftSpec::create(w.chain.size(), sigma, std::move(pairs));
  ReversibleChain chain = lift_chain(w.chain, spec);
  return LiftedWalk{
      MarkovWalk::create(std::move(chain), graph_metric(cover), std::move(ft)),
      std::move(sigma), std::move(spec)};
}

// Mass-transfer identity between blocked fiber subsets: with no one-step
// flow from S1t into the rest of s2's fiber and none from S2t into the rest
// of s1's fiber, the relative masses of S1t and S2t agree.
inline bool masslemma_check(const ReversibleChain& zt, const ReversibleChain& z,
                            const std::vector<std::size_t>& sigma,
                            const std::vector<std::size_t>& s1t,
                            const std::vector<std::size_t>& s2t, std::size_t s1,
                            std::size_t s2) {
  if (sigma.size() != zt.size())
    throw LengthMismatch("sigma must be total on the lifted states");
  if (s1 >= z.size() || s2 >= z.size())
    throw IndexOutOfRange("base state out of range");
  for (std::size_t x : s1t)
    if (x >= zt.size() || sigma[x] != s1)
      throw HypothesisViolated("S1_subset",
                               "S1 must lie inside the fiber over s1");
  for (std::size_t x : s2t)
    if (x >= zt.size() || sigma[x] != s2)
      throw HypothesisViolated("S2_subset",
                               "S2 must lie inside the fiber over s2");
  if (z.pi(s1) * z.a(s1, s2) == 0)
    throw HypothesisViolated("positive_transition",
                             "base transition s1 -> s2 must have positive mass");

  const auto in = [](const std::vector<std::size_t>& set, std::size_t x) {
    return std::find(set.begin(), set.end(), x) != set.end();
  };
  Rational flow1 = 0, flow2 = 0;
  for (std::size_t x = 0; x < zt.size(); ++x) {
    if (in(s1t, x))
      for (std::size_t y = 0; y < zt.size(); ++y)
        if (sigma[y] == s2 && !in(s2t, y)) flow1 += zt.pi(x) * zt.a(x, y);
    if (in(s2t, x))
      for (std::size_t y = 0; y < zt.size(); ++y)
        if (sigma[y] == s1 && !in(s1t, y)) flow2 += zt.pi(x) * zt.a(x, y);
  }
  if (flow1 != 0)
    throw HypothesisViolated("no_flow_outside_S2",
                             "one-step flow from S1 leaks outside S2");
  if (flow2 != 0)
    throw HypothesisViolated("no_flow_outside_S1",
                             "one-step flow from S2 leaks outside S1");

  Rational m1 = 0, m2 = 0;
  for (std::size_t x : s1t) m1 += zt.pi(x);
  for (std::size_t x : s2t) m2 += zt.pi(x);
  return m1 * z.pi(s2) == m2 * z.pi(s1);
}

}  // namespace mtype
