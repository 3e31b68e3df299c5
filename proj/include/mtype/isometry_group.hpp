#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/metric_space.hpp"

namespace mtype {

// A finite permutation group acting on the points of a space.  Shape checks
// happen at construction; the action is validated against a concrete space
// by validate_on (a finite set closed under composition that contains the
// identity already contains all inverses).
class IsometryGroup {
 public:
  static IsometryGroup create(std::vector<std::vector<std::size_t>> perms) {
    if (perms.empty()) throw NotAGroup("group must contain at least the identity");
    const std::size_t n = perms.front().size();
    for (const auto& p : perms) {
      if (p.size() != n) throw LengthMismatch("permutations of mixed size");
      std::vector<bool> seen(n, false);
      for (std::size_t v : p) {
        if (v >= n) throw IndexOutOfRange("permutation value out of range");
        if (seen[v]) throw NotAGroup("not a permutation: repeated value");
        seen[v] = true;
      }
    }
    IsometryGroup g;
    g.perms_ = std::move(perms);
    return g;
  }

  static IsometryGroup trivial(std::size_t n) {
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;
    return create({id});
  }

  std::size_t degree() const { return perms_.front().size(); }
  const std::vector<std::vector<std::size_t>>& perms() const { return perms_; }

  void validate_on(const FiniteMetricSpace& x) const {
    const std::size_t n = degree();
    if (n != x.size()) throw LengthMismatch("group degree does not match space");
    std::vector<std::size_t> id(n);
    for (std::size_t i = 0; i < n; ++i) id[i] = i;
    std::set<std::vector<std::size_t>> members(perms_.begin(), perms_.end());
    if (!members.count(id)) throw NotAGroup("identity permutation missing");
    for (const auto& g : perms_)
      for (const auto& h : perms_) {
        std::vector<std::size_t> gh(n);
        for (std::size_t i = 0; i < n; ++i) gh[i] = g[h[i]];
        if (!members.count(gh)) throw NotAGroup("composition leaves the set");
      }
    const double tol = x.exact() ? 0.0 : x.tol();
    for (std::size_t k = 0; k < perms_.size(); ++k) {
      const auto& g = perms_[k];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!approx_eq(x.dist(g[i], g[j]), x.dist(i, j), tol))
            throw NotIsometries("permutation " + std::to_string(k) +
                                " distorts the distance (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
    }
  }

  // Orbits in canonical order (sorted by smallest member); orbit_of[i] is
  // the orbit index of point i.
  std::pair<std::vector<std::vector<std::size_t>>, std::vector<std::size_t>>
  orbits() const {
    const std::size_t n = degree();
    std::vector<std::size_t> orbit_of(n, static_cast<std::size_t>(-1));
    std::vector<std::vector<std::size_t>> orbs;
    for (std::size_t i = 0; i < n; ++i) {
      if (orbit_of[i] != static_cast<std::size_t>(-1)) continue;
      std::vector<std::size_t> orb;
      std::vector<std::size_t> stack{i};
      orbit_of[i] = orbs.size();
      while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        orb.push_back(u);
        for (const auto& g : perms_)
          if (orbit_of[g[u]] == static_cast<std::size_t>(-1)) {
            orbit_of[g[u]] = orbs.size();
            stack.push_back(g[u]);
          }
      }
      std::sort(orb.begin(), orb.end());
      orbs.push_back(std::move(orb));
    }
    return {orbs, orbit_of};
  }

 private:
  std::vector<std::vector<std::size_t>> perms_;
};

// Orbit space with d(orbit1, orbit2) = min over representatives; for a
// group acting by isometries the min formula is always a metric, and
// validation still runs on the result.
inline std::pair<FiniteMetricSpace, std::vector<std::size_t>> quotient_by_group(
    const FiniteMetricSpace& x, const IsometryGroup& g) {
  g.validate_on(x);
  const auto [orbs, orbit_of] = g.orbits();
  const std::size_t m = orbs.size();
  std::vector<std::string> labels(m);
  for (std::size_t o = 0; o < m; ++o) {
    std::string s = "{";
    for (std::size_t t = 0; t < orbs[o].size(); ++t)
      s += x.label(orbs[o][t]) + (t + 1 < orbs[o].size() ? "," : "");
    labels[o] = s + "}";
  }
  SquareMatrix<Scalar> d(m, Scalar(0));
  for (std::size_t o1 = 0; o1 < m; ++o1)
    for (std::size_t o2 = o1 + 1; o2 < m; ++o2) {
      Scalar best = x.dist(orbs[o1][0], orbs[o2][0]);
      for (std::size_t u : orbs[o1])
        for (std::size_t v : orbs[o2])
          if (x.dist(u, v) < best) best = x.dist(u, v);
      d(o1, o2) = best;
      d(o2, o1) = best;
    }
  return {FiniteMetricSpace::from_matrix(std::move(labels), std::move(d), x.tol()),
          orbit_of};
}

}  // namespace mtype
