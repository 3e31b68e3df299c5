#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/matrix.hpp"
#include "mtype/metric_space.hpp"
#include "mtype/scalar.hpp"

namespace mtype {

// Matrix powers are exact but rationals grow with T; this guards runaway
// requests.  Evaluation functions accept a per-call override.
inline constexpr int kDefaultMaxT = 64;

// Stationary reversible chain: stochastic pi, row-stochastic a, detailed
// balance pi_i a_ij = pi_j a_ji.  All entries exact rationals.
class ReversibleChain {
 public:
  static ReversibleChain create(std::vector<Rational> pi,
                                SquareMatrix<Rational> a) {
    if (pi.size() != a.size())
      throw LengthMismatch("distribution and matrix sizes differ");
    const std::size_t n = pi.size();
    if (n == 0) throw LengthMismatch("empty chain");
    Rational sum = 0;
    for (const Rational& p : pi) {
      if (p < 0)
        throw NotStochastic(NotStochastic::Which::Vector, "negative mass");
      sum += p;
    }
    if (sum != 1)
      throw NotStochastic(NotStochastic::Which::Vector,
                          "masses sum to " + to_string(sum));
    for (std::size_t i = 0; i < n; ++i) {
      Rational row = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (a(i, j) < 0)
          throw NotStochastic(NotStochastic::Which::Matrix,
                              "negative entry at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
        row += a(i, j);
      }
      if (row != 1)
        throw NotStochastic(NotStochastic::Which::Matrix,
                            "row " + std::to_string(i) + " sums to " +
                                to_string(row));
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (pi[i] * a(i, j) != pi[j] * a(j, i))
          throw NotReversible(i, j,
                              "detailed balance fails at (" + std::to_string(i) +
                                  "," + std::to_string(j) + ")");
    ReversibleChain z;
    z.pi_ = std::move(pi);
    z.a_ = std::move(a);
    // Stationarity follows from the axioms; re-checked exactly as a guard.
    for (std::size_t j = 0; j < n; ++j) {
      Rational s = 0;
      for (std::size_t i = 0; i < n; ++i) s += z.pi_[i] * z.a_(i, j);
      if (s != z.pi_[j]) throw Error("stationarity check failed (internal)");
    }
    return z;
  }

  std::size_t size() const { return pi_.size(); }
  const Rational& pi(std::size_t i) const { return pi_[i]; }
  const std::vector<Rational>& pi() const { return pi_; }
  const Rational& a(std::size_t i, std::size_t j) const { return a_(i, j); }
  const SquareMatrix<Rational>& a() const { return a_; }

  friend bool operator==(const ReversibleChain& x, const ReversibleChain& y) {
    return x.pi_ == y.pi_ && x.a_ == y.a_;
  }

 private:
  std::vector<Rational> pi_;
  SquareMatrix<Rational> a_;
};

inline ReversibleChain new_chain(std::vector<Rational> pi,
                                 SquareMatrix<Rational> a) {
  return ReversibleChain::create(std::move(pi), std::move(a));
}

// Pr[Z_0 in S_0, ..., Z_T in S_T] by forward recursion.
inline Rational cylinder_prob(const ReversibleChain& z,
                              const std::vector<std::vector<std::size_t>>& sets) {
  if (sets.empty()) return 1;
  const std::size_t n = z.size();
  std::vector<std::vector<bool>> mask(sets.size(), std::vector<bool>(n, false));
  for (std::size_t t = 0; t < sets.size(); ++t)
    for (std::size_t s : sets[t]) {
      if (s >= n) throw IndexOutOfRange("state out of range in event set");
      mask[t][s] = true;
    }
  std::vector<Rational> v(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    if (mask[0][i]) v[i] = z.pi(i);
  for (std::size_t t = 1; t < sets.size(); ++t) {
    std::vector<Rational> w(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (mask[t][j]) w[j] += v[i] * z.a(i, j);
    }
    v = std::move(w);
  }
  Rational out = 0;
  for (const Rational& p : v) out += p;
  return out;
}

// Pr[Z_1 in S_1 | Z_0 = s].
inline Rational cond_prob(const ReversibleChain& z, std::size_t s,
                          const std::vector<std::size_t>& s1) {
  if (s >= z.size()) throw IndexOutOfRange("state out of range");
  if (z.pi(s) == 0) throw ZeroMassState("conditioning on a zero-mass state");
  std::vector<bool> mask(z.size(), false);
  for (std::size_t j : s1) {
    if (j >= z.size()) throw IndexOutOfRange("state out of range in event set");
    mask[j] = true;
  }
  Rational out = 0;
  for (std::size_t j = 0; j < z.size(); ++j)
    if (mask[j]) out += z.a(s, j);
  return out;
}

// Chain pushed into a metric space by a state-to-point map.
struct MarkovWalk {
  ReversibleChain chain;
  FiniteMetricSpace space;
  std::vector<std::size_t> f;

  static MarkovWalk create(ReversibleChain chain, FiniteMetricSpace space,
                           std::vector<std::size_t> f) {
    if (f.size() != chain.size())
      throw LengthMismatch("state map must be total on the state set");
    for (std::size_t v : f)
      if (v >= space.size()) throw IndexOutOfRange("state maps outside the space");
    return MarkovWalk{std::move(chain), std::move(space), std::move(f)};
  }

  static MarkovWalk identity_walk(ReversibleChain chain, FiniteMetricSpace space) {
    if (chain.size() != space.size())
      throw LengthMismatch("identity walk needs matching sizes");
    std::vector<std::size_t> f(chain.size());
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = i;
    return create(std::move(chain), std::move(space), std::move(f));
  }
};

// E d(W_T, W_0)^p via an exact matrix power of a.
inline Scalar energy(const MarkovWalk& w, int p, int t,
                     int max_t = kDefaultMaxT) {
  if (p < 1) throw InvalidExponent("moment exponent must be >= 1");
  if (t < 0) throw OutOfRange("negative time");
  if (t > max_t)
    throw OutOfRange("time " + std::to_string(t) + " exceeds the cap " +
                     std::to_string(max_t));
  if (t == 0) return Scalar(0);
  const SquareMatrix<Rational> at = mat_pow(w.chain.a(), static_cast<unsigned long long>(t));
  Scalar out(0);
  const std::size_t n = w.chain.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (w.chain.pi(i) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (at(i, j) == 0 || w.f[i] == w.f[j]) continue;
      out += Scalar(w.chain.pi(i) * at(i, j)) *
             pow_int(w.space.dist(w.f[i], w.f[j]), static_cast<unsigned>(p));
    }
  }
  return out;
}

inline bool is_degenerate(const MarkovWalk& w) {
  for (std::size_t i = 0; i < w.chain.size(); ++i)
    for (std::size_t j = 0; j < w.chain.size(); ++j)
      if (w.chain.pi(i) * w.chain.a(i, j) != 0 && w.f[i] != w.f[j]) return false;
  return true;
}

// E_p(W,T) / (T E_p(W,1)); its p-th root, maximized over walks, is the
// type-p constant at time T.
inline Scalar ratio(const MarkovWalk& w, int p, int t, int max_t = kDefaultMaxT) {
  if (t < 1) throw OutOfRange("ratio needs T >= 1");
  const Scalar e1 = energy(w, p, 1, max_t);
  if (e1.sign() == 0)
    throw DegenerateWalk("one-step energy is zero; the walk never moves");
  return energy(w, p, t, max_t) / (Scalar(t) * e1);
}

// Law of d(W_1, W_0): sorted atoms with exact rational masses.  Distance
// values may be real (the space's mode); masses are always rational.
class StepDistanceDistribution {
 public:
  static StepDistanceDistribution of(const MarkovWalk& w) {
    std::vector<std::pair<Scalar, Rational>> raw;
    const std::size_t n = w.chain.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Rational m = w.chain.pi(i) * w.chain.a(i, j);
        if (m == 0) continue;
        raw.push_back({w.space.dist(w.f[i], w.f[j]), m});
      }
    std::sort(raw.begin(), raw.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    StepDistanceDistribution out;
    out.tol_ = w.space.exact() ? 0.0 : w.space.tol();
    for (auto& [v, m] : raw) {
      if (!out.atoms_.empty() && approx_eq(out.atoms_.back().first, v, out.tol_))
        out.atoms_.back().second += m;
      else
        out.atoms_.push_back({v, m});
    }
    Rational total = 0;
    for (const auto& [v, m] : out.atoms_) total += m;
    if (total != 1) throw Error("step distribution does not sum to 1 (internal)");
    return out;
  }

  const std::vector<std::pair<Scalar, Rational>>& atoms() const { return atoms_; }

  Rational mass_at(const Scalar& v, double tol) const {
    Rational out = 0;
    for (const auto& [val, m] : atoms_)
      if (approx_eq(val, v, tol)) out += m;
    return out;
  }

  Scalar pth_moment(int p) const {
    if (p < 1) throw InvalidExponent("moment exponent must be >= 1");
    Scalar out(0);
    for (const auto& [v, m] : atoms_)
      out += pow_int(v, static_cast<unsigned>(p)) * Scalar(m);
    return out;
  }

  // Atom-by-atom equality; values compared exactly when both sides are
  // exact, else within tol.  Masses always compare exactly.
  static bool equal(const StepDistanceDistribution& x,
                    const StepDistanceDistribution& y, double tol) {
    if (x.atoms_.size() != y.atoms_.size()) return false;
    for (std::size_t k = 0; k < x.atoms_.size(); ++k) {
      const bool both_exact =
          x.atoms_[k].first.is_rational() && y.atoms_[k].first.is_rational();
      if (!approx_eq(x.atoms_[k].first, y.atoms_[k].first, both_exact ? 0.0 : tol))
        return false;
      if (x.atoms_[k].second != y.atoms_[k].second) return false;
    }
    return true;
  }

 private:
  std::vector<std::pair<Scalar, Rational>> atoms_;
  double tol_ = 0.0;
};

inline StepDistanceDistribution step_distance_distribution(const MarkovWalk& w) {
  return StepDistanceDistribution::of(w);
}

// Symmetric pair relation over the state set.
struct PairSet {
  std::size_t n;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  static PairSet create(std::size_t n,
                        std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& [i, j] : pairs) {
      if (i >= n || j >= n) throw IndexOutOfRange("pair index out of range");
      seen.insert({i, j});
    }
    for (const auto& [i, j] : seen)
      if (!seen.count({j, i}))
        throw AsymmetricE("pair (" + std::to_string(i) + "," + std::to_string(j) +
                          ") present without its mirror");
    PairSet e;
    e.n = n;
    e.pairs.assign(seen.begin(), seen.end());
    return e;
  }

  bool contains(std::size_t i, std::size_t j) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(i, j));
  }
};

// True iff every transition outside E has zero mass.
inline bool is_restricted_by(const ReversibleChain& z, const PairSet& e) {
  if (e.n != z.size()) throw LengthMismatch("relation is over a different state set");
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = 0; j < z.size(); ++j)
      if (z.pi(i) * z.a(i, j) != 0 && !e.contains(i, j)) return false;
  return true;
}

}  // namespace mtype
