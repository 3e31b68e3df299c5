#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/markov.hpp"
#include "mtype/matrix.hpp"
#include "mtype/metric_space.hpp"
#include "mtype/rng.hpp"
#include "mtype/scalar.hpp"

namespace mtype {

// Symmetric nonnegative weights; the walk they induce has pi_i = r_i / sum w
// and a_ij = w_ij / r_i, which is reversible by symmetry and reaches every
// reversible chain with full-support pi (take w_ij = pi_i a_ij).
struct WeightParam {
  SquareMatrix<Rational> w;

  static WeightParam create(SquareMatrix<Rational> w) {
    const std::size_t n = w.size();
    if (n == 0) throw LengthMismatch("empty weight matrix");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        if (w(i, j) < 0) throw OutOfRange("negative weight");
        if (w(i, j) != w(j, i))
          throw AsymmetricE("weights must be symmetric at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");
      }
    for (std::size_t i = 0; i < n; ++i) {
      Rational r = 0;
      for (std::size_t j = 0; j < n; ++j) r += w(i, j);
      if (r == 0)
        throw IsolatedState("row " + std::to_string(i) + " has zero weight");
    }
    return WeightParam{std::move(w)};
  }
};

inline ReversibleChain chain_from_weights(const WeightParam& wp) {
  const std::size_t n = wp.w.size();
  std::vector<Rational> r(n, 0);
  Rational total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) r[i] += wp.w(i, j);
    total += r[i];
  }
  std::vector<Rational> pi(n);
  SquareMatrix<Rational> a(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = r[i] / total;
    for (std::size_t j = 0; j < n; ++j) a(i, j) = wp.w(i, j) / r[i];
  }
  return ReversibleChain::create(std::move(pi), std::move(a));
}

inline Scalar objective(const WeightParam& w, const std::vector<std::size_t>& f,
                        const FiniteMetricSpace& x, int p, int t,
                        int max_t = kDefaultMaxT) {
  MarkovWalk walk = MarkovWalk::create(chain_from_weights(w), x, f);
  return ratio(walk, p, t, max_t);
}

struct OptimizerConfig {
  int restarts = 64;
  int copies = 1;
  std::uint64_t seed = 1;
  int max_t = 8;
  // Search knobs (not part of the exactness contract).
  int max_iters = 150;
  double init_step = 0.25;
  double fd_step = 1e-6;
  double plateau_eps = 1e-10;
  int plateau_window = 50;
  long long weight_denominator = 1000000;
};

struct RestartRecord {
  int index = 0;
  std::string seed_kind;
  int iters = 0;
  double search_value = 0.0;  // double-precision objective at the end
  bool skipped = false;       // candidate degenerate after rationalization
  Rational exact_ratio;       // exact re-score of the rationalized candidate
};

struct OptimizerReport {
  bool found = false;
  WeightParam best{SquareMatrix<Rational>(1, Rational(1))};
  std::vector<std::size_t> f;
  int p = 2;
  int t = 2;
  Rational ratio;  // exact, re-verified
  double bound = 0.0;  // ratio^{1/p}, the certified lower-bound witness
  std::vector<RestartRecord> restarts;
};

namespace detail {

// Double-precision search pipeline over the flattened upper triangle
// (i <= j) of the weight matrix.
class SearchProblem {
 public:
  SearchProblem(const FiniteMetricSpace& x, const std::vector<std::size_t>& f,
                int p, int t)
      : n_(f.size()), t_(t) {
    d_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        d_[i * n_ + j] =
            std::pow(x.dist(f[i], f[j]).to_double(), static_cast<double>(p));
    m_ = n_ * (n_ + 1) / 2;
    scratch_.assign(5 * n_ * n_ + 2 * n_, 0.0);
  }

  std::size_t dim() const { return m_; }
  std::size_t states() const { return n_; }

  // Flattened index of the pair (i, j) with i <= j.
  std::size_t slot(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return i * n_ - i * (i + 1) / 2 + j;
  }

  // Ratio objective; -inf when the weights give an isolated state or a
  // degenerate walk.
  double eval(const std::vector<double>& theta) {
    const std::size_t n = n_;
    double* w = scratch_.data();
    double* acc = w + n * n;
    double* base = acc + n * n;
    double* tmp = base + n * n;
    double* tmp2 = tmp + n * n;
    double* r = tmp2 + n * n;
    double* pi = r + n;
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++s) {
        w[i * n + j] = theta[s];
        w[j * n + i] = theta[s];
      }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double ri = 0.0;
      for (std::size_t j = 0; j < n; ++j) ri += w[i * n + j];
      if (ri <= 0.0) return -std::numeric_limits<double>::infinity();
      r[i] = ri;
      total += ri;
    }
    double e1 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e1 += w[i * n + j] * d_[i * n + j];
    e1 /= total;
    if (e1 <= 0.0) return -std::numeric_limits<double>::infinity();

    for (std::size_t i = 0; i < n; ++i) {
      pi[i] = r[i] / total;
      for (std::size_t j = 0; j < n; ++j) base[i * n + j] = w[i * n + j] / r[i];
    }
    // acc = base^t by repeated squaring.
    bool have = false;
    unsigned e = static_cast<unsigned>(t_);
    while (e > 0) {
      if (e & 1u) {
        if (have) {
          mul(tmp, acc, base);
          std::copy(tmp, tmp + n * n, acc);
        } else {
          std::copy(base, base + n * n, acc);
          have = true;
        }
      }
      e >>= 1u;
      if (e > 0) {
        mul(tmp2, base, base);
        std::copy(tmp2, tmp2 + n * n, base);
      }
    }
    double et = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        et += pi[i] * acc[i * n + j] * d_[i * n + j];
    return et / (static_cast<double>(t_) * e1);
  }

 private:
  void mul(double* c, const double* a, const double* b) const {
    const std::size_t n = n_;
    std::fill(c, c + n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const double aik = a[i * n + k];
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] += aik * b[k * n + j];
      }
  }

  std::size_t n_, m_;
  int t_;
  std::vector<double> d_;
  std::vector<double> scratch_;
};

inline void project_simplex(std::vector<double>& theta) {
  double sum = 0.0;
  for (double& v : theta) {
    if (v < 0.0) v = 0.0;
    sum += v;
  }
  if (sum > 0.0)
    for (double& v : theta) v /= sum;
}

}  // namespace detail

namespace detail {

// Candidate bookkeeping with the deterministic tie-break: higher exact
// ratio, then fewer nonzero weights, then lexicographically smaller flat
// weight vector.
struct BestCandidate {
  bool found = false;
  Rational ratio;
  std::size_t support = 0;
  std::vector<Rational> flat;
  WeightParam w{SquareMatrix<Rational>(1, Rational(1))};

  void offer(const Rational& cand_ratio, WeightParam cand) {
    const std::size_t n = cand.w.size();
    std::vector<Rational> cand_flat;
    cand_flat.reserve(n * n);
    std::size_t cand_support = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        cand_flat.push_back(cand.w(i, j));
        if (cand.w(i, j) != 0) ++cand_support;
      }
    const bool better =
        !found || cand_ratio > ratio ||
        (cand_ratio == ratio &&
         (cand_support < support ||
          (cand_support == support && cand_flat < flat)));
    if (better) {
      found = true;
      ratio = cand_ratio;
      support = cand_support;
      flat = std::move(cand_flat);
      w = std::move(cand);
    }
  }
};

}  // namespace detail

// Multi-start projected gradient ascent over the weight simplex, followed by
// exact re-scoring of every candidate (each restart's seed and final point)
// at a common denominator.  The returned ratio is the exact value of the
// best rationalized candidate, never below the best seed.
inline OptimizerReport maximize(const FiniteMetricSpace& x, int p, int t,
                                OptimizerConfig cfg = {},
                                std::vector<std::size_t> f = {}) {
  if (x.size() < 2) throw OutOfRange("optimization needs at least 2 points");
  if (p < 1) throw InvalidExponent("moment exponent must be >= 1");
  if (t < 1) throw OutOfRange("time must be >= 1");
  if (cfg.copies < 1) throw OutOfRange("copies must be >= 1");
  if (f.empty()) {
    f.reserve(x.size() * static_cast<std::size_t>(cfg.copies));
    for (int c = 0; c < cfg.copies; ++c)
      for (std::size_t i = 0; i < x.size(); ++i) f.push_back(i);
  }
  const int cap = std::max(cfg.max_t, t);
  detail::SearchProblem prob(x, f, p, t);
  const std::size_t m = prob.dim();
  const std::size_t n = prob.states();

  // Seed points on the simplex.
  const auto seed_theta = [&](int restart, std::string& kind) {
    std::vector<double> theta(m, 0.0);
    if (restart == 0) {
      kind = "uniform";
      std::fill(theta.begin(), theta.end(), 1.0);
    } else if (restart == 1) {
      kind = "nearest-neighbor";
      // Support on the pairs realizing the smallest positive step distance.
      std::optional<Scalar> dmin;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (f[i] == f[j]) continue;
          const Scalar& d = x.dist(f[i], f[j]);
          if (!dmin || d < *dmin) dmin = d;
        }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (f[i] != f[j] && x.dist(f[i], f[j]) == *dmin)
            theta[prob.slot(i, j)] = 1.0;
    } else {
      kind = "dirichlet";
      Rng rng(cfg.seed, static_cast<std::uint64_t>(restart));
      for (double& v : theta) v = rng.exponential();
    }
    detail::project_simplex(theta);
    return theta;
  };

  // Snap to the common-denominator grid; k/Q keeps the induced transition
  // matrix's denominators small (they cancel to integer row sums).
  const auto rationalize_theta =
      [&](const std::vector<double>& theta) -> std::optional<WeightParam> {
    const long long q = cfg.weight_denominator;
    SquareMatrix<Rational> w(n, Rational(0));
    bool any = false;
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++s) {
        long long k = std::llround(theta[s] * static_cast<double>(q));
        // A positive coordinate never snaps to zero: the searched support is
        // part of the candidate, and 1/q is its lightest representable weight.
        if (k == 0 && theta[s] > 0.0) k = 1;
        if (k > 0) {
          w(i, j) = Rational(k, q);
          w(j, i) = w(i, j);
          any = true;
        }
      }
    if (!any) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
      Rational r = 0;
      for (std::size_t j = 0; j < n; ++j) r += w(i, j);
      if (r == 0) return std::nullopt;  // isolated state: not a valid chain
    }
    return WeightParam::create(std::move(w));
  };

  const auto exact_score =
      [&](const WeightParam& w) -> std::optional<Rational> {
    try {
      const Scalar v = objective(w, f, x, p, t, cap);
      if (v.is_rational()) return v.rational();
      // Real-mode space: fall back to a dyadic snapshot of the value so the
      // report stays comparable; exactness is only promised in exact mode.
      return Rational(v.to_double());
    } catch (const DegenerateWalk&) {
      return std::nullopt;
    }
  };

  OptimizerReport report;
  report.f = f;
  report.p = p;
  report.t = t;
  detail::BestCandidate best;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    RestartRecord rec;
    rec.index = restart;
    std::vector<double> theta = seed_theta(restart, rec.seed_kind);

    // Exact score of the seed itself: the reported ratio may never fall
    // below the best seed.
    if (auto w0 = rationalize_theta(theta))
      if (auto r0 = exact_score(*w0)) best.offer(*r0, std::move(*w0));

    double cur = prob.eval(theta);
    double step = cfg.init_step;
    std::vector<double> grad(m), trial(m), hist;
    hist.reserve(static_cast<std::size_t>(cfg.max_iters) + 1);
    hist.push_back(cur);
    int iter = 0;
    for (; iter < cfg.max_iters; ++iter) {
      if (!std::isfinite(cur)) break;
      // Central finite differences; one-sided at the boundary.
      for (std::size_t k = 0; k < m; ++k) {
        const double h = cfg.fd_step;
        std::vector<double>& probe = trial;
        probe = theta;
        probe[k] = theta[k] + h;
        const double up = prob.eval(probe);
        const double lo_step = std::min(h, theta[k]);
        probe[k] = theta[k] - lo_step;
        const double down = prob.eval(probe);
        if (std::isfinite(up) && std::isfinite(down) && h + lo_step > 0.0)
          grad[k] = (up - down) / (h + lo_step);
        else if (std::isfinite(up))
          grad[k] = (up - cur) / h;
        else if (std::isfinite(down) && lo_step > 0.0)
          grad[k] = (cur - down) / lo_step;
        else
          grad[k] = 0.0;
      }
      double gmax = 0.0;
      for (double g : grad) gmax = std::max(gmax, std::fabs(g));
      if (gmax == 0.0) break;

      bool accepted = false;
      while (step > 1e-14) {
        for (std::size_t k = 0; k < m; ++k) trial[k] = theta[k] + step * grad[k];
        detail::project_simplex(trial);
        const double val = prob.eval(trial);
        if (val > cur) {
          theta = trial;
          cur = val;
          step = std::min(step * 1.5, 64.0);
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      hist.push_back(cur);
      if (!accepted) break;
      const int win = cfg.plateau_window;
      if (static_cast<int>(hist.size()) > win &&
          cur - hist[hist.size() - 1 - static_cast<std::size_t>(win)] <
              cfg.plateau_eps)
        break;
    }
    rec.iters = iter;
    rec.search_value = cur;

    if (auto wq = rationalize_theta(theta)) {
      if (auto rq = exact_score(*wq)) {
        rec.exact_ratio = *rq;
        best.offer(*rq, std::move(*wq));
      } else {
        rec.skipped = true;
      }
    } else {
      rec.skipped = true;
    }
    report.restarts.push_back(std::move(rec));
  }

  if (best.found) {
    report.found = true;
    report.best = best.w;
    report.ratio = best.ratio;
    report.bound = root(Scalar(best.ratio), p).to_double();
  }
  return report;
}

namespace detail {

// Integer fast path for the T = 2 ratio on <= 3 states: with integer
// weights c and integer p-th-power distances D, the ratio is
//   [sum_k (prod_{k' != k} r_k') S_k] / [(prod_k r_k) 2 sum w D],
// S_k = sum_{ij} w_ik w_kj D_ij, entirely in 64-bit with 128-bit compares.
// num and den are polynomials of degree <= 4 along the line where the last
// two slots trade mass (v, left - v), so the innermost loop advances
// forward-difference tables instead of re-evaluating the forms.
struct FastGridMax {
  std::size_t n = 0;
  std::vector<long long> d;  // n*n integer costs
  long long best_num = -1, best_den = 1;
  std::vector<long long> best_c;

  bool better(long long num, long long den) const {
    if (best_num < 0) return true;
    return static_cast<__int128>(num) * best_den >
           static_cast<__int128>(den) * best_num;
  }

  void offer(long long num, long long den, const std::vector<long long>& c) {
    // den == 0 marks an isolated state or a walk that never moves.
    if (den == 0) return;
    if (better(num, den)) {
      best_num = num;
      best_den = den;
      best_c = c;
    }
  }

  // Divisionless evaluation; zero row sums and zero one-step energy both
  // surface as den == 0 rather than as early exits, keeping (num, den)
  // polynomial in the slot values.
  std::pair<long long, long long> eval(const std::vector<long long>& c) const {
    long long w[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++s) {
        w[i][j] = c[s];
        w[j][i] = c[s];
      }
    long long r[3] = {0, 0, 0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) r[i] += w[i][j];
    long long e1w = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e1w += w[i][j] * d[i * n + j];

    long long num = 0;
    for (std::size_t k = 0; k < n; ++k) {
      long long sk = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (w[i][k] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
          sk += w[i][k] * w[k][j] * d[i * n + j];
      }
      long long cof = 1;
      for (std::size_t k2 = 0; k2 < n; ++k2)
        if (k2 != k) cof *= r[k2];
      num += cof * sk;
    }
    long long rprod = 1;
    for (std::size_t k = 0; k < n; ++k) rprod *= r[k];
    return {num, rprod * 2 * e1w};
  }

  void consider(const std::vector<long long>& c) {
    const auto [num, den] = eval(c);
    offer(num, den, c);
  }

  // Scan c[m-2] = v, c[m-1] = left - v for v = 0..left with the prefix
  // fixed, stepping two degree-4 difference tables.
  void scan_last_two(std::vector<long long>& c, long long left) {
    const std::size_t m = c.size();
    if (left <= 4) {
      for (long long v = 0; v <= left; ++v) {
        c[m - 2] = v;
        c[m - 1] = left - v;
        consider(c);
      }
      return;
    }
    long long fn[5], fd[5];
    for (long long v = 0; v < 5; ++v) {
      c[m - 2] = v;
      c[m - 1] = left - v;
      const auto [num, den] = eval(c);
      fn[v] = num;
      fd[v] = den;
    }
    // In-place forward differences at v = 0.
    for (int o = 1; o < 5; ++o)
      for (int i = 4; i >= o; --i) {
        fn[i] -= fn[i - 1];
        fd[i] -= fd[i - 1];
      }
    for (long long v = 0;; ++v) {
      c[m - 2] = v;
      c[m - 1] = left - v;
      offer(fn[0], fd[0], c);
      if (v == left) break;
      fn[0] += fn[1]; fn[1] += fn[2]; fn[2] += fn[3]; fn[3] += fn[4];
      fd[0] += fd[1]; fd[1] += fd[2]; fd[2] += fd[3]; fd[3] += fd[4];
    }
  }
};

}  // namespace detail

// Brute-force oracle: exact maximum of the ratio over the integer weight
// grid {c >= 0, sum c = resolution} on the flattened upper triangle, with
// the uniform matrix always included.  At most 6 free entries.
inline Scalar exhaustive_small(const FiniteMetricSpace& x,
                               const std::vector<std::size_t>& f, int p, int t,
                               long long resolution) {
  const std::size_t n = f.size();
  if (n < 1) throw LengthMismatch("empty state map");
  for (std::size_t v : f)
    if (v >= x.size()) throw IndexOutOfRange("state maps outside the space");
  const std::size_t m = n * (n + 1) / 2;
  if (m > 6)
    throw TooManyParameters("grid search supports at most 6 free weights");
  if (resolution < 1) throw OutOfRange("resolution must be >= 1");
  if (p < 1) throw InvalidExponent("moment exponent must be >= 1");
  if (t < 1) throw OutOfRange("time must be >= 1");

  const auto score_exact =
      [&](const std::vector<long long>& c) -> std::optional<Rational> {
    SquareMatrix<Rational> w(n, Rational(0));
    std::size_t s = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++s) {
        w(i, j) = Rational(c[s]);
        w(j, i) = w(i, j);
      }
    for (std::size_t i = 0; i < n; ++i) {
      Rational r = 0;
      for (std::size_t j = 0; j < n; ++j) r += w(i, j);
      if (r == 0) return std::nullopt;
    }
    try {
      const Scalar v =
          objective(WeightParam::create(std::move(w)), f, x, p, t,
                    std::max(t, kDefaultMaxT));
      return v.is_rational() ? v.rational() : Rational(v.to_double());
    } catch (const DegenerateWalk&) {
      return std::nullopt;
    }
  };

  std::optional<Rational> best;
  const auto offer = [&](const std::optional<Rational>& r) {
    if (r && (!best || *r > *best)) best = *r;
  };

  // The uniform matrix is always a candidate; resolution 1 degenerates to
  // it alone (the grid's only point is the barycenter).
  offer(score_exact(std::vector<long long>(m, 1)));
  if (resolution == 1) {
    if (!best) throw DegenerateWalk("the uniform candidate is degenerate");
    return Scalar(*best);
  }

  // Integer fast path when T = 2, <= 3 states, exact space, and the p-th
  // power distances clear to 64-bit integers without overflow risk.
  bool fast = t == 2 && x.exact() && n <= 3;
  detail::FastGridMax fg;
  if (fast) {
    Integer den = 1;
    std::vector<Rational> dp(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        dp[i * n + j] =
            pow_int(x.dist(f[i], f[j]).rational(), static_cast<unsigned>(p));
        den = boost::multiprecision::lcm(
            den, boost::multiprecision::denominator(dp[i * n + j]));
      }
    Integer dmax = 0;
    std::vector<Integer> di(n * n);
    for (std::size_t k = 0; k < n * n; ++k) {
      di[k] = boost::multiprecision::numerator(dp[k]) *
              (den / boost::multiprecision::denominator(dp[k]));
      dmax = std::max(dmax, di[k]);
    }
    // Both forms stay <= 48 R^4 Dmax and the difference tables amplify by
    // at most 2^4; everything must clear int64.
    const Integer r4 = pow(Integer(resolution), 4);
    const Integer bound = Integer(1152) * r4 * dmax;
    if (dmax == 0 || bound > Integer("9000000000000000000")) {
      fast = false;
    } else {
      fg.n = n;
      fg.d.resize(n * n);
      for (std::size_t k = 0; k < n * n; ++k)
        fg.d[k] = static_cast<long long>(di[k]);
    }
  }

  // Enumerate compositions of `resolution` into m slots.
  std::vector<long long> c(m, 0);
  const auto walk = [&](auto&& self, std::size_t slot, long long left) -> void {
    if (fast && m >= 2 && slot + 2 == m) {
      fg.scan_last_two(c, left);
      return;
    }
    if (slot + 1 == m) {
      c[slot] = left;
      if (fast)
        fg.consider(c);
      else
        offer(score_exact(c));
      return;
    }
    for (long long v = left; v >= 0; --v) {
      c[slot] = v;
      self(self, slot + 1, left - v);
    }
  };
  walk(walk, 0, resolution);

  if (fast && fg.best_num >= 0) {
    // Exact re-score of the fast path's winner through the standard route.
    const auto r = score_exact(fg.best_c);
    if (r && Rational(fg.best_num, fg.best_den) != *r)
      throw Error("grid fast path disagrees with exact re-score (internal)");
    offer(r);
  }

  if (!best) throw DegenerateWalk("every grid point is degenerate");
  return Scalar(*best);
}

}  // namespace mtype
