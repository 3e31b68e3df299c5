#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/matrix.hpp"
#include "mtype/scalar.hpp"

namespace mtype {

// Finite metric space: labeled points plus a validated distance matrix.
// Entries are exact rationals unless some construction introduced a p-th
// root, in which case the whole matrix is promoted to high-precision reals
// and comparisons use the declared tolerance.
class FiniteMetricSpace {
 public:
  static FiniteMetricSpace from_matrix(std::vector<std::string> labels,
                                       SquareMatrix<Scalar> dist,
                                       double tol = kRealTol) {
    if (labels.size() != dist.size())
      throw LengthMismatch("label count does not match matrix size");
    FiniteMetricSpace x(std::move(labels), std::move(dist), tol);
    x.homogenize();
    x.validate();
    return x;
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Scalar& dist(std::size_t i, std::size_t j) const { return d_(i, j); }
  const SquareMatrix<Scalar>& matrix() const { return d_; }
  bool exact() const { return exact_; }
  double tol() const { return tol_; }

  Scalar diameter() const {
    Scalar m(0);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (d_(i, j) > m) m = d_(i, j);
    return m;
  }

  // Sorted distinct distance values, including 0.  In real mode values
  // closer than tol are merged.
  std::vector<Scalar> realized_distances() const {
    std::vector<Scalar> vals;
    vals.push_back(Scalar(0));
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j) vals.push_back(d_(i, j));
    std::sort(vals.begin(), vals.end());
    std::vector<Scalar> out;
    for (const Scalar& v : vals)
      if (out.empty() || !approx_eq(out.back(), v, exact_ ? 0.0 : tol_))
        out.push_back(v);
    return out;
  }

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.labels_ == b.labels_ && a.d_ == b.d_;
  }

 private:
  FiniteMetricSpace(std::vector<std::string> labels, SquareMatrix<Scalar> d,
                    double tol)
      : labels_(std::move(labels)), d_(std::move(d)), tol_(tol) {}

  // A space is either fully exact or fully real; mixed input is promoted.
  void homogenize() {
    exact_ = true;
    for (std::size_t i = 0; i < size() && exact_; ++i)
      for (std::size_t j = 0; j < size(); ++j)
        if (!d_(i, j).is_rational()) {
          exact_ = false;
          break;
        }
    if (!exact_)
      for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j)
          if (d_(i, j).is_rational()) d_(i, j) = Scalar(d_(i, j).real());
  }

  void validate() const {
    const std::size_t n = size();
    const double tol = exact_ ? 0.0 : tol_;
    const auto npos = static_cast<std::size_t>(-1);
    for (std::size_t i = 0; i < n; ++i)
      if (!approx_eq(d_(i, i), Scalar(0), tol))
        throw MetricViolation(MetricViolation::Kind::Diagonal, i, npos, npos,
                              "nonzero diagonal at index " + std::to_string(i));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!approx_eq(d_(i, j), d_(j, i), tol))
          throw MetricViolation(MetricViolation::Kind::Symmetry, i, j, npos,
                                "asymmetric entries at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
        if (!(d_(i, j) > Scalar(0)) || (!exact_ && d_(i, j).real() <= Real(tol_)))
          throw MetricViolation(MetricViolation::Kind::CoincidentPoints, i, j,
                                npos,
                                "zero distance between distinct points " +
                                    std::to_string(i) + "," + std::to_string(j));
      }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          if (!approx_le(d_(i, k), d_(i, j) + d_(j, k), tol))
            throw MetricViolation(MetricViolation::Kind::Triangle, i, j, k,
                                  "triangle inequality fails for (" +
                                      std::to_string(i) + "," +
                                      std::to_string(j) + "," +
                                      std::to_string(k) + ")");
        }
      }
  }

  std::vector<std::string> labels_;
  SquareMatrix<Scalar> d_;
  double tol_;
  bool exact_ = true;
};

inline FiniteMetricSpace from_matrix(std::vector<std::string> labels,
                                     SquareMatrix<Scalar> dist,
                                     double tol = kRealTol) {
  return FiniteMetricSpace::from_matrix(std::move(labels), std::move(dist), tol);
}

// d((x1,y1),(x2,y2)) = (d_X^p + d_Y^p)^{1/p}.  Exact for p = 1; otherwise the
// result space is in real mode.
inline FiniteMetricSpace p_product(const FiniteMetricSpace& x,
                                   const FiniteMetricSpace& y, double p) {
  if (p < 1) throw InvalidExponent("product exponent must be >= 1");
  const std::size_t nx = x.size(), ny = y.size(), n = nx * ny;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j)
      labels.push_back("(" + x.label(i) + "," + y.label(j) + ")");
  SquareMatrix<Scalar> d(n, Scalar(0));
  const bool integral = p == std::floor(p);
  for (std::size_t i1 = 0; i1 < nx; ++i1)
    for (std::size_t j1 = 0; j1 < ny; ++j1)
      for (std::size_t i2 = 0; i2 < nx; ++i2)
        for (std::size_t j2 = 0; j2 < ny; ++j2) {
          const std::size_t a = i1 * ny + j1, b = i2 * ny + j2;
          if (a > b) continue;
          Scalar v;
          if (p == 1.0) {
            v = x.dist(i1, i2) + y.dist(j1, j2);
          } else if (integral) {
            const unsigned e = static_cast<unsigned>(p);
            v = root(pow_int(x.dist(i1, i2), e) + pow_int(y.dist(j1, j2), e),
                     static_cast<int>(e));
          } else {
            v = pow_real(pow_real(x.dist(i1, i2), p) + pow_real(y.dist(j1, j2), p),
                         1.0 / p);
          }
          d(a, b) = v;
          d(b, a) = v;
        }
  return FiniteMetricSpace::from_matrix(std::move(labels), std::move(d));
}

// n-fold p-product of X with itself, folded left.
inline FiniteMetricSpace p_power(const FiniteMetricSpace& x, int n, double p) {
  if (n < 1) throw InvalidExponent("power must be >= 1");
  if (p < 1) throw InvalidExponent("product exponent must be >= 1");
  FiniteMetricSpace acc = x;
  for (int k = 1; k < n; ++k) acc = p_product(acc, x, p);
  return acc;
}

inline FiniteMetricSpace scale(const FiniteMetricSpace& x, const Scalar& c) {
  if (!(c > Scalar(0))) throw InvalidScale("scale factor must be positive");
  SquareMatrix<Scalar> d(x.size(), Scalar(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) d(i, j) = c * x.dist(i, j);
  return FiniteMetricSpace::from_matrix(x.labels(), std::move(d), x.tol());
}

// Distances raised to the power alpha in (0,1].  Concavity of t^alpha keeps
// the triangle inequality.  alpha < 1 switches the space to real mode.
inline FiniteMetricSpace snowflake(const FiniteMetricSpace& x, double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0)
    throw InvalidExponent("snowflake exponent must be in (0,1]");
  if (alpha == 1.0) return x;
  SquareMatrix<Scalar> d(x.size(), Scalar(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      d(i, j) = i == j ? Scalar(0) : pow_real(x.dist(i, j), alpha);
  return FiniteMetricSpace::from_matrix(x.labels(), std::move(d), x.tol());
}

// {0,1}^d with the coordinate-count metric.  Point index encodes the
// coordinates as bits, most significant bit first.
inline FiniteMetricSpace hamming_cube(int d) {
  if (d < 1) throw OutOfRange("cube dimension must be >= 1");
  if (d > 20) throw TooLarge("cube dimension too large");
  const std::size_t n = std::size_t(1) << d;
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string s(static_cast<std::size_t>(d), '0');
    for (int b = 0; b < d; ++b)
      if (i >> (d - 1 - b) & 1u) s[static_cast<std::size_t>(b)] = '1';
    labels[i] = s;
  }
  SquareMatrix<Scalar> dist(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      dist(i, j) = Scalar(static_cast<long long>(__builtin_popcountll(i ^ j)));
  return FiniteMetricSpace::from_matrix(std::move(labels), std::move(dist));
}

inline long long cycle_distance(long long n, long long i, long long j) {
  const long long k = std::abs(i - j);
  return std::min(k, n - k);
}

// n equally spaced points on a circle of circumference n.
inline FiniteMetricSpace cycle(int n) {
  if (n < 3) throw OutOfRange("cycle needs at least 3 points");
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = std::to_string(i);
  SquareMatrix<Scalar> dist(static_cast<std::size_t>(n), Scalar(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      dist(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
          Scalar(cycle_distance(n, i, j));
  return FiniteMetricSpace::from_matrix(std::move(labels), std::move(dist));
}

namespace detail {

// sqrt on rationals when the value is a perfect square, else a Real.
inline Scalar sqrt_preferring_exact(const Integer& n) {
  const Integer r = boost::multiprecision::sqrt(n);
  if (r * r == n) return Scalar(Rational(r));
  return Scalar(boost::multiprecision::sqrt(to_real(Rational(n))));
}

}  // namespace detail

// Lattice points of the flat torus (R/kZ)^d: the Euclidean combination of
// per-coordinate circle distances.  Exact whenever the squared distance is a
// perfect square (always for d = 1).
inline FiniteMetricSpace discrete_torus(int k, int d) {
  if (k < 3) throw OutOfRange("torus side must be >= 3");
  if (d < 1) throw OutOfRange("torus dimension must be >= 1");
  std::size_t n = 1;
  for (int c = 0; c < d; ++c) {
    n *= static_cast<std::size_t>(k);
    if (n > 100000) throw TooLarge("torus has too many points");
  }
  const auto digits = [&](std::size_t idx) {
    std::vector<long long> v(static_cast<std::size_t>(d));
    for (int c = d - 1; c >= 0; --c) {
      v[static_cast<std::size_t>(c)] = static_cast<long long>(idx % k);
      idx /= static_cast<std::size_t>(k);
    }
    return v;
  };
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = digits(i);
    std::string s = "(";
    for (int c = 0; c < d; ++c)
      s += std::to_string(v[static_cast<std::size_t>(c)]) + (c + 1 < d ? "," : ")");
    labels[i] = s;
  }
  SquareMatrix<Scalar> dist(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto vi = digits(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto vj = digits(j);
      Integer sq = 0;
      for (int c = 0; c < d; ++c) {
        const long long s =
            cycle_distance(k, vi[static_cast<std::size_t>(c)], vj[static_cast<std::size_t>(c)]);
        sq += Integer(s) * s;
      }
      const Scalar v = detail::sqrt_preferring_exact(sq);
      dist(i, j) = v;
      dist(j, i) = v;
    }
  }
  return FiniteMetricSpace::from_matrix(std::move(labels), std::move(dist));
}

// chi sends closed balls onto closed balls of the same radius, for every
// center and every realized radius of either space.
inline bool is_submetry(const std::vector<std::size_t>& chi,
                        const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (chi.size() != x.size())
    throw LengthMismatch("projection must cover every point");
  std::vector<bool> hit(y.size(), false);
  for (std::size_t v : chi) {
    if (v >= y.size()) throw IndexOutOfRange("projection target out of range");
    hit[v] = true;
  }
  for (bool h : hit)
    if (!h) throw NotSurjective("projection misses a point of the target space");

  std::vector<Scalar> radii = x.realized_distances();
  for (const Scalar& r : y.realized_distances()) radii.push_back(r);
  std::sort(radii.begin(), radii.end());
  const double tol = x.exact() && y.exact() ? 0.0 : std::max(x.tol(), y.tol());

  std::vector<bool> img(y.size()), ball(y.size());
  for (std::size_t c = 0; c < x.size(); ++c)
    for (const Scalar& r : radii) {
      std::fill(img.begin(), img.end(), false);
      std::fill(ball.begin(), ball.end(), false);
      for (std::size_t u = 0; u < x.size(); ++u)
        if (approx_le(x.dist(c, u), r, tol)) img[chi[u]] = true;
      for (std::size_t z = 0; z < y.size(); ++z)
        if (approx_le(y.dist(chi[c], z), r, tol)) ball[z] = true;
      if (img != ball) return false;
    }
  return true;
}

}  // namespace mtype
