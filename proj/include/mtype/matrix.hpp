#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/scalar.hpp"

namespace mtype {

template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() : n_(0) {}
  explicit SquareMatrix(std::size_t n, const T& fill = T())
      : n_(n), data_(n * n, fill) {}
  SquareMatrix(std::initializer_list<std::initializer_list<T>> rows) {
    n_ = rows.size();
    data_.reserve(n_ * n_);
    for (const auto& row : rows) {
      if (row.size() != n_) throw LengthMismatch("ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  std::size_t size() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[i * n_ + j];
  }

  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.n_ == b.n_ && a.data_ == b.data_;
  }

 private:
  std::size_t n_;
  std::vector<T> data_;
};

template <typename T>
SquareMatrix<T> mat_mul(const SquareMatrix<T>& a, const SquareMatrix<T>& b) {
  if (a.size() != b.size()) throw LengthMismatch("matrix size mismatch");
  const std::size_t n = a.size();
  SquareMatrix<T> c(n, T(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

namespace detail {

inline SquareMatrix<Integer> imat_mul(const SquareMatrix<Integer>& a,
                                      const SquareMatrix<Integer>& b) {
  const std::size_t n = a.size();
  SquareMatrix<Integer> c(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Integer& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

}  // namespace detail

// Exact T-th power of a rational matrix.  Entries are rescaled to a common
// denominator D so the squaring loop runs over integers; the result is
// N^T / D^T entrywise.
inline SquareMatrix<Rational> mat_pow(const SquareMatrix<Rational>& a,
                                      unsigned long long t) {
  const std::size_t n = a.size();
  SquareMatrix<Rational> result(n, Rational(0));
  if (t == 0) {
    for (std::size_t i = 0; i < n; ++i) result(i, i) = 1;
    return result;
  }
  Integer den = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      den = boost::multiprecision::lcm(den,
                                       boost::multiprecision::denominator(a(i, j)));
  SquareMatrix<Integer> base(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      base(i, j) = boost::multiprecision::numerator(a(i, j)) *
                   (den / boost::multiprecision::denominator(a(i, j)));

  SquareMatrix<Integer> acc;
  bool have_acc = false;
  Integer acc_den = 1, base_den = den;
  for (unsigned long long e = t; e > 0;) {
    if (e & 1ull) {
      acc = have_acc ? detail::imat_mul(acc, base) : base;
      acc_den *= base_den;
      have_acc = true;
    }
    e >>= 1ull;
    if (e > 0) {
      base = detail::imat_mul(base, base);
      base_den *= base_den;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      result(i, j) = Rational(acc(i, j), acc_den);
  return result;
}

}  // namespace mtype
