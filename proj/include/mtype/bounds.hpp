#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mtype/errors.hpp"
#include "mtype/scalar.hpp"

namespace mtype {

// Closed-form bound evaluators.  All arithmetic runs at 50 decimal digits;
// callers round to double at the end, so the printed value carries the full
// double precision of the formula.

inline Real bound_wp(double p, long long d, long long t) {
  if (!(p > 2)) throw OutOfRange("exponent must exceed 2");
  if (d < 1) throw OutOfRange("dimension must be >= 1");
  if (t < 1) throw OutOfRange("time must be >= 1");
  const Real rp(p);
  const Real expo = Real(1) / 2 - Real(1) / rp;
  return 16 * pow(Real(d), expo) * sqrt(rp) * pow(Real(t), expo);
}

inline Real bound_w2(double p, long long d) {
  if (!(p > 2)) throw OutOfRange("exponent must exceed 2");
  if (d < 1) throw OutOfRange("dimension must be >= 1");
  const Real rp(p);
  return 4 * pow(Real(d), Real(1) / 2 - Real(1) / rp) * sqrt(rp - 1);
}

// Distortion lower bound for the alpha-snowflake of an n-point space.  The
// constant C is a caller-supplied stand-in for an absolute constant that is
// not pinned down; default 1.  alpha = 1/2 is admitted (the growth factor
// degenerates to 1 there).
inline Real bound_distortion(double n, double alpha, double p, long long d,
                             double c = 1.0) {
  if (!(n >= 2)) throw OutOfRange("point count must be >= 2");
  if (!(alpha >= 0.5 && alpha <= 1)) throw OutOfRange("alpha must lie in [1/2, 1]");
  if (!(p > 2)) throw OutOfRange("exponent must exceed 2");
  if (d < 1) throw OutOfRange("dimension must be >= 1");
  if (!(c > 0)) throw OutOfRange("constant must be positive");
  const Real rp(p);
  return Real(c) * pow(Real(d), -Real(1) / 2 + Real(1) / rp) / sqrt(rp) *
         pow(log(Real(n)), Real(alpha) - Real(1) / 2);
}

// zeta = (p/2 - 1)/(p - 1); lands in (0, 1/2) for p > 2.
inline Real bound_zeta(double p) {
  if (!(p > 2)) throw OutOfRange("exponent must exceed 2");
  const Real rp(p);
  return (rp / 2 - 1) / (rp - 1);
}

}  // namespace mtype
