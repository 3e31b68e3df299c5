#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/scalar.hpp"

namespace mtype {

// One row: coef . x = rhs (Eq) or coef . x <= rhs (Le).  Nonnegativity of a
// variable is expressed as an explicit Le row (-x_i <= 0).
struct LinearConstraint {
  enum class Kind { Eq, Le };
  std::vector<Rational> coef;
  Rational rhs;
  Kind kind = Kind::Eq;

  static LinearConstraint eq(std::vector<Rational> c, Rational r) {
    return {std::move(c), std::move(r), Kind::Eq};
  }
  static LinearConstraint le(std::vector<Rational> c, Rational r) {
    return {std::move(c), std::move(r), Kind::Le};
  }
};

// Outcome of an exact feasibility solve.  When infeasible, witness holds one
// multiplier per original row: nonnegative on Le rows, unrestricted on Eq
// rows, combining the system into the contradiction 0 <= c with c < 0
// (0 = c with c != 0 when only Eq rows participate).
struct Feasibility {
  bool feasible = false;
  std::vector<Rational> point;
  std::vector<Rational> witness;
};

inline bool verify_infeasibility_witness(
    const std::vector<LinearConstraint>& rows, std::size_t nvars,
    const std::vector<Rational>& witness) {
  if (witness.size() != rows.size()) return false;
  bool any = false, any_le = false;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (witness[r] == 0) continue;
    any = true;
    if (rows[r].kind == LinearConstraint::Kind::Le) {
      if (witness[r] < 0) return false;
      any_le = true;
    }
  }
  if (!any) return false;
  for (std::size_t v = 0; v < nvars; ++v) {
    Rational c = 0;
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (witness[r] != 0) c += witness[r] * rows[r].coef[v];
    if (c != 0) return false;
  }
  Rational rhs = 0;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (witness[r] != 0) rhs += witness[r] * rows[r].rhs;
  // Combined row is 0 <= rhs (or 0 = rhs); a contradiction needs rhs < 0,
  // or rhs != 0 in the pure-equality case.
  return any_le ? rhs < 0 : rhs != 0;
}

namespace detail {

// Working row with provenance: multipliers over the original constraints
// such that (coef, rhs) = sum prov[r] * original_r.
struct TrackedRow {
  std::vector<Rational> coef;
  Rational rhs;
  std::vector<Rational> prov;
};

inline void axpy(TrackedRow& dst, const Rational& c, const TrackedRow& src) {
  if (c == 0) return;
  for (std::size_t v = 0; v < dst.coef.size(); ++v)
    dst.coef[v] += c * src.coef[v];
  dst.rhs += c * src.rhs;
  for (std::size_t r = 0; r < dst.prov.size(); ++r)
    dst.prov[r] += c * src.prov[r];
}

inline void scale_row(TrackedRow& row, const Rational& c) {
  for (auto& x : row.coef) x *= c;
  row.rhs *= c;
  for (auto& x : row.prov) x *= c;
}

}  // namespace detail

// Exact rational feasibility of {Eq rows, Le rows}: Gaussian elimination on
// the equalities, then Fourier-Motzkin on the remaining inequalities.  Both
// phases carry provenance so an infeasible outcome returns a checkable
// witness; a feasible one returns a concrete rational point.
inline Feasibility solve_linear_system(const std::vector<LinearConstraint>& rows,
                                       std::size_t nvars) {
  using detail::TrackedRow;
  const std::size_t m = rows.size();
  for (const auto& r : rows)
    if (r.coef.size() != nvars)
      throw LengthMismatch("constraint arity does not match variable count");

  std::vector<TrackedRow> eqs, les;
  for (std::size_t r = 0; r < m; ++r) {
    TrackedRow t{rows[r].coef, rows[r].rhs, std::vector<Rational>(m, 0)};
    t.prov[r] = 1;
    (rows[r].kind == LinearConstraint::Kind::Eq ? eqs : les).push_back(std::move(t));
  }

  Feasibility out;

  // Phase 1: reduce equalities to solved form pivot_var = rhs - free part.
  std::vector<std::pair<std::size_t, TrackedRow>> solved;  // (pivot var, row)
  std::vector<bool> is_pivot(nvars, false);
  for (std::size_t e = 0; e < eqs.size(); ++e) {
    TrackedRow& row = eqs[e];
    std::size_t piv = nvars;
    for (std::size_t v = 0; v < nvars; ++v)
      if (row.coef[v] != 0) {
        piv = v;
        break;
      }
    if (piv == nvars) {
      if (row.rhs != 0) {
        out.feasible = false;
        out.witness = row.prov;
        return out;
      }
      continue;  // redundant row
    }
    detail::scale_row(row, Rational(1) / row.coef[piv]);
    for (std::size_t e2 = e + 1; e2 < eqs.size(); ++e2)
      detail::axpy(eqs[e2], -eqs[e2].coef[piv], row);
    for (auto& [pv, srow] : solved) detail::axpy(srow, -srow.coef[piv], row);
    for (auto& lrow : les) detail::axpy(lrow, -lrow.coef[piv], row);
    is_pivot[piv] = true;
    solved.push_back({piv, row});
  }

  // Phase 2: Fourier-Motzkin over the free variables.
  std::vector<std::size_t> free_vars;
  for (std::size_t v = 0; v < nvars; ++v)
    if (!is_pivot[v]) free_vars.push_back(v);

  // Bounds saved per eliminated variable for back-substitution.
  struct Stage {
    std::size_t var;
    std::vector<TrackedRow> uppers;  // x_var <= rhs - coef.x (coef[var] = 1)
    std::vector<TrackedRow> lowers;  // -x_var <= ...         (coef[var] = -1)
  };
  std::vector<Stage> stages;

  for (std::size_t v : free_vars) {
    Stage st;
    st.var = v;
    std::vector<TrackedRow> rest;
    for (auto& row : les) {
      if (row.coef[v] > 0) {
        detail::scale_row(row, Rational(1) / row.coef[v]);
        st.uppers.push_back(std::move(row));
      } else if (row.coef[v] < 0) {
        detail::scale_row(row, Rational(-1) / row.coef[v]);
        st.lowers.push_back(std::move(row));
      } else {
        rest.push_back(std::move(row));
      }
    }
    for (const auto& up : st.uppers)
      for (const auto& lo : st.lowers) {
        TrackedRow combo = up;
        detail::axpy(combo, Rational(1), lo);
        rest.push_back(std::move(combo));
      }
    les = std::move(rest);
    stages.push_back(std::move(st));
  }

  // Only constant rows remain: 0 <= rhs.
  for (const auto& row : les)
    if (row.rhs < 0) {
      out.feasible = false;
      out.witness = row.prov;
      return out;
    }

  // Back-substitute a feasible point, last eliminated variable first.
  std::vector<Rational> x(nvars, 0);
  const auto eval = [&](const TrackedRow& row, std::size_t skip) {
    Rational s = row.rhs;
    for (std::size_t v = 0; v < nvars; ++v)
      if (v != skip && row.coef[v] != 0) s -= row.coef[v] * x[v];
    return s;
  };
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    std::optional<Rational> lo, hi;
    for (const auto& row : it->uppers) {
      const Rational b = eval(row, it->var);
      if (!hi || b < *hi) hi = b;
    }
    for (const auto& row : it->lowers) {
      const Rational b = -eval(row, it->var);
      if (!lo || b > *lo) lo = b;
    }
    if (lo && hi)
      x[it->var] = (*lo + *hi) / 2;
    else if (lo)
      x[it->var] = *lo;
    else if (hi)
      x[it->var] = *hi < 0 ? *hi : Rational(0);
    else
      x[it->var] = 0;
  }
  for (auto it = solved.rbegin(); it != solved.rend(); ++it)
    x[it->first] = eval(it->second, it->first);

  out.feasible = true;
  out.point = std::move(x);
  return out;
}

}  // namespace mtype
