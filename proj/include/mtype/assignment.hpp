#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mtype/errors.hpp"
#include "mtype/matrix.hpp"
#include "mtype/scalar.hpp"

namespace mtype {

// Minimum-cost perfect assignment (Jonker-Volgenant style shortest
// augmenting paths with potentials).  All comparisons and updates are on
// Scalar, so rational costs give an exact optimum.  Returns the total cost
// and the column assigned to each row.
inline std::pair<Scalar, std::vector<std::size_t>> min_cost_assignment(
    const SquareMatrix<Scalar>& cost) {
  const std::size_t n = cost.size();
  if (n == 0) return {Scalar(0), {}};
  std::vector<Scalar> u(n + 1, Scalar(0)), v(n + 1, Scalar(0));
  // row_of[j] = row currently assigned to column j; column n is virtual.
  std::vector<std::size_t> row_of(n + 1, n);

  for (std::size_t i = 0; i < n; ++i) {
    row_of[n] = i;
    std::size_t j0 = n;
    std::vector<std::optional<Scalar>> minv(n + 1);
    std::vector<std::size_t> way(n + 1, n);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of[j0];
      std::optional<Scalar> delta;
      std::size_t j1 = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (used[j]) continue;
        const Scalar cur = cost(i0, j) - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      // A finite delta always exists: unused real columns remain.
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[row_of[j]] += *delta;
          v[j] -= *delta;
        } else if (minv[j]) {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (row_of[j0] != n);
    do {
      const std::size_t j1 = way[j0];
      row_of[j0] = row_of[j1];
      j0 = j1;
    } while (j0 != n);
  }

  std::vector<std::size_t> col_of(n, n);
  for (std::size_t j = 0; j < n; ++j)
    if (row_of[j] != n) col_of[row_of[j]] = j;
  Scalar total(0);
  for (std::size_t i = 0; i < n; ++i) total += cost(i, col_of[i]);
  return {total, col_of};
}

}  // namespace mtype
