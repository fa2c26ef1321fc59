#pragma once

// Integer linear systems A x = b solved by column Hermite reduction.

#include <cstddef>
#include <optional>
#include <vector>

#include "conjlab/bigint.hpp"

namespace conjlab {

using IntVector = std::vector<BigInt>;
using IntMatrix = std::vector<IntVector>;

struct IntegerLinearSystem {
  IntMatrix matrix;  // rows x cols
  IntVector target;  // rows

  [[nodiscard]] std::size_t rows() const noexcept { return matrix.size(); }
  [[nodiscard]] std::size_t cols() const noexcept {
    return matrix.empty() ? 0 : matrix.front().size();
  }
  /// Throws std::invalid_argument on ragged rows or a target of the wrong size.
  void validate() const;
};

/// A U = H with U unimodular and H in column echelon form: every row either
/// carries a new pivot (positive, all entries to its right zero) or has zeros
/// from the current pivot column onward.
struct ColumnHermiteForm {
  IntMatrix h;
  IntMatrix u;
  std::vector<std::size_t> pivot_rows;  // pivot_rows[k] is the row of pivot column k
};

ColumnHermiteForm column_hermite_form(const IntMatrix& a, std::size_t cols);

/// Some integer x with A x = b, or nullopt when none exists.
std::optional<IntVector> hnf_solve(const IntegerLinearSystem& sys);

IntVector mat_vec(const IntMatrix& a, const IntVector& x);

}  // namespace conjlab
