#include "conjlab/linear_system.hpp"

#include <stdexcept>
#include <utility>

namespace conjlab {

void IntegerLinearSystem::validate() const {
  std::size_t n = cols();
  for (const auto& row : matrix)
    if (row.size() != n) throw std::invalid_argument("ragged coefficient matrix");
  if (target.size() != rows()) throw std::invalid_argument("target size does not match rows");
}

namespace {

// Replaces columns (p, c) by (s*p + t*c, -(b/g)*p + (a/g)*c) in both matrices.
void combine_columns(IntMatrix& m, std::size_t p, std::size_t c, const BigInt& s,
                     const BigInt& t, const BigInt& bg, const BigInt& ag) {
  for (auto& row : m) {
    BigInt vp = row[p];
    BigInt vc = row[c];
    row[p] = s * vp + t * vc;
    row[c] = ag * vc - bg * vp;
  }
}

void negate_column(IntMatrix& m, std::size_t c) {
  for (auto& row : m) row[c] = -row[c];
}

void swap_columns(IntMatrix& m, std::size_t x, std::size_t y) {
  for (auto& row : m) std::swap(row[x], row[y]);
}

}  // namespace

ColumnHermiteForm column_hermite_form(const IntMatrix& a, std::size_t cols) {
  ColumnHermiteForm f;
  f.h = a;
  f.u.assign(cols, IntVector(cols, 0));
  for (std::size_t i = 0; i < cols; ++i) f.u[i][i] = 1;

  std::size_t pc = 0;
  for (std::size_t r = 0; r < f.h.size() && pc < cols; ++r) {
    auto& row = f.h[r];
    std::size_t first = pc;
    while (first < cols && row[first] == 0) ++first;
    if (first == cols) continue;
    if (first != pc) {
      swap_columns(f.h, pc, first);
      swap_columns(f.u, pc, first);
    }
    for (std::size_t c = pc + 1; c < cols; ++c) {
      if (row[c] == 0) continue;
      BigInt s, t;
      BigInt av = row[pc];
      BigInt bv = row[c];
      BigInt g = ext_gcd(av, bv, s, t);
      BigInt ag = av / g;
      BigInt bg = bv / g;
      combine_columns(f.h, pc, c, s, t, bg, ag);
      combine_columns(f.u, pc, c, s, t, bg, ag);
    }
    if (row[pc] < 0) {
      negate_column(f.h, pc);
      negate_column(f.u, pc);
    }
    // Keep earlier columns small relative to the new pivot.
    for (std::size_t c = 0; c < pc; ++c) {
      BigInt q = row[c] / row[pc];
      if (row[c] - q * row[pc] < 0) --q;
      if (q == 0) continue;
      for (auto* m : {&f.h, &f.u})
        for (auto& rr : *m) rr[c] -= q * rr[pc];
    }
    f.pivot_rows.push_back(r);
    ++pc;
  }
  return f;
}

std::optional<IntVector> hnf_solve(const IntegerLinearSystem& sys) {
  sys.validate();
  const std::size_t n = sys.cols();
  if (n == 0) {
    for (const auto& b : sys.target)
      if (b != 0) return std::nullopt;
    return IntVector{};
  }
  ColumnHermiteForm f = column_hermite_form(sys.matrix, n);
  const std::size_t rank = f.pivot_rows.size();
  IntVector y(n, 0);
  std::size_t k = 0;
  for (std::size_t r = 0; r < f.h.size(); ++r) {
    BigInt acc = 0;
    for (std::size_t c = 0; c < k; ++c) acc += f.h[r][c] * y[c];
    BigInt rest = sys.target[r] - acc;
    if (k < rank && f.pivot_rows[k] == r) {
      const BigInt& p = f.h[r][k];
      if (rest % p != 0) return std::nullopt;
      y[k] = rest / p;
      ++k;
    } else if (rest != 0) {
      return std::nullopt;
    }
  }
  return mat_vec(f.u, y);
}

IntVector mat_vec(const IntMatrix& a, const IntVector& x) {
  IntVector out(a.size(), 0);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < x.size(); ++c)
      if (x[c] != 0) out[r] += a[r][c] * x[c];
  return out;
}

}  // namespace conjlab
