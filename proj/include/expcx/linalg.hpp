#ifndef EXPCX_LINALG_HPP
#define EXPCX_LINALG_HPP

// Dense Gaussian elimination over F_p.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "expcx/field.hpp"

namespace expcx {

using Vector = std::vector<Residue>;

/// Reduced row-echelon basis of a growing subspace of F_p^width. Rows are
/// kept sorted by pivot column; every pivot is 1 and is the only nonzero entry
/// of its column. The reduced form of a subspace is unique, so the result does
/// not depend on the insertion order.
class RowEchelon {
 public:
  RowEchelon(PrimeField field, std::size_t width) : field_(field), width_(width) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  const std::vector<Vector>& rows() const noexcept { return rows_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

  /// Adds v to the spanning set. Returns false when v was already in the span.
  bool insert(Vector v) {
    const PrimeField& f = field_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Residue c = v[pivots_[r]];
      if (c == 0) continue;
      axpy(v, f.neg(c), rows_[r]);
    }
    std::size_t pivot = 0;
    while (pivot < width_ && v[pivot] == 0) ++pivot;
    if (pivot == width_) return false;
    const Residue inv = f.inv(v[pivot]);
    for (std::size_t k = pivot; k < width_; ++k) v[k] = f.mul(v[k], inv);
    for (auto& row : rows_) {
      const Residue c = row[pivot];
      if (c != 0) axpy(row, f.neg(c), v);
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
    return true;
  }

  /// Basis of {c : row . c = 0 for every row}, one vector per free column f
  /// (in increasing order) with c_f = 1 and c_pivot = -row[f].
  std::vector<Vector> orthogonal_complement() const {
    std::vector<bool> is_pivot(width_, false);
    for (std::size_t p : pivots_) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < width_; ++free) {
      if (is_pivot[free]) continue;
      Vector c(width_, 0);
      c[free] = 1;
      for (std::size_t r = 0; r < rows_.size(); ++r) c[pivots_[r]] = field_.neg(rows_[r][free]);
      basis.push_back(std::move(c));
    }
    return basis;
  }

 private:
  void axpy(Vector& dst, Residue a, const Vector& src) const {
    for (std::size_t k = 0; k < width_; ++k) {
      if (src[k] != 0) dst[k] = field_.add(dst[k], field_.mul(a, src[k]));
    }
  }

  PrimeField field_;
  std::size_t width_;
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Reduced row-echelon form of the span of `vectors`.
inline std::vector<Vector> rref_basis(const PrimeField& field, std::size_t width, const std::vector<Vector>& vectors) {
  RowEchelon ech(field, width);
  for (const auto& v : vectors) ech.insert(v);
  return ech.rows();
}

struct AffineSolution {
  Vector particular;
  std::vector<Vector> kernel;
};

/// Solves M u = rhs where `columns[c]` is column c of M (all of length
/// rhs.size()). Returns std::nullopt when the system is inconsistent.
inline std::optional<AffineSolution> solve_columns(const PrimeField& f, const std::vector<Vector>& columns,
                                                   const Vector& rhs) {
  const std::size_t rows = rhs.size();
  const std::size_t cols = columns.size();
  // Augmented matrix, row-major.
  std::vector<Vector> m(rows, Vector(cols + 1, 0));
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m[r][c] = columns[c][r];
    m[r][cols] = rhs[r];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    const Residue inv = f.inv(m[r][c]);
    for (auto& v : m[r]) v = f.mul(v, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Residue k = m[i][c];
      for (std::size_t j = c; j <= cols; ++j) m[i][j] = f.sub_mul(m[i][j], k, m[r][j]);
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (m[i][cols] != 0) return std::nullopt;
  }
  AffineSolution sol;
  sol.particular.assign(cols, 0);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) sol.particular[pivot_cols[i]] = m[i][cols];
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector k(cols, 0);
    k[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) k[pivot_cols[i]] = f.neg(m[i][free]);
    sol.kernel.push_back(std::move(k));
  }
  return sol;
}

namespace detail {

/// Lexicographic successor over [0, q)^n, last coordinate fastest.
inline bool odometer_next(std::vector<Residue>& digits, Residue q) {
  for (std::size_t pos = digits.size(); pos-- > 0;) {
    if (++digits[pos] < q) return true;
    digits[pos] = 0;
  }
  return false;
}

}  // namespace detail

/// Calls fn(v) for every v = sum c_i basis_i whose first nonzero coefficient
/// c_i is 1: one representative per projective point of the span. Stops early
/// when fn returns true; the return value reports whether it did.
template <typename Fn>
bool for_each_projective(const PrimeField& f, const std::vector<Vector>& basis, std::size_t width, Fn&& fn) {
  const std::size_t k = basis.size();
  const Residue q = f.modulus();
  for (std::size_t lead = 0; lead < k; ++lead) {
    // coefficients of basis[lead+1..k-1] run through all of F_q^(k-lead-1)
    std::vector<Residue> tail(k - lead - 1, 0);
    do {
      Vector v = basis[lead];
      for (std::size_t t = 0; t < tail.size(); ++t) {
        if (tail[t] == 0) continue;
        const Vector& b = basis[lead + 1 + t];
        for (std::size_t c = 0; c < width; ++c) v[c] = f.add(v[c], f.mul(tail[t], b[c]));
      }
      if (fn(static_cast<const Vector&>(v))) return true;
    } while (detail::odometer_next(tail, q));
  }
  return false;
}

}  // namespace expcx

#endif  // EXPCX_LINALG_HPP
