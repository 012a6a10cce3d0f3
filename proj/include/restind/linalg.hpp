#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "restind/error.hpp"
#include "restind/rational.hpp"

namespace restind {

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

namespace detail {

inline void divide_content(IntVector& v) {
  Integer g = 0;
  for (const auto& x : v)
    if (x != 0) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
      if (g == 1) return;
    }
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

}  // namespace detail

/// Row echelon basis grown one vector at a time; fraction-free with content removal.
class IncrementalRank {
public:
  explicit IncrementalRank(std::size_t dim) : dim_(dim) {}

  std::size_t dim() const noexcept { return dim_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  bool full() const noexcept { return rows_.size() == dim_; }

  /// Adds v; returns true if it was independent of the vectors already added.
  bool add(IntVector v) {
    if (v.size() != dim_) fail(ErrorCode::Internal, "IncrementalRank: dimension mismatch");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const auto c = pivots_[r];
      if (v[c] == 0) continue;
      const Integer a = rows_[r][c], b = v[c];
      for (std::size_t i = 0; i < dim_; ++i) v[i] = a * v[i] - b * rows_[r][i];
      detail::divide_content(v);
    }
    for (std::size_t i = 0; i < dim_; ++i)
      if (v[i] != 0) {
        pivots_.push_back(i);
        rows_.push_back(std::move(v));
        return true;
      }
    return false;
  }

private:
  std::size_t dim_;
  std::vector<IntVector> rows_;
  std::vector<std::size_t> pivots_;
};

/// Rank by Bareiss fraction-free elimination (independent of IncrementalRank).
inline std::size_t bareiss_rank(std::vector<IntVector> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        Integer t = m[rank][c] * m[r][k] - m[r][c] * m[rank][k];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[r][k] = t;
      }
      m[r][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

/// Bareiss determinant of a square integer matrix.
inline Integer bareiss_determinant(std::vector<IntVector> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Solves sum_i x_i * columns[i] = target over Q. Free variables are set to zero,
/// so the result is deterministic. Returns nullopt if target is not in the span.
inline std::optional<RatVector> solve_in_span(const std::vector<IntVector>& columns, const IntVector& target) {
  const std::size_t n = columns.size(), dim = target.size();
  std::vector<RatVector> a(dim, RatVector(n + 1));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = columns[j][i];
    a[i][n] = target[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t c = 0; c < n && row < dim; ++c) {
    std::size_t piv = row;
    while (piv < dim && a[piv][c] == 0) ++piv;
    if (piv == dim) continue;
    std::swap(a[piv], a[row]);
    const Rational lead = a[row][c];
    for (std::size_t k = c; k <= n; ++k) a[row][k] /= lead;
    for (std::size_t r = 0; r < dim; ++r) {
      if (r == row || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (std::size_t r = row; r < dim; ++r)
    if (a[r][n] != 0) return std::nullopt;
  RatVector x(n, 0);
  for (std::size_t r = 0; r < pivot_col.size(); ++r) x[pivot_col[r]] = a[r][n];
  // re-substitution
  for (std::size_t i = 0; i < dim; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (x[j] != 0) s += x[j] * columns[j][i];
    ensure(s == target[i], "solve_in_span: re-substitution failed");
  }
  return x;
}

}  // namespace restind
