#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "harmvol/error.hpp"

namespace harmvol {

/// Dense row-major matrix over an exact scalar type.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

namespace detail {
template <class T>
bool is_zero_value(const T& v) {
  return v.is_zero();
}
inline bool is_zero_value(const mpz_class& v) { return sgn(v) == 0; }
}  // namespace detail

/// Rank by Gaussian elimination over a field.
template <class T>
std::size_t rank(Matrix<T> m) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && detail::is_zero_value(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    const T inv = reciprocal(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (detail::is_zero_value(m(i, c))) continue;
      const T f = m(i, c) * inv;
      for (std::size_t k = c; k < m.cols(); ++k)
        if (!detail::is_zero_value(m(r, k))) m(i, k) -= f * m(r, k);
    }
    ++r;
  }
  return r;
}

/// Determinant by Gaussian elimination; `one` supplies the multiplicative identity.
template <class T>
T determinant(Matrix<T> m, const T& one) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  T det = one;
  const std::size_t n = m.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && detail::is_zero_value(m(p, c))) ++p;
    if (p == n) return one - one;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    const T inv = reciprocal(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (detail::is_zero_value(m(i, c))) continue;
      const T f = m(i, c) * inv;
      for (std::size_t k = c; k < n; ++k) m(i, k) -= f * m(c, k);
    }
  }
  return det;
}

/// Gauss–Jordan inverse; nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(Matrix<T> m, const T& zero, const T& one) {
  if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<T> inv(n, n, zero);
  for (std::size_t i = 0; i < n; ++i) inv(i, i) = one;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && detail::is_zero_value(m(p, c))) ++p;
    if (p == n) return std::nullopt;
    m.swap_rows(p, c);
    inv.swap_rows(p, c);
    const T s = reciprocal(m(c, c));
    for (std::size_t k = 0; k < n; ++k) {
      m(c, k) *= s;
      inv(c, k) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || detail::is_zero_value(m(i, c))) continue;
      const T f = m(i, c);
      for (std::size_t k = 0; k < n; ++k) {
        m(i, k) -= f * m(c, k);
        inv(i, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

/// Solves B·c = v for a tall matrix B of full column rank. The row reduction
/// is recorded sparsely, so repeated solves against one basis stay cheap.
template <class T>
class LeftSolver {
 public:
  LeftSolver(Matrix<T> basis, const T& zero, const T& one) : cols_(basis.cols()), zero_(zero) {
    const std::size_t m = basis.rows();
    // ops_[r] is row r of the transform E with E·B = [I; 0].
    std::vector<std::vector<std::pair<std::size_t, T>>> e(m);
    for (std::size_t r = 0; r < m; ++r) e[r].emplace_back(r, one);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = r;
      while (p < m && detail::is_zero_value(basis(p, c))) ++p;
      if (p == m) throw DomainError("LeftSolver: basis is rank deficient");
      basis.swap_rows(p, r);
      std::swap(e[p], e[r]);
      const T s = reciprocal(basis(r, c));
      for (std::size_t k = 0; k < cols_; ++k) basis(r, k) *= s;
      for (auto& [idx, val] : e[r]) val *= s;
      for (std::size_t i = 0; i < m; ++i) {
        if (i == r || detail::is_zero_value(basis(i, c))) continue;
        const T f = basis(i, c);
        for (std::size_t k = 0; k < cols_; ++k)
          if (!detail::is_zero_value(basis(r, k))) basis(i, k) -= f * basis(r, k);
        axpy(e[i], f, e[r]);
      }
      ++r;
    }
    rows_ = std::move(e);
  }

  std::size_t unknowns() const noexcept { return cols_; }

  /// nullopt when v is outside the column span.
  std::optional<std::vector<T>> solve(std::span<const T> v) const {
    std::vector<T> out(cols_, zero_);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      T acc = zero_;
      for (const auto& [idx, val] : rows_[r])
        if (!detail::is_zero_value(v[idx])) acc += val * v[idx];
      if (r < cols_) {
        out[r] = std::move(acc);
      } else if (!detail::is_zero_value(acc)) {
        return std::nullopt;
      }
    }
    return out;
  }

 private:
  // dst -= f * src, both sparse and sorted by index.
  void axpy(std::vector<std::pair<std::size_t, T>>& dst, const T& f,
            const std::vector<std::pair<std::size_t, T>>& src) const {
    std::vector<std::pair<std::size_t, T>> out;
    out.reserve(dst.size() + src.size());
    std::size_t a = 0, b = 0;
    while (a < dst.size() || b < src.size()) {
      if (b == src.size() || (a < dst.size() && dst[a].first < src[b].first)) {
        out.push_back(std::move(dst[a++]));
      } else if (a == dst.size() || src[b].first < dst[a].first) {
        out.emplace_back(src[b].first, zero_ - f * src[b].second);
        ++b;
      } else {
        T v = dst[a].second - f * src[b].second;
        if (!detail::is_zero_value(v)) out.emplace_back(dst[a].first, std::move(v));
        ++a;
        ++b;
      }
    }
    dst = std::move(out);
  }

  std::size_t cols_;
  T zero_;
  std::vector<std::vector<std::pair<std::size_t, T>>> rows_;
};

/// Invariant factors d_1 | d_2 | … of an integer matrix (nonzero ones only).
std::vector<mpz_class> smith_invariants(Matrix<mpz_class> m);

/// Rank over ℤ/2 of a 0/1 matrix given as rows.
std::size_t rank_mod2(std::vector<std::vector<std::uint8_t>> rows);

}  // namespace harmvol
