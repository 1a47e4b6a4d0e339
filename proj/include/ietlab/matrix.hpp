#pragma once

// Dense integer matrices with arbitrary-precision entries.

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

#include "error.hpp"
#include "quadreal.hpp"

namespace ietlab {

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ ? static_cast<int>(rows.begin()->size()) : 0;
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw Error(ErrorCode::invalid_argument, "ragged matrix");
      for (long v : r) data_.emplace_back(v);
    }
  }

  static IntMatrix identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  // 0-based element access.
  Integer& operator()(int r, int c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const Integer& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r * cols_ + c)]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols_ != y.rows_) throw Error(ErrorCode::invalid_argument, "matrix shape mismatch");
    IntMatrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i)
      for (int k = 0; k < x.cols_; ++k) {
        if (x(i, k) == 0) continue;
        for (int j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<Integer> apply(const std::vector<Integer>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw Error(ErrorCode::invalid_argument, "vector size mismatch");
    std::vector<Integer> r(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return r;
  }

  std::vector<QuadReal> apply(const std::vector<QuadReal>& v) const {
    if (static_cast<int>(v.size()) != cols_) throw Error(ErrorCode::invalid_argument, "vector size mismatch");
    std::vector<QuadReal> r(static_cast<std::size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if ((*this)(i, j) != 0)
          r[static_cast<std::size_t>(i)] += QuadReal(Rational((*this)(i, j))) * v[static_cast<std::size_t>(j)];
    return r;
  }

  Integer column_sum(int c) const {
    Integer s;
    for (int i = 0; i < rows_; ++i) s += (*this)(i, c);
    return s;
  }

  bool nonnegative() const {
    for (const auto& x : data_)
      if (x < 0) return false;
    return true;
  }
  bool positive() const {
    for (const auto& x : data_)
      if (x <= 0) return false;
    return !data_.empty();
  }

  // Fraction-free Gaussian elimination (Bareiss).
  Integer determinant() const {
    if (rows_ != cols_) throw Error(ErrorCode::invalid_argument, "determinant of a non-square matrix");
    int n = rows_;
    if (n == 0) return 1;
    IntMatrix m = *this;
    Integer prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
      if (m(k, k) == 0) {
        int p = k + 1;
        while (p < n && m(p, k) == 0) ++p;
        if (p == n) return 0;
        for (int j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
        sign = -sign;
      }
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < n; ++j) {
          m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
          mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
        }
      prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
  }

  std::string to_string() const {
    std::string s = "[";
    for (int i = 0; i < rows_; ++i) {
      s += i ? ",[" : "[";
      for (int j = 0; j < cols_; ++j) s += (j ? "," : "") + (*this)(i, j).get_str();
      s += "]";
    }
    return s + "]";
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Integer> data_;
};

// Solves m x = b over Q. Returns an empty vector when m is singular.
inline std::vector<Rational> solve_rational(const IntMatrix& m, const std::vector<Integer>& b) {
  int n = m.rows();
  std::vector<std::vector<Rational>> a(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n + 1)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = Rational(m(i, j));
    a[i][n] = Rational(b[static_cast<std::size_t>(i)]);
  }
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return {};
    std::swap(a[p], a[c]);
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c] == 0) continue;
      Rational f = a[i][c] / a[c][c];
      for (int j = c; j <= n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  std::vector<Rational> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[i] = a[i][n] / a[i][i];
  return x;
}

}  // namespace ietlab
