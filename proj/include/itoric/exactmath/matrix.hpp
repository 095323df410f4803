#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "itoric/errors.hpp"

namespace itoric {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  Matrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw DimensionMismatch("ragged initializer");
      for (long v : row) data_.emplace_back(v);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  // Columns given as vectors of equal length.
  static Matrix from_columns(const std::vector<std::vector<T>>& cols,
                             std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != rows) throw DimensionMismatch("column length");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows,
                          std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionMismatch("row length");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const T> entries() const { return data_; }

  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
  }
  std::vector<T> row(std::size_t r) const {
    return std::vector<T>(data_.begin() + r * cols_,
                          data_.begin() + (r + 1) * cols_);
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix select_columns(std::span<const std::size_t> idx) const {
    Matrix m(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
    return m;
  }
  Matrix select_rows(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(idx[i], j);
    return m;
  }

  void swap_columns(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void negate_column(std::size_t c) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
  }
  // col[dst] -= q * col[src]
  void axpy_column(std::size_t dst, const T& q, std::size_t src) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) -= q * (*this)(i, src);
  }

  std::vector<T> apply(std::span<const T> v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector product");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (sgn((*this)(i, j)) != 0 && sgn(v[j]) != 0) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (sgn(aik) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero_column(std::size_t c) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if (sgn((*this)(i, c)) != 0) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j);
  return r;
}

template <class T>
bool is_zero(std::span<const T> v) {
  return std::all_of(v.begin(), v.end(), [](const T& x) { return sgn(x) == 0; });
}

inline IntVector to_integers(std::span<const long> v) {
  return IntVector(v.begin(), v.end());
}

// {rows, cols, entries: [decimal strings]} keeps big entries lossless.
inline nlohmann::json to_json(const IntMatrix& m) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : m.entries()) entries.push_back(e.get_str());
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

inline IntMatrix int_matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (entries.size() != rows * cols)
    throw DimensionMismatch("entry count differs from rows*cols");
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c)
      m(i, c) = Integer(entries[i * cols + c].get<std::string>());
  return m;
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Matrix<T>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m(i, j);
    os << '\n';
  }
  return os;
}

}  // namespace itoric
