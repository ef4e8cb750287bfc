#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rvq/errors.hpp"

namespace rvq {

using BigInt = boost::multiprecision::cpp_int;

// Dense row-major matrix. Cocycle matrices act on row vectors.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorCode::OutOfRange, "matrix shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

  Matrix operator*(const T& s) const {
    Matrix c = *this;
    for (auto& x : c.data_) x *= s;
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;

IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
std::size_t rank(const IntMatrix& m);
BigInt determinant(const IntMatrix& m);
// Exact inverse; throws OutOfRange unless the inverse is integral.
IntMatrix integer_inverse(const IntMatrix& m);
BigInt content(const IntMatrix& m);
// Rows separated by newlines, entries by single spaces.
std::string to_string(const IntMatrix& m);

}  // namespace rvq
