#include "rvq/matrix.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace rvq {

using Rat = boost::multiprecision::cpp_rational;

IntMatrix from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

namespace {

// Fraction-free elimination (Bareiss). Returns the rank and leaves the
// determinant of the leading block in the last pivot.
std::size_t bareiss(IntMatrix& a, BigInt& det) {
  const std::size_t n = a.rows(), c = a.cols();
  BigInt prev = 1;
  int sign = 1;
  std::size_t r = 0;
  for (std::size_t col = 0; col < c && r < n; ++col) {
    std::size_t p = r;
    while (p < n && a(p, col) == 0) ++p;
    if (p == n) continue;
    if (p != r) {
      for (std::size_t j = 0; j < c; ++j) std::swap(a(p, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < n; ++i) {
      for (std::size_t j = col + 1; j < c; ++j)
        a(i, j) = (a(r, col) * a(i, j) - a(i, col) * a(r, j)) / prev;
      a(i, col) = 0;
    }
    prev = a(r, col);
    ++r;
  }
  det = sign * prev;
  return r;
}

}  // namespace

std::size_t rank(const IntMatrix& m) {
  IntMatrix a = m;
  BigInt det;
  return bareiss(a, det);
}

BigInt determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::OutOfRange, "determinant of a non-square matrix");
  if (m.rows() == 0) return 1;
  IntMatrix a = m;
  BigInt det;
  if (bareiss(a, det) < m.rows()) return 0;
  return det;
}

IntMatrix integer_inverse(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw Error(ErrorCode::OutOfRange, "inverse of a non-square matrix");
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));
    a[i][n + i] = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = col;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) throw Error(ErrorCode::OutOfRange, "singular matrix");
    std::swap(a[p], a[col]);
    const Rat piv = a[col][col];
    for (auto& x : a[col]) x /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rat f = a[i][col];
      for (std::size_t j = 0; j < 2 * n; ++j) a[i][j] -= f * a[col][j];
    }
  }
  IntMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat& x = a[i][n + j];
      if (denominator(x) != 1) throw Error(ErrorCode::OutOfRange, "inverse is not integral");
      inv(i, j) = numerator(x);
    }
  return inv;
}

BigInt content(const IntMatrix& m) {
  BigInt g = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) g = gcd(g, abs(m(i, j)));
  return g;
}

std::string to_string(const IntMatrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += m(i, j).str();
    }
    out += '\n';
  }
  return out;
}

}  // namespace rvq
