#include <doctest.h>

#include "rvq/matrix.hpp"

using namespace rvq;

TEST_CASE("rank, determinant and inverse") {
  auto m = from_rows({{2, 1}, {1, 1}});
  CHECK(determinant(m) == 1);
  CHECK(rank(m) == 2);
  CHECK(integer_inverse(m) == from_rows({{1, -1}, {-1, 2}}));
  CHECK(m * integer_inverse(m) == IntMatrix::identity(2));
  auto s = from_rows({{1, 2}, {2, 4}});
  CHECK(rank(s) == 1);
  CHECK(determinant(s) == 0);
  CHECK_THROWS_AS(integer_inverse(from_rows({{2, 0}, {0, 1}})), Error);
  CHECK(content(from_rows({{0, 4}, {-6, 0}})) == 2);
  CHECK(to_string(from_rows({{1, -2}, {3, 4}})).rfind("1 -2\n3 4", 0) == 0);
}

TEST_CASE("big entries do not overflow") {
  auto m = from_rows({{1, 1}, {1, 2}});
  IntMatrix p = IntMatrix::identity(2);
  for (int i = 0; i < 100; ++i) p = p * m;
  CHECK(determinant(p) == 1);
  CHECK(p(1, 1) > BigInt(1) << 100);
}
