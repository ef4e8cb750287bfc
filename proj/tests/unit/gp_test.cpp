#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "rvq/gp.hpp"

using namespace rvq;

TEST_CASE("parse torus and strict examples") {
  auto t = parse_gp("1 2 / 2 1");
  CHECK(t.top_size() == 2);
  CHECK(t.bottom_size() == 2);
  CHECK(t.is_genuine());

  auto s = parse_gp("1 2 3 A A 4 / 4 3 B B 2 1");
  CHECK(s.top_size() == 6);
  CHECK(s.bottom_size() == 6);
  CHECK_FALSE(s.is_genuine());
  CHECK(s.alphabet() == std::vector<std::string>{"1", "2", "3", "A", "4", "B"});
  CHECK(s.sigma(1) == 12);
  CHECK(s.sigma(4) == 5);
}

TEST_CASE("parse errors") {
  auto code = [](const char* text) {
    try {
      parse_gp(text);
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("no error for " << text);
    return ErrorCode::OutOfRange;
  };
  CHECK(code("1 2 / 2 2 1") == ErrorCode::LetterCountError);
  CHECK(code("1 2 2 1") == ErrorCode::MalformedText);
  CHECK(code("1 2 / 2 / 1") == ErrorCode::MalformedText);
  CHECK(code("/ 1 1") == ErrorCode::MalformedText);
  CHECK(code("1 / 1") == ErrorCode::LetterCountError);
}

TEST_CASE("canonical text round trip") {
  CHECK(parse_gp("  1   2 /2 1 ").to_string() == "1 2 / 2 1");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    auto rows = oracle::random_rows(rng, 2 + static_cast<int>(rng() % 8), rng() % 2);
    const auto text = oracle::print(rows);
    auto gp = parse_gp(text);
    CHECK(gp.to_string() == text);
    CHECK(parse_gp(gp.to_string()) == gp);
  }
}

TEST_CASE("validate reports convention status") {
  auto g = validate(parse_gp("1 2 3 4 / 4 3 2 1"));
  CHECK(g.genuine);
  CHECK(g.convention_holds);

  auto s = validate(parse_gp("1 2 3 A A 4 / 4 3 B B 2 1"));
  CHECK(s.strict);
  CHECK(s.top_duplicate);
  CHECK(s.bottom_duplicate);
  CHECK(s.convention_holds);

  auto v = validate(parse_gp("1 A A 2 / 2 1"));
  CHECK(v.strict);
  CHECK_FALSE(v.convention_holds);
  CHECK(v.violations.size() == 1);
}

TEST_CASE("irreducibility examples") {
  CHECK(is_irreducible(parse_gp("1 2 / 2 1")));
  CHECK(is_irreducible(parse_gp("1 2 3 A A 4 / 4 3 B B 2 1")));
  CHECK_FALSE(is_irreducible(parse_gp("1 2 3 4 / 1 2 3 4")));
  auto dec = find_reducing_decomposition(parse_gp("1 2 3 4 / 1 3 2 4"));
  REQUIRE(dec);
  CHECK(dec->pattern == "prefix");
}

TEST_CASE("irreducibility agrees with the suspension grid oracle") {
  std::mt19937_64 rng(11);
  int checked = 0, irreducible = 0;
  while (checked < 150) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const bool genuine = rng() % 4 == 0;
    auto rows = oracle::random_rows(rng, d, genuine);
    if (!genuine && !(oracle::has_duplicate(rows.top) && oracle::has_duplicate(rows.bottom))) continue;
    auto gp = parse_gp(oracle::print(rows));
    const bool irr = is_irreducible(gp);
    CHECK_MESSAGE(irr == oracle::has_suspension(rows, 6), oracle::print(rows));
    irreducible += irr;
    ++checked;
  }
  CHECK(irreducible > 10);
}

TEST_CASE("erase letters") {
  auto gp = parse_gp("1 2 3 A A 4 / 4 3 B B 2 1");
  CHECK(erase_letters(gp, std::vector<std::string>{"A", "B"}).to_string() == "1 2 3 4 / 4 3 2 1");
  CHECK(erase_letters(gp, std::vector<std::string>{}) == gp);
  auto row1 = parse_gp("1 2 3 A 4 A 5 6 / 6 5 4 3 2 B B 1");
  CHECK(erase_letters(row1, std::vector<std::string>{"A", "B"}).to_string() == "1 2 3 4 5 6 / 6 5 4 3 2 1");
  try {
    erase_letters(parse_gp("A A / B B C C"), std::vector<std::string>{"A"});
    FAIL("expected EmptyRow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyRow);
  }
}

TEST_CASE("reduced form and relabel") {
  auto gp = parse_gp("b a c / c a b");
  CHECK(reduced_form(gp).to_string() == "0 1 2 / 2 1 0");
  auto r = relabel(gp, {"x", "y", "z"});
  CHECK(r.to_string() == "x y z / z y x");
  CHECK(reduced_form(r) == reduced_form(gp));
}

TEST_CASE("suspension data on the torus") {
  auto t = parse_gp("1 2 / 2 1");
  SuspensionDatum good{{1, 1}, {1, -1}};
  CHECK(check_suspension(t, good).empty());
  SuspensionDatum bad{{1, -1}, {1, 1}};
  auto v = check_suspension(t, bad);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().kind == SuspensionViolation::Kind::TopPrefix);
  SuspensionDatum zero{{0, 1}, {1, -1}};
  auto z = check_suspension(t, zero);
  REQUIRE_FALSE(z.empty());
  CHECK(z.front().kind == SuspensionViolation::Kind::NonPositiveReal);
  // Exact arithmetic: totals that agree only up to rounding are rejected.
  SuspensionDatum near{{Rational(1, 3), 1}, {Rational(1, 3), -1}};
  CHECK(check_suspension(t, near).empty());
}

TEST_CASE("suspension of the genus-two strict example") {
  // Alphabet order 1 2 3 A 4 B. Top prefixes 5 6 7 6 5, bottom -5 -4 -5 -6 -5.
  auto gp = parse_gp("1 2 3 A A 4 / 4 3 B B 2 1");
  SuspensionDatum z{{1, 5}, {1, 1}, {1, 1}, {1, -1}, {1, -5}, {1, -1}};
  auto v = check_suspension(gp, z);
  CHECK(v.empty());
}
