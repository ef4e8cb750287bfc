#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "rvq/induction.hpp"
#include "rvq/strata.hpp"

using namespace rvq;

namespace {

std::string name(const GeneralizedPermutation& gp, Letter a) { return gp.name(a); }

}  // namespace

TEST_CASE("top arrow, winner in the opposite row") {
  auto gp = parse_gp("1 2 3 A A 4 / 4 3 B B 2 1");
  auto a = apply_arrow(gp, Move::Top);
  CHECK(a.target.to_string() == "1 2 3 A A 4 / 4 1 3 B B 2");
  CHECK(name(gp, a.winner) == "4");
  CHECK(name(gp, a.loser) == "1");
  CHECK_FALSE(a.type_change);
}

TEST_CASE("bottom arrow") {
  auto gp = parse_gp("1 2 3 A A 4 / 4 3 B B 2 1");
  auto a = apply_arrow(gp, Move::Bottom);
  CHECK(a.target.to_string() == "1 4 2 3 A A / 4 3 B B 2 1");
  CHECK(name(gp, a.winner) == "1");
  CHECK(name(gp, a.loser) == "4");
}

TEST_CASE("type-changing top arrow") {
  auto gp = parse_gp("1 2 A A / B B 2 1");
  auto a = apply_arrow(gp, Move::Top);
  CHECK(a.type_change);
  CHECK(a.target.top_size() == 5);
  CHECK(a.target.bottom_size() == 3);
  CHECK(a.target.to_string() == "1 2 1 A A / B B 2");
  CHECK(name(gp, a.winner) == "A");
  CHECK(name(gp, a.loser) == "1");
}

TEST_CASE("undefined moves") {
  // Winner duplicated on top and no other duplicate below.
  auto gp = parse_gp("1 A A / 1 B B");
  CHECK_FALSE(try_arrow(gp, Move::Top));
  CHECK_THROWS_AS(apply_arrow(gp, Move::Top), Error);
}

TEST_CASE("moves agree with the string oracle on random permutations") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    auto rows = oracle::random_rows(rng, 2 + static_cast<int>(rng() % 7), rng() % 3 == 0);
    auto gp = parse_gp(oracle::print(rows));
    for (Move k : {Move::Top, Move::Bottom}) {
      auto mine = try_arrow(gp, k);
      auto theirs = k == Move::Top ? oracle::top_move(rows) : oracle::bottom_move(rows);
      REQUIRE_MESSAGE(mine.has_value() == theirs.has_value(), oracle::print(rows));
      if (mine) {
        CHECK(mine->target.to_string() == oracle::print(*theirs));
        CHECK(mine->target.positions() == gp.positions());
        const auto dl = static_cast<long>(mine->target.top_size()) - static_cast<long>(gp.top_size());
        CHECK((mine->type_change ? std::abs(dl) == 1 : dl == 0));
      }
    }
  }
}

TEST_CASE("moves commute with relabeling") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    auto gp = parse_gp(oracle::print(oracle::random_rows(rng, 2 + static_cast<int>(rng() % 6), rng() % 2)));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < gp.size(); ++a) names.push_back("n" + std::to_string(a));
    std::shuffle(names.begin(), names.end(), rng);
    auto r = relabel(gp, names);
    for (Move k : {Move::Top, Move::Bottom}) {
      auto a = try_arrow(gp, k), b = try_arrow(r, k);
      REQUIRE(a.has_value() == b.has_value());
      if (a) CHECK(relabel(a->target, names) == b->target);
    }
  }
}

TEST_CASE("reverse arrows invert forward arrows") {
  std::mt19937_64 rng(9);
  int seen = 0;
  for (int i = 0; i < 3000; ++i) {
    auto gp = parse_gp(oracle::print(oracle::random_rows(rng, 2 + static_cast<int>(rng() % 6), rng() % 2)));
    if (!is_irreducible(gp)) continue;
    for (Move k : {Move::Top, Move::Bottom}) {
      auto a = try_arrow(gp, k);
      if (!a) continue;
      auto back = try_reverse_arrow(a->target, k);
      REQUIRE(back);
      CHECK(back->source == gp);
      CHECK(back->winner == a->winner);
      ++seen;
    }
  }
  CHECK(seen > 100);
}

TEST_CASE("walk parsing") {
  auto steps = parse_walk("tbTB");
  REQUIRE(steps.size() == 4);
  CHECK(steps[2].kind == Move::Top);
  CHECK(steps[2].reversed);
  CHECK(format_walk(steps) == "tbTB");
  CHECK(inverse_walk("tbB") == "bBT");
  CHECK_THROWS_AS(parse_walk("tx"), Error);
}

TEST_CASE("torus class") {
  auto cls = enumerate_class(parse_gp("1 2 / 2 1"));
  CHECK(cls->size() == 1);
  CHECK(cls->arrow_count() == 2);
  CHECK(cls->target(0, Move::Top) == 0);
  CHECK(cls->target(0, Move::Bottom) == 0);
  auto dot = export_graph(*cls);
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(std::count(dot.begin(), dot.end(), '>') == 2);
}

TEST_CASE("classes match the independent enumerator") {
  for (const char* seed : {"1 2 3 4 / 4 3 2 1", "1 2 3 4 5 / 5 4 3 2 1", "0 1 2 3 5 6 / 3 2 6 5 1 0",
                           "1 2 3 A A 4 / 4 3 B B 2 1", "0 A 1 2 A 3 / 3 B 2 1 B 0"}) {
    auto gp = parse_gp(seed);
    ClassOptions reduced;
    reduced.reduced = true;
    auto r = enumerate_class(gp, reduced);
    const auto ref = oracle::reduced_closure(oracle::parse(seed));
    CHECK_MESSAGE(r->size() == ref.size(), seed);
    CHECK(r->complete());
    CHECK(r->strongly_connected());
    for (std::size_t i = 0; i < r->size(); ++i)
      CHECK(ref.count(oracle::parse(r->vertex(i).to_string())) == 1);
  }
  auto labeled = enumerate_class(parse_gp("1 2 3 4 / 4 3 2 1"));
  CHECK(labeled->size() == oracle::closure(oracle::parse("1 2 3 4 / 4 3 2 1")).size());
  CHECK(labeled->size() == 7);
  auto dot = export_graph(*labeled);
  CHECK(static_cast<std::size_t>(std::count(dot.begin(), dot.end(), '\n')) >= labeled->size());
}

TEST_CASE("class vertices are irreducible with constant stratum") {
  auto cls = enumerate_class(parse_gp("1 2 3 A A 4 / 4 3 B B 2 1"), [] {
    ClassOptions o;
    o.reduced = true;
    return o;
  }());
  const auto orders = stratum_orders(cls->base());
  for (std::size_t i = 0; i < cls->size(); ++i) {
    auto v = cls->vertex(i);
    CHECK(is_irreducible(v));
    CHECK(stratum_orders(v) == orders);
    CHECK((cls->target(i, Move::Top) != RauzyClass::npos || cls->target(i, Move::Bottom) != RauzyClass::npos));
  }
}

TEST_CASE("enumeration is independent of the thread count") {
  auto gp = parse_gp("0 1 2 3 5 6 / 3 2 6 5 1 0");
  ClassOptions one, four;
  four.threads = 4;
  auto a = enumerate_class(gp, one), b = enumerate_class(gp, four);
  REQUIRE(a->size() == b->size());
  for (std::size_t i = 0; i < a->size(); ++i) {
    CHECK(a->key(i) == b->key(i));
    CHECK(a->target(i, Move::Top) == b->target(i, Move::Top));
  }
}

TEST_CASE("budget and seed errors") {
  ClassOptions tiny;
  tiny.budget = 3;
  try {
    enumerate_class(parse_gp("1 2 3 4 5 / 5 4 3 2 1"), tiny);
    FAIL("expected BudgetExceeded");
  } catch (const ClassBudgetExceeded& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
    CHECK_FALSE(e.partial()->complete());
    CHECK(export_graph(*e.partial()).find("truncated") != std::string::npos);
  }
  try {
    enumerate_class(parse_gp("1 2 3 / 1 3 2"));
    FAIL("expected ReducibleSeed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ReducibleSeed);
  }
}
