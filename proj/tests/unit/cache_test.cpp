#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "rvq/class_cache.hpp"

using namespace rvq;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("rvq-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("save and load a class") {
  auto dir = scratch_dir("roundtrip");
  for (bool reduced : {false, true}) {
    ClassOptions o;
    o.reduced = reduced;
    auto cls = enumerate_class(parse_gp("1 2 3 A A 4 / 4 3 B B 2 1"), [&] {
      ClassOptions small = o;
      if (!reduced) small.admissible_only = true;
      return small;
    }());
    const auto file = dir / (reduced ? "r.jsonl" : "l.jsonl");
    save_class(*cls, file);
    auto back = load_class(file);
    REQUIRE(back->size() == cls->size());
    CHECK(back->complete());
    CHECK(back->reduced() == reduced);
    CHECK(back->base() == cls->base());
    for (std::size_t i = 0; i < cls->size(); ++i) {
      CHECK(back->key(i) == cls->key(i));
      for (Move k : {Move::Top, Move::Bottom}) {
        CHECK(back->target(i, k) == cls->target(i, k));
        CHECK(back->winner(i, k) == cls->winner(i, k));
        CHECK(back->source(i, k) == cls->source(i, k));
      }
    }
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("header line is JSON with the documented fields") {
  auto dir = scratch_dir("header");
  auto cls = enumerate_class(parse_gp("1 2 / 2 1"));
  save_class(*cls, dir / "t.jsonl");
  std::ifstream in(dir / "t.jsonl");
  std::string header, vertex;
  std::getline(in, header);
  std::getline(in, vertex);
  CHECK(header.find("\"format\":1") != std::string::npos);
  CHECK(header.find("\"complete\":true") != std::string::npos);
  CHECK(vertex == R"({"bottom":0,"encoding":"1 2 / 2 1","top":0,"winners":["2","1"]})");
  std::filesystem::remove_all(dir);
}

TEST_CASE("corrupt cache files are reported and recomputed") {
  auto dir = scratch_dir("corrupt");
  std::ofstream(dir / "bad.jsonl") << "{\"format\":1,\n";
  try {
    load_class(dir / "bad.jsonl");
    FAIL("expected CacheCorrupt");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CacheCorrupt);
  }
  ClassStore store(dir);
  ClassOptions o;
  o.reduced = true;
  const auto seed = parse_gp("1 2 3 4 / 4 3 2 1");
  const auto file = store.file_for(seed, o);
  std::ofstream(file) << "garbage\n";
  auto cls = store.get(seed, o);
  CHECK(cls->size() == 7);
  ClassStore fresh(dir);
  auto again = fresh.get(seed, o);
  CHECK(again->size() == 7);
  std::filesystem::remove_all(dir);
}
