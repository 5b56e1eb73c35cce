#include "grpd/io.hpp"

#include "doctest.h"

using namespace grpd;

TEST_CASE("groupoid documents") {
  SUBCASE("a minimal null groupoid parses and validates") {
    std::string text =
        "grpd v1\n"
        "object a\n"
        "arrow 1_a a a\n"
        "unit a 1_a\n"
        "inv 1_a 1_a\n"
        "comp 1_a 1_a 1_a\n";
    ParseResult res = parse_groupoid_text(text);
    REQUIRE(res.ok());
    ValidationResult v = validate(*res.groupoid);
    REQUIRE(v.ok());
    CHECK(v.groupoid->arrow_count() == 1);
  }

  SUBCASE("omitting a unit is flagged by validation") {
    std::string text =
        "grpd v1\n"
        "object a\n"
        "arrow 1_a a a\n"
        "inv 1_a 1_a\n"
        "comp 1_a 1_a 1_a\n";
    ParseResult res = parse_groupoid_text(text);
    REQUIRE(res.ok());
    ValidationResult v = validate(*res.groupoid);
    REQUIRE_FALSE(v.ok());
    bool unit_missing = false;
    for (const auto& d : v.issues)
      if (d.detail.find("unit missing") != std::string::npos)
        unit_missing = true;
    CHECK(unit_missing);
  }

  SUBCASE("syntax errors carry line numbers") {
    ParseResult res = parse_groupoid_text("grpd v1\nobject a\nfrob a\n");
    REQUIRE_FALSE(res.ok());
    CHECK(res.errors[0].line == 3);
  }

  SUBCASE("pair(2) round-trips with 8 composable non-trivial entries") {
    RawGroupoid raw = to_raw(pair_groupoid({"1", "2"}));
    // composable pairs of pair(2): 2 objects, paths i->j->k: 2^3 = 8
    CHECK(raw.compose.size() == 8);
    std::string text = serialize_groupoid_text(raw);
    ParseResult back = parse_groupoid_text(text);
    REQUIRE(back.ok());
    CHECK(serialize_groupoid_text(*back.groupoid) == text);
    ValidationResult v = validate(*back.groupoid);
    CHECK(v.ok());
  }

  SUBCASE("JSON round trip is byte-stable") {
    RawGroupoid raw = to_raw(disjoint_union(group_groupoid(cyclic_table(3)),
                                            pair_groupoid({"x", "y"})));
    std::string js = serialize_groupoid_json(raw);
    ParseResult back = parse_groupoid_json(js);
    REQUIRE(back.ok());
    CHECK(serialize_groupoid_json(*back.groupoid) == js);
  }

  SUBCASE("dangling references are parse errors") {
    std::string text =
        "grpd v1\n"
        "object a\n"
        "arrow f a ghost\n"
        "unit a f\n"
        "inv f f\n";
    ParseResult res = parse_groupoid_text(text);
    CHECK_FALSE(res.ok());
  }
}

TEST_CASE("functor documents") {
  std::string text =
      "fnct v1\n"
      "source inline\n"
      "grpd v1\n"
      "object a\n"
      "arrow 1_a a a\n"
      "unit a 1_a\n"
      "inv 1_a 1_a\n"
      "comp 1_a 1_a 1_a\n"
      "end\n"
      "target inline\n"
      "grpd v1\n"
      "object b\n"
      "arrow 1_b b b\n"
      "unit b 1_b\n"
      "inv 1_b 1_b\n"
      "comp 1_b 1_b 1_b\n"
      "end\n"
      "obj a b\n"
      "arr 1_a 1_b\n";
  FunctorParseResult res = parse_functor_text(text);
  REQUIRE(res.ok());
  CHECK(res.doc->source_inline.has_value());
  CHECK(res.doc->target_inline.has_value());
  CHECK(res.doc->object_map.at("a") == "b");
  // serialize and re-parse
  FunctorParseResult again = parse_functor_text(serialize_functor_text(*res.doc));
  REQUIRE(again.ok());
  CHECK(again.doc->arrow_map == res.doc->arrow_map);
}

TEST_CASE("action documents") {
  std::string text =
      "actn v1\n"
      "groupoid inline\n"
      "grpd v1\n"
      "object a\n"
      "arrow 1_a a a\n"
      "unit a 1_a\n"
      "inv 1_a 1_a\n"
      "comp 1_a 1_a 1_a\n"
      "end\n"
      "point x a\n"
      "act 1_a x x\n";
  ActionParseResult res = parse_action_text(text);
  REQUIRE(res.ok());
  CHECK(res.doc->points.size() == 1);
  CHECK(res.doc->act.size() == 1);
}

TEST_CASE("DOT output") {
  SUBCASE("one node, no edges for the one-point groupoid") {
    std::string dot = emit_dot(null_groupoid({"a"}));
    CHECK(dot.find("\"a\";") != std::string::npos);
    CHECK(dot.find("->") == std::string::npos);
  }

  SUBCASE("pair(2) has two non-unit edges") {
    std::string dot = emit_dot(pair_groupoid({"1", "2"}));
    size_t count = 0, pos = 0;
    while ((pos = dot.find("->", pos)) != std::string::npos) {
      ++count;
      pos += 2;
    }
    CHECK(count == 2);
  }

  SUBCASE("orbit clusters match the orbit decomposition") {
    Groupoid g = disjoint_union(group_groupoid(cyclic_table(3)),
                                pair_groupoid({"x", "y"}));
    std::string dot = emit_dot_orbits(g);
    CHECK(dot.find("cluster_0") != std::string::npos);
    CHECK(dot.find("cluster_1") != std::string::npos);
    CHECK(dot.find("cluster_2") == std::string::npos);
  }

  SUBCASE("output is deterministic") {
    Groupoid g = product(group_groupoid(cyclic_table(2)),
                         pair_groupoid({"1", "2"}));
    CHECK(emit_dot(g) == emit_dot(g));
    CHECK(emit_dot_orbits(g) == emit_dot_orbits(g));
  }

  SUBCASE("butterfly edges carry their wing class") {
    GroupoidPtr z2 = share(group_groupoid(cyclic_table(2)));
    SquareGroupoid sq = square_groupoid(z2);
    std::string dot = emit_dot_butterfly(sq.canonical);
    CHECK(dot.find("class=\"wingR\"") != std::string::npos);
    CHECK(dot.find("class=\"wingR2\"") != std::string::npos);
    CHECK(dot.find("class=\"core\"") != std::string::npos);
    CHECK(dot == emit_dot_butterfly(sq.canonical));
  }
}
