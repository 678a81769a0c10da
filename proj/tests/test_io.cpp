#include <doctest.h>

#include "fixtures.hpp"
#include "umw/error.hpp"
#include "umw/functors.hpp"
#include "umw/io.hpp"

using namespace umw;

TEST_CASE("space files round-trip byte for byte") {
  UltraSpace u = fixtures::u1();
  Json j = space_to_json(u);
  UltraSpace back = space_from_json(j);
  CHECK(back.points == u.points);
  CHECK(dump_canonical(space_to_json(back)) == dump_canonical(j));

  Json fractional = parse_json(R"({"points":["x","y"],"dist":[["0","1/2"],["1/2","0"]]})");
  CHECK(space_from_json(fractional).d(0, 1) == Rat(1, 2));

  CHECK_THROWS_AS(space_from_json(parse_json(R"({"points":["x"]})")), Error);
  CHECK_THROWS_AS(parse_json("{nope"), Error);
}

TEST_CASE("tree files round-trip and reject gaps") {
  LTree t = ball_tree(fixtures::u2(), make_order({Rat(1), Rat(2), Rat(3)})).tree;
  Json j = tree_to_json(t);
  LTree back = tree_from_json(j);
  CHECK(back.nodes == t.nodes);
  CHECK(back.level == t.level);
  CHECK(back.parent == t.parent);

  Json gap = parse_json(R"({
    "levels": ["1","2","3"],
    "nodes": [{"id":"a","level":0,"parent":"r"},{"id":"r","level":2,"parent":null}]
  })");
  CHECK_THROWS_AS(tree_from_json(gap), Error);
}

TEST_CASE("skeleton and system files round-trip") {
  Skeleton sk = fixtures::chain_skeleton({2, 2, 1});
  Skeleton back = skeleton_from_json(skeleton_to_json(sk));
  CHECK(back.delta.elems == sk.delta.elems);
  CHECK(back.N == sk.N);
  CHECK(back.level == sk.level);
  for (int a = 0; a < sk.size(); ++a)
    for (int b = 0; b < sk.size(); ++b) CHECK(back.delta.le(a, b) == sk.delta.le(a, b));

  ProjectionSystem w3 = fixtures::w3_twist();
  ProjectionSystem sys = system_from_json(system_to_json(w3));
  CHECK(sys.parts == w3.parts);
  CHECK(sys.pi == w3.pi);

  // a system file with only a skeleton defaults to the full family with
  // plain restrictions
  Json bare;
  bare["skeleton"] = skeleton_to_json(sk);
  ProjectionSystem full = system_from_json(bare);
  CHECK(full.parts[0].size() == 4);
  CHECK(validate_projection_system(full).ok());
}

TEST_CASE("embedding files") {
  LinearOrder order = make_order({Rat(1), Rat(2), Rat(3)});
  LevelEmbedding emb = make_embedding(order, {Rat(10), Rat(20), Rat(30)},
                                      {Rat(11), Rat(21), Rat(31)});
  LevelEmbedding back = embedding_from_json(embedding_to_json(emb), order);
  CHECK(back.lo == emb.lo);
  CHECK(back.hi == emb.hi);
  CHECK_THROWS_AS(embedding_from_json(parse_json(R"({"pairs":{"1":["10","11"]}})"), order),
                  Error);
}

TEST_CASE("groups serialize in one-line notation") {
  PermGroup g = symmetric_group(GroundSet({"a", "b"}), 10);
  Json j = group_to_json(g);
  CHECK(j["ground"] == Json::array({"a", "b"}));
  CHECK(j["elements"].size() == 2);
  CHECK(j["elements"][1] == Json::array({"b", "a"}));
}

TEST_CASE("schema detection and the validator front end") {
  CHECK(detect_kind(space_to_json(fixtures::u1())) == FileKind::Space);
  CHECK(detect_kind(skeleton_to_json(fixtures::chain_skeleton({2}))) == FileKind::Skeleton);
  CHECK(detect_kind(system_to_json(fixtures::w3_twist())) == FileKind::System);

  Json bad = parse_json(R"({
    "points": ["a","b","c"],
    "dist": [["0","1","3"],["1","0","1"],["3","1","0"]]
  })");
  ValidationReport rep = validate_any(bad);
  CHECK_FALSE(rep.ok());

  CHECK_THROWS_AS(validate_any(parse_json("{}")), Error);
}
