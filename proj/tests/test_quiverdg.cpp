#include "doctest.h"

#include "cyforge/errors.hpp"
#include "cyforge/quiverdg.hpp"

using namespace cyforge;

namespace {

Path word(const GradedQuiver& q, std::initializer_list<const char*> names) {
  Path p;
  for (const char* n : names) {
    ArrowId a = *q.find_arrow(n);
    if (p.arrows.empty()) p.source = q.arrow(a).source;
    p.arrows.push_back(a);
    p.target = q.arrow(a).target;
  }
  return p;
}

const char* kGinzburgLoop =
    "vertices: v\n"
    "arrow x: v -> v deg 0\n"
    "arrow x*: v -> v deg -1\n"
    "arrow t: v -> v deg -2\n"
    "diff x* = 3*x.x\n"
    "diff t = x.x* - x*.x\n";

}  // namespace

TEST_CASE("parse_spec examples") {
  auto point = parse_spec("vertices: v\n");
  CHECK(point.presentation.quiver.vertex_count() == 1);
  CHECK(point.presentation.quiver.arrow_count() == 0);

  auto a2 = parse_spec("vertices: 1 2\narrow a: 1 -> 2 deg 0\n");
  CHECK(a2.presentation.quiver.vertex_count() == 2);
  CHECK(a2.presentation.quiver.arrow(0).source == 0);
  CHECK(a2.presentation.quiver.arrow(0).target == 1);

  auto loop = parse_spec("vertices: v\narrow x: v -> v deg 0\npotential = x.x.x\n");
  REQUIRE(loop.potential);
  const auto& q = loop.presentation.quiver;
  CHECK(loop.potential->element() == Element(word(q, {"x", "x", "x"})));
}

TEST_CASE("parse_spec errors carry positions") {
  try {
    parse_spec("vertices: 1 2\narrow a: 1 -> 2 deg zero\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 21);
  }
  CHECK_THROWS_AS(parse_spec("vertices: 1\narrow a: 1 -> 3 deg 0\n"), UnknownVertex);
  CHECK_THROWS_AS(parse_spec("vertices: 1\narrow a: 1 -> 1 deg 0\narrow a: 1 -> 1 deg 0\n"),
                  DuplicateArrow);
  CHECK_THROWS_AS(parse_spec("vertices: 1\narrow a: 1 -> 1 deg 0\ndiff b = a\n"), ParseError);
  CHECK_THROWS_AS(parse_spec("arrow a: 1 -> 1 deg 0\n"), ParseError);
}

TEST_CASE("validate_presentation") {
  CHECK_NOTHROW(parse_spec("vertices: v\n"));
  CHECK_NOTHROW(parse_spec(
      "vertices: v\narrow x: v -> v deg 0\narrow h: v -> v deg -1\ndiff h = x.x - x\n"));
  CHECK_THROWS_AS(parse_spec("vertices: v\narrow g: v -> v deg -1\narrow h: v -> v deg -1\n"
                             "diff h = g\n"),
                  DegreeMismatch);
  // d(h) = g with d(g) = x: d^2(h) = x != 0
  CHECK_THROWS_AS(parse_spec("vertices: v\narrow x: v -> v deg 0\narrow g: v -> v deg -1\n"
                             "arrow h: v -> v deg -2\ndiff g = x\ndiff h = g\n"),
                  NotSquareZero);
}

TEST_CASE("path_basis examples") {
  auto a2 = parse_spec("vertices: 1 2\narrow a: 1 -> 2 deg 0\n").presentation;
  auto b = path_basis(a2, {.degree = 0}, 2);
  REQUIRE(b.size() == 3);
  CHECK(b[0] == Path::idempotent(0));
  CHECK(b[1] == Path::idempotent(1));
  CHECK(b[2] == word(a2.quiver, {"a"}));

  auto loop = parse_spec("vertices: v\narrow x: v -> v deg 0\n").presentation;
  auto l = path_basis(loop, {.degree = 0}, 3);
  REQUIRE(l.size() == 4);
  CHECK(l[3] == word(loop.quiver, {"x", "x", "x"}));

  auto g = parse_spec(kGinzburgLoop).presentation;
  auto gb = path_basis(g, {.degree = -1}, 2);
  REQUIRE(gb.size() == 3);
  CHECK(gb[0] == word(g.quiver, {"x*"}));
  CHECK(gb[1] == word(g.quiver, {"x", "x*"}));
  CHECK(gb[2] == word(g.quiver, {"x*", "x"}));
}

TEST_CASE("multiply") {
  auto a2 = parse_spec("vertices: 1 2\narrow a: 1 -> 2 deg 0\n").presentation;
  Element a(word(a2.quiver, {"a"}));
  CHECK(multiply(Element(Path::idempotent(0)), a) == a);
  CHECK(multiply(a, Element(Path::idempotent(0))).is_zero());

  auto loop = parse_spec("vertices: v\narrow x: v -> v deg 0\n").presentation;
  const auto& q = loop.quiver;
  Element x(word(q, {"x"}));
  Element xx(word(q, {"x", "x"}));
  CHECK(multiply(x + xx, x) == xx + Element(word(q, {"x", "x", "x"})));
}

TEST_CASE("differential examples on the Ginzburg loop") {
  auto g = parse_spec(kGinzburgLoop).presentation;
  const auto& q = g.quiver;
  CHECK(differential(g, Element(Path::idempotent(0))).is_zero());
  CHECK(differential(g, Element(word(q, {"x", "x*"}))) ==
        Element(word(q, {"x", "x", "x"}), 3));
  Element expected = Element(word(q, {"x", "x", "x*"}), 3) - Element(word(q, {"x*", "x", "x"}), 3);
  CHECK(differential(g, Element(word(q, {"x*", "x*"}))) == expected);
  CHECK_THROWS_AS(differential(g, Element(word(q, {"x"})) + Element(word(q, {"x*"}))),
                  NonHomogeneous);
}

TEST_CASE("d is a square-zero degree +1 derivation on sampled paths") {
  auto g = parse_spec(kGinzburgLoop).presentation;
  auto paths = path_basis(g, {}, 3);
  for (const auto& u : paths) {
    CHECK(differential(g, differential(g, Element(u))).is_zero());
    for (const auto& v : paths) {
      if (u.length() + v.length() > 4) continue;
      Element uv = multiply(Element(u), Element(v));
      Element rhs = multiply(differential(g, Element(u)), Element(v));
      rhs.add(multiply(Element(u), differential(g, Element(v))), degree(g.quiver, u) % 2 ? -1 : 1);
      CHECK(differential(g, uv) == rhs);
    }
  }
}

TEST_CASE("multiplication is associative and unital on basis paths") {
  auto g = parse_spec(kGinzburgLoop).presentation;
  auto paths = path_basis(g, {}, 2);
  for (const auto& a : paths)
    for (const auto& b : paths)
      for (const auto& c : paths) {
        Element x(a), y(b), z(c);
        CHECK(multiply(multiply(x, y), z) == multiply(x, multiply(y, z)));
      }
  for (const auto& a : paths) {
    CHECK(multiply(Element(Path::idempotent(a.source)), Element(a)) == Element(a));
    CHECK(multiply(Element(a), Element(Path::idempotent(a.target))) == Element(a));
  }
}

TEST_CASE("pretty_print round trip") {
  for (const char* text : {kGinzburgLoop, "vertices: 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\n"
                                          "arrow c: 3 -> 1 deg 0\npotential = b.c.a\n",
                           "vertices: p\n"}) {
    auto s = parse_spec(text);
    auto printed = pretty_print(s.presentation, s.potential);
    auto again = parse_spec(printed);
    CHECK(again.presentation == s.presentation);
    CHECK(again.potential == s.potential);
    CHECK(pretty_print(again.presentation, again.potential) == printed);
  }
}

TEST_CASE("potentials are stored in canonical rotation") {
  auto s = parse_spec("vertices: 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\n"
                      "arrow c: 3 -> 1 deg 0\npotential = b.c.a + c.a.b\n");
  const auto& q = s.presentation.quiver;
  CHECK(s.potential->element() == Element(word(q, {"a", "b", "c"}), 2));
  CHECK(cyclic_derivative(q, *s.potential, *q.find_arrow("a")) == Element(word(q, {"b", "c"}), 2));
}

TEST_CASE("homogeneous length grading") {
  auto g = parse_spec(kGinzburgLoop).presentation;
  auto w = homogeneous_length(g);
  REQUIRE(w);
  CHECK(*w == std::vector<int>{1, 2, 3});
  auto bad = parse_spec("vertices: v\narrow x: v -> v deg 0\narrow h: v -> v deg -1\n"
                        "diff h = x.x - x\n").presentation;
  CHECK_FALSE(homogeneous_length(bad));
}
