#include "doctest.h"

#include "cyforge/completion.hpp"
#include "cyforge/errors.hpp"

using namespace cyforge;

namespace {

const char* kPoint = "vertices: v\n";
const char* kA2 = "vertices: 1 2\narrow a: 1 -> 2 deg 0\n";
const char* kLoopX3 = "vertices: v\narrow x: v -> v deg 0\npotential = x.x.x\n";
const char* kCycle =
    "vertices: 1 2 3\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 3 deg 0\narrow c: 3 -> 1 deg 0\n"
    "potential = a.b.c\n";

BasePtr base_of(const char* text) { return make_graded_base(parse_spec(text).presentation); }

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

Element el(const GradedQuiver& q, std::initializer_list<const char*> names, Scalar c = 1) {
  return Element(word(q, names), c);
}

}  // namespace

TEST_CASE("completion of a point") {
  auto B = cy_completion(base_of(kPoint), 2);
  const auto& q = B.presentation().quiver;
  REQUIRE(q.arrow_count() == 1);
  CHECK(q.arrows()[0].name == "t_v");
  CHECK(q.arrows()[0].degree == -1);
  CHECK(B.presentation().diff_of(0).is_zero());
  CHECK(B.kind[0] == ArrowKind::Loop);
}

TEST_CASE("completion of kA2") {
  auto B2 = cy_completion(base_of(kA2), 2);
  const auto& q = B2.presentation().quiver;
  REQUIRE(q.arrow_count() == 4);
  CHECK(q.arrows()[1].name == "a*");
  CHECK(q.arrows()[1].degree == 0);
  CHECK(q.arrows()[2].name == "t_1");
  CHECK(q.arrows()[2].degree == -1);
  CHECK(B2.presentation().diff_of(2) == el(q, {"a", "a*"}, -1));
  CHECK(B2.presentation().diff_of(3) == el(q, {"a*", "a"}));
  CHECK(B2.b->weight_graded);
  CHECK(B2.b->exact_length);

  auto B3 = cy_completion(base_of(kA2), 3);
  const auto& q3 = B3.presentation().quiver;
  CHECK(q3.arrows()[1].degree == -1);
  CHECK(q3.arrows()[2].degree == -2);
  CHECK(B3.presentation().diff_of(2) == el(q3, {"a", "a*"}));
  CHECK(B3.presentation().diff_of(3) == el(q3, {"a*", "a"}, -1));
}

TEST_CASE("class_to_cocycle examples") {
  auto loop = parse_spec(kLoopX3);
  auto B = cy_completion(make_graded_base(loop.presentation), 3);
  const auto& qa = B.a->quiver();
  auto d = class_to_cocycle(B, *loop.potential);
  CHECK(d.values[static_cast<std::size_t>(B.theta.bar[0])] == el(qa, {"x", "x"}, 3));
  CHECK(d.values[static_cast<std::size_t>(B.theta.loop[0])].is_zero());

  auto zero = class_to_cocycle(B, std::vector<Element>(B.theta.module.gens.size()));
  CHECK(zero.is_zero());
  CHECK(deform(B, zero).presentation() == B.presentation());

  auto cyc = parse_spec(kCycle);
  auto C = cy_completion(make_graded_base(cyc.presentation), 3);
  const auto& qc = C.a->quiver();
  auto dc = class_to_cocycle(C, *cyc.potential);
  CHECK(dc.values[static_cast<std::size_t>(C.theta.bar[0])] == el(qc, {"b", "c"}));
  CHECK(dc.values[static_cast<std::size_t>(C.theta.bar[1])] == el(qc, {"c", "a"}));
  CHECK(dc.values[static_cast<std::size_t>(C.theta.bar[2])] == el(qc, {"a", "b"}));
}

TEST_CASE("deform rejects cochains that are not closed") {
  auto A = base_of("vertices: 1 2\narrow a: 1 -> 2 deg 0\narrow b: 2 -> 1 deg 0\n");
  auto B = cy_completion(A, 3);
  DeformationClass bad;
  bad.values.resize(B.theta.module.gens.size());
  // delta(a*) = b alone: delta(d t_1) = a.b != 0
  bad.values[static_cast<std::size_t>(B.theta.bar[0])] = Element(Path::arrow(A->quiver(), 1));
  CHECK_THROWS_AS(deform(B, bad), NotClosed);
  CHECK_THROWS_AS(class_to_cocycle(B, bad.values), NotACycle);
}

TEST_CASE("Ginzburg dg algebras") {
  auto loop = parse_spec(kLoopX3);
  auto G = ginzburg(loop.presentation, *loop.potential);
  const auto& q = G.presentation().quiver;
  REQUIRE(q.arrow_count() == 3);
  CHECK(q.arrows()[1].name == "x*");
  CHECK(q.arrows()[1].degree == -1);
  CHECK(q.arrows()[2].degree == -2);
  CHECK(G.presentation().diff_of(1) == el(q, {"x", "x"}, 3));
  CHECK(G.presentation().diff_of(2) == el(q, {"x", "x*"}) - el(q, {"x*", "x"}));
  CHECK(G.b->exact_length);
  CHECK(G.b->arrow_length == std::vector<int>{1, 2, 3});
  CHECK_FALSE(G.b->weight_graded);

  // generator-level equality with the composed construction
  auto B = cy_completion(make_graded_base(loop.presentation), 3, 3);
  CHECK(deform(B, class_to_cocycle(B, *loop.potential)).presentation() == G.presentation());

  auto undeformed = ginzburg(loop.presentation, Potential());
  CHECK(undeformed.presentation().diff_of(1).is_zero());

  auto cyc = parse_spec(kCycle);
  auto C = ginzburg(cyc.presentation, *cyc.potential);
  const auto& qc = C.presentation().quiver;
  CHECK(C.presentation().diff_of(*qc.find_arrow("a*")) == el(qc, {"b", "c"}));
  CHECK(C.presentation().diff_of(*qc.find_arrow("t_1")) == el(qc, {"a", "a*"}) - el(qc, {"c*", "c"}));
}

TEST_CASE("weight behaviour of completions and deformations") {
  auto cyc = parse_spec(kCycle);
  auto C = ginzburg(cyc.presentation, *cyc.potential);
  const auto& b = *C.b;
  for (std::size_t x = 0; x < b.quiver().arrow_count(); ++x) {
    for (const auto& [p, c] : b.pres.diff[x].terms()) {
      int drop = b.arrow_weight[x] - b.weight(p);
      if (C.kind[x] == ArrowKind::Dual && p.length() == 2 && b.weight(p) == 0)
        CHECK(drop == 1);
      else
        CHECK(drop == 0);
    }
  }
}

TEST_CASE("jacobian_algebra examples") {
  auto loop = parse_spec(kLoopX3);
  auto j = jacobian_algebra(loop.presentation, *loop.potential, 4);
  CHECK(j.dims == std::vector<std::size_t>{1, 1, 0, 0, 0});
  CHECK(j.total() == 2);

  auto free = jacobian_algebra(loop.presentation, Potential(), 3);
  CHECK(free.dims == std::vector<std::size_t>{1, 1, 1, 1});

  auto cyc = parse_spec(kCycle);
  auto jc = jacobian_algebra(cyc.presentation, *cyc.potential, 3);
  CHECK(jc.total() == 6);
  CHECK(jc.dims == std::vector<std::size_t>{3, 3, 0, 0});
}

TEST_CASE("H0 of Ginzburg algebras matches the Jacobian algebra") {
  for (const char* text : {kLoopX3, kCycle}) {
    auto s = parse_spec(text);
    auto G = ginzburg(s.presentation, *s.potential);
    auto h = h0_dimensions(*G.b, 4);
    auto j = jacobian_algebra(s.presentation, *s.potential, 4);
    CHECK(h.exact);
    CHECK(h.stable);
    CHECK(h.dims == j.dims);
  }
}

TEST_CASE("H0 of the preprojective algebra of A2") {
  auto B = cy_completion(base_of(kA2), 2);
  auto h = h0_dimensions(*B.b, 6);
  CHECK(h.total() == 4);
}
