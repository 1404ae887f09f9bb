#include "doctest.h"

#include "cyforge/bimods.hpp"
#include "cyforge/errors.hpp"

using namespace cyforge;

namespace {

const char* kPoint = "vertices: v\n";
const char* kA2 = "vertices: 1 2\narrow a: 1 -> 2 deg 0\n";
const char* kGinzburgLoop =
    "vertices: v\n"
    "arrow x: v -> v deg 0\n"
    "arrow x*: v -> v deg -1\n"
    "arrow t: v -> v deg -2\n"
    "diff x* = 3*x.x\n"
    "diff t = x.x* - x*.x\n";
// odd arrows with nonzero differentials
const char* kOdd =
    "vertices: v w\n"
    "arrow x: v -> v deg -1\n"
    "arrow y: v -> w deg 0\n"
    "arrow z: w -> v deg 0\n"
    "arrow u: v -> v deg -2\n"
    "diff u = x.y.z + y.z.x\n"
    "arrow k: v -> v deg -3\n"
    "diff k = x.x\n";

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

bool acyclic(const GradedComplex& c) { return c.square_zero() && c.cohomology().empty(); }

}  // namespace

TEST_CASE("resolution of a point") {
  auto r = cellular_resolution(base_of(kPoint));
  REQUIRE(r.module.gens.size() == 1);
  CHECK(r.module.gens[0].degree == 0);
  CHECK(augment(r, BiElement(bare(r.module, 0))) == Element(Path::idempotent(0)));
}

TEST_CASE("resolution of kA2") {
  auto A = base_of(kA2);
  auto r = cellular_resolution(A);
  const auto& X = r.module;
  REQUIRE(X.gens.size() == 3);
  Path a = word(A->quiver(), {"a"});
  BiElement expected;
  expected.add(BiWord{a, r.omega[1], Path::idempotent(1)}, 1);
  expected.add(BiWord{Path::idempotent(0), r.omega[0], a}, -1);
  CHECK(X.diff[static_cast<std::size_t>(r.rho[0])] == expected);
  CHECK(X.gen(r.rho[0]).degree == -1);

  PathCatalog cat(*A, 3);
  for (VertexId x = 0; x < 2; ++x)
    for (VertexId y = 0; y < 2; ++y)
      for (int len = 0; len <= 3; ++len) CHECK(acyclic(augmented_slice(r, cat, x, y, len)));
}

TEST_CASE("resolution of dg presentations with odd arrows") {
  for (const char* text : {kGinzburgLoop, kOdd}) {
    auto A = base_of(text);
    REQUIRE(A->exact_length);
    auto r = cellular_resolution(A);
    CHECK(r.module.gens.size() == A->quiver().vertex_count() + A->quiver().arrow_count());
    CHECK(audit_bimodule(r.module).empty());
    PathCatalog cat(*A, 7);
    for (VertexId x = 0; x < static_cast<VertexId>(A->quiver().vertex_count()); ++x)
      for (VertexId y = 0; y < static_cast<VertexId>(A->quiver().vertex_count()); ++y)
        for (int len = 0; len <= 6; ++len) CHECK(acyclic(augmented_slice(r, cat, x, y, len)));
  }
}

TEST_CASE("dual bimodules") {
  auto A = base_of(kA2);
  auto r = cellular_resolution(A);
  auto D = dual_bimodule(r.module);
  const auto& rho = D.gen(r.rho[0]);
  CHECK(rho.left == 1);
  CHECK(rho.right == 0);
  CHECK(rho.degree == 1);
  CHECK(D.gen(r.omega[0]).degree == 0);
  CHECK(audit_bimodule(D).empty());

  for (const char* text : {kGinzburgLoop, kOdd}) {
    auto B = base_of(text);
    auto X = cellular_resolution(B).module;
    auto XD = dual_bimodule(X, 0, 12);
    CHECK(audit_bimodule(XD).empty());
    CHECK(audit_bimodule(shift(XD, 1)).empty());
    CHECK(audit_bimodule(shift(XD, 2)).empty());
    CHECK(audit_bimodule(dual_bimodule(shift(XD, 3), 0, 12)).empty());
    auto XDD = dual_bimodule(XD, 0, 12);
    for (std::size_t g = 0; g < X.gens.size(); ++g) {
      CHECK(XDD.gens[g].left == X.gens[g].left);
      CHECK(XDD.gens[g].right == X.gens[g].right);
      CHECK(XDD.gens[g].degree == X.gens[g].degree);
      CHECK(XDD.gens[g].length == X.gens[g].length);
    }
  }
}

TEST_CASE("cone of the identity is contractible") {
  auto A = base_of(kGinzburgLoop);
  auto X = std::make_shared<const FreeBimodule>(cellular_resolution(A).module);
  BimoduleMorphism id = zero_morphism(X, X);
  for (std::size_t g = 0; g < X->gens.size(); ++g) id.values[g] = BiElement(bare(*X, static_cast<int>(g)));
  CHECK(id.is_closed());
  auto C = cone(id);
  CHECK(audit_bimodule(C).empty());
  PathCatalog cat(*A, 6);
  for (int len = 0; len <= 5; ++len) CHECK(acyclic(bimodule_slice(C, cat, 0, 0, len).complex));
}

TEST_CASE("theta examples") {
  auto p = inverse_dualizing_theta(base_of(kPoint), 2);
  REQUIRE(p.module.gens.size() == 1);
  CHECK(p.module.gens[0].name == "t_v");
  CHECK(p.module.gens[0].degree == -1);
  CHECK(p.module.diff[0].is_zero());

  auto A = base_of(kA2);
  auto t3 = inverse_dualizing_theta(A, 3);
  const auto& abar = t3.module.gen(t3.bar[0]);
  CHECK(abar.name == "a*");
  CHECK(abar.left == 1);
  CHECK(abar.right == 0);
  CHECK(abar.degree == -1);
  CHECK(t3.module.gen(t3.loop[0]).degree == -2);
  CHECK(t3.module.gen(t3.loop[1]).degree == -2);

  auto t2 = inverse_dualizing_theta(A, 2);
  CHECK(t2.module.gen(t2.bar[0]).degree == 0);
  Path a = word(A->quiver(), {"a"});
  int bar = t2.bar[0];
  CHECK(t2.module.diff[static_cast<std::size_t>(t2.loop[0])] ==
        BiElement(BiWord{a, bar, Path::idempotent(0)}, -1));
  CHECK(t2.module.diff[static_cast<std::size_t>(t2.loop[1])] ==
        BiElement(BiWord{Path::idempotent(1), bar, a}, 1));
  CHECK(audit_bimodule(t2.module).empty());

  auto g = inverse_dualizing_theta(base_of(kGinzburgLoop), 3);
  CHECK(audit_bimodule(g.module).empty());
}

TEST_CASE("tensor over the enveloping category") {
  auto P = base_of(kPoint);
  auto theta = inverse_dualizing_theta(P, 2);
  PathCatalog cat(*P, 4);
  auto s = env_slice(theta.module, *P, cat, 1);
  REQUIRE(s.complex.dim.size() == 1);
  CHECK(s.complex.dim_at(-1) == 1);
  CHECK(s.builder.basis().at(-1)[0] == EnvWord{0, Path::idempotent(0)});

  auto L = base_of("vertices: v\narrow x: v -> v deg 0\n");
  auto X = cellular_resolution(L).module;
  PathCatalog lcat(*L, 5);
  for (int len = 0; len <= 4; ++len) {
    auto e = env_slice(X, *L, lcat, len);
    CHECK(e.complex.square_zero());
  }

  auto G = base_of(kGinzburgLoop);
  auto th = inverse_dualizing_theta(G, 3);
  PathCatalog gcat(*G, 8);
  for (int len = 0; len <= 8; ++len) CHECK(env_slice(th.module, *G, gcat, len).complex.square_zero());
}

TEST_CASE("solve_preimage") {
  auto A = base_of(kA2);
  auto r = cellular_resolution(A);
  PathCatalog cat(*A, 2);
  const auto& d = r.module.diff[static_cast<std::size_t>(r.rho[0])];
  auto z = solve_preimage(r.module, cat, d);
  REQUIRE(z);
  CHECK(bimodule_differential(r.module, *z) == d);
  // omega alone is not a boundary
  CHECK_FALSE(solve_preimage(r.module, cat, BiElement(bare(r.module, r.omega[0]))));
}
