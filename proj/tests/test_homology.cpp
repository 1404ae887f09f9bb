#include "doctest.h"

#include <set>

#include "cyforge/errors.hpp"
#include "cyforge/homology.hpp"

using namespace cyforge;

namespace {

const char* kPoint = "vertices: v\n";
const char* kA2 = "vertices: 1 2\narrow a: 1 -> 2 deg 0\n";
const char* kLoopX3 = "vertices: v\narrow x: v -> v deg 0\npotential = x.x.x\n";
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

int gen_of(const CompletionPresentation& B, const char* name) {
  return B.theta_gen[static_cast<std::size_t>(*B.presentation().quiver.find_arrow(name))];
}

EnvElement env1(int g, const Path& p, Scalar c = 1) {
  EnvElement x;
  env_add(x, EnvWord{g, p}, c);
  return x;
}

BarElement bar1(const Path& p, Scalar c = 1) {
  BarElement x;
  bar_add(x, p, c);
  return x;
}



std::vector<CompletionPresentation> samples() {
  return {cy_completion(base_of(kPoint), 2), cy_completion(base_of(kA2), 2),
          cy_completion(base_of(kA2), 3), cy_completion(base_of(kPoint), 3)};
}

}  // namespace

TEST_CASE("b on Pi2 of a point") {
  auto B = cy_completion(base_of(kPoint), 2);
  const auto& q = B.presentation().quiver;
  int t = gen_of(B, "t_v");
  auto e = Path::idempotent(0);
  CHECK(b_map(B, env1(t, e)).empty());
  CHECK(b_map(B, env1(t, word(q, {"t_v"}))) == bar1(word(q, {"t_v", "t_v"}), 2));
  CHECK(b_map(B, env1(t, word(q, {"t_v", "t_v"}))).empty());
}

TEST_CASE("gamma examples") {
  auto P = cy_completion(base_of(kPoint), 2);
  const auto& qp = P.presentation().quiver;
  CHECK(gamma_map(P, bar1(word(qp, {"t_v"}))) == env1(gen_of(P, "t_v"), Path::idempotent(0)));

  auto B = cy_completion(base_of(kA2), 2);
  const auto& q = B.presentation().quiver;
  CHECK(gamma_map(B, bar1(word(q, {"t_1", "t_1"}))).empty());
  // t is odd and a* even: both rotations carry sign +
  auto g = gamma_map(B, bar1(word(q, {"a*", "t_1", "a"})));
  EnvElement want = env1(gen_of(B, "a*"), word(q, {"t_1", "a"}));
  env_add(want, EnvWord{gen_of(B, "t_1"), word(q, {"a", "a*"})}, 1);
  CHECK(g == want);
}

TEST_CASE("bar normal form rotates A-prefixes") {
  auto B = cy_completion(base_of(kA2), 2);
  const auto& q = B.presentation().quiver;
  BarElement x;
  bar_add_normalized(x, B, word(q, {"a", "a*"}), 1);
  CHECK(x == bar1(word(q, {"a*", "a"})));
  BarElement none;
  bar_add_normalized(none, B, Path::idempotent(0), 1);
  CHECK(none.empty());
}

TEST_CASE("b and gamma are chain maps") {
  for (const auto& B : samples()) {
    PathCatalog cat(*B.b, 6);
    for (int len = 0; len <= 6; ++len)
      for (int w = 1; w <= 3; ++w) {
        for (const auto& k : column_words(B, cat, 1, len, w)) {
          auto x = env1(k.gen, k.path);
          CHECK(bar_differential(B, b_map(B, x)) == b_map(B, theta_differential(B, x)));
          CHECK(b_map(B, gamma_map(B, b_map(B, x))).empty());
          CHECK(key_weight(B, k) == w);
        }
        for (const auto& k : column_words(B, cat, 0, len, w)) {
          auto y = bar1(k.path);
          CHECK(theta_differential(B, gamma_map(B, y)) == gamma_map(B, bar_differential(B, y)));
          CHECK(b_map(B, gamma_map(B, y)).empty());
          for (const auto& [v, c] : gamma_map(B, y)) CHECK(key_weight(B, {1, v.gen, v.path}) == w);
        }
      }
  }
}

TEST_CASE("periodic totalization squares to zero") {
  for (const auto& B : samples()) {
    PathCatalog cat(*B.b, 5);
    for (int len = 0; len <= 5; ++len)
      for (int w = 0; w <= 3; ++w) {
        auto s = periodic_slice(B, cat, len, w, 6, -8);
        CHECK(s.complex.square_zero());
        auto c = periodic_slice(B, cat, len, w, 1, -8);
        CHECK(c.complex.square_zero());
        if (w == 0) CHECK(s.complex.empty());
      }
  }
}

TEST_CASE("reduced Hochschild matches a naive two-column elimination") {
  auto B = cy_completion(base_of(kA2), 2);
  Window win;
  win.deg_min = -4;
  win.weight_max = 2;
  win.len_max = 6;
  auto table = reduced_hochschild(B, win);
  CHECK(table.euler_ok);
  PathCatalog cat(*B.b, win.len_max);
  std::map<std::pair<int, int>, std::size_t> naive;  // (weight, degree)
  for (int w = 1; w <= 2; ++w)
    for (int len = 0; len <= win.len_max; ++len) {
      auto left = env_slice(B.theta.module, *B.b, cat, len, w);
      ComplexBuilder<Path> right;
      for (const auto& k : column_words(B, cat, 0, len, w)) right.add(B.b->degree(k.path), k.path);
      right.finalize();
      auto rc = right.build([&](const Path& p) {
        auto dp = bar_differential(B, bar1(p));
        return std::vector<std::pair<Path, Scalar>>(dp.begin(), dp.end());
      });
      // cone degree k = source degree k+1 plus target degree k
      std::set<int> degs;
      for (const auto& [k, n] : left.complex.dim) degs.insert(k - 1);
      for (const auto& [k, n] : rc.dim) degs.insert(k);
      auto cone_d = [&](int k) {
        std::size_t r0 = left.complex.dim_at(k + 1), r1 = rc.dim_at(k);
        std::size_t c0 = left.complex.dim_at(k + 2), c1 = rc.dim_at(k + 1);
        SparseMatrix m(c0 + c1, r0 + r1);
        const auto& src = left.builder.basis();
        if (src.count(k + 1))
          for (std::size_t j = 0; j < r0; ++j) {
            const auto& word = src.at(k + 1)[j];
            for (const auto& [v, c] : theta_differential(B, env1(word.gen, word.path)))
              m.add(*left.builder.index(k + 2, v), j, -c);
            for (const auto& [p, c] : b_map(B, env1(word.gen, word.path)))
              m.add(c0 + *right.index(k + 1, p), j, c);
          }
        if (right.basis().count(k))
          for (std::size_t j = 0; j < r1; ++j)
            for (const auto& [p, c] : bar_differential(B, bar1(right.basis().at(k)[j])))
              m.add(c0 + *right.index(k + 1, p), r0 + j, c);
        return m;
      };
      for (int k : degs) {
        if (k < win.deg_min) continue;
        std::size_t dim = left.complex.dim_at(k + 1) + rc.dim_at(k);
        std::size_t h = dim - rank(cone_d(k)) - rank(cone_d(k - 1));
        if (h) naive[{w, k}] += h;
      }
    }
  std::map<std::pair<int, int>, std::size_t> got;
  for (const auto& e : table.entries) got[{e.weight, e.degree}] = e.dim;
  CHECK(got == naive);
  CHECK(!got.empty());
}

TEST_CASE("Casimir of Pi2 of a point is a nonzero class") {
  auto B = cy_completion(base_of(kPoint), 2);
  Window win;
  win.deg_min = -4;
  auto hh = reduced_hochschild(B, win);
  CHECK(hh.dim(-2, 1) >= 1);
  CHECK(hh.dim(0, 0) == 0);
  PeriodicElement cas{{PeriodicKey{1, gen_of(B, "t_v"), Path::idempotent(0)}, 1}};
  CHECK(periodic_differential(B, cas, 1).empty());
  CHECK(!is_boundary(B, cas, 1));
}

TEST_CASE("cyclic table is stable in the column count") {
  for (const auto& B : samples()) {
    Window win;
    win.deg_min = -5;
    win.len_max = 5;
    win.columns = 6;
    auto t = reduced_cyclic(B, win);
    CHECK(t.stable);
    CHECK(t.euler_ok);
    win.columns = 0;
    auto a = reduced_cyclic(B, win);
    REQUIRE(a.entries.size() == t.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      CHECK(a.entries[i].degree == t.entries[i].degree);
      CHECK(a.entries[i].dim == t.entries[i].dim);
    }
  }
}

TEST_CASE("connes_B") {
  auto B = cy_completion(base_of(kPoint), 2);
  const auto& q = B.presentation().quiver;
  int t = gen_of(B, "t_v");
  HomologyClass hc;
  hc.kind = HomologyKind::CyclicReduced;
  hc.degree = -1;
  hc.weight = 1;
  hc.length = 1;
  hc.representative = {{PeriodicKey{0, -1, word(q, {"t_v"})}, 1}};
  auto hh = connes_B(B, hc);
  CHECK(hh.kind == HomologyKind::HochschildReduced);
  CHECK(hh.degree == -2);
  CHECK(hh.representative == PeriodicElement{{PeriodicKey{1, t, Path::idempotent(0)}, 1}});
  CHECK(periodic_differential(B, hh.representative, 1).empty());

  HomologyClass zero;
  CHECK(connes_B(B, zero).representative.empty());

  HomologyClass bad;
  bad.representative = {{PeriodicKey{1, t, word(q, {"t_v"})}, 1}};
  CHECK_THROWS_AS(connes_B(B, bad), NotACycle);

  // the zero-tail lift of a Connes image
  auto lift = negative_cyclic_lift(B, hh.representative, 3);
  REQUIRE(lift);
  CHECK(lift->tail_zero());
}

TEST_CASE("connes_B output is a cycle on sampled cyclic cycles") {
  for (const auto& B : samples()) {
    PathCatalog cat(*B.b, 4);
    for (int len = 1; len <= 4; ++len) {
      auto s = periodic_slice(B, cat, len, 1, -1, -6);
      for (const auto& [deg, keys] : s.builder.basis()) {
        auto rk = rank_and_kernel(s.complex.d_at(deg));
        for (const auto& v : rk.kernel_basis) {
          PeriodicElement x;
          for (const auto& [i, c] : v) x.emplace(keys[i], c);
          CHECK(periodic_differential(B, cone_connes(B, x), 1).empty());
        }
      }
    }
  }
}

TEST_CASE("mixed complex identities on a graded presentation") {
  for (const char* text : {kOdd, kLoopX3, kA2}) {
    auto A = base_of(text);
    PathCatalog cat(*A, 4);
    for (int len = 0; len <= 4; ++len)
      for (int deg = -10; deg <= 2; ++deg)
        for (const auto& w : hoch_words(*A, cat, len, deg)) {
          HochChain x;
          hoch_add(x, w, 1);
          auto bx = hoch_b(*A, x);
          auto Bx = hoch_B(*A, x);
          CHECK(hoch_b(*A, bx).empty());
          CHECK(hoch_B(*A, Bx).empty());
          HochChain s = hoch_b(*A, Bx);
          for (const auto& [v, c] : hoch_B(*A, bx)) hoch_add(s, v, c);
          if (!s.empty()) FAIL_CHECK(format_hoch(*A, w));
          for (const auto& [v, c] : bx) CHECK(hoch_degree(*A, v) == deg + 1);
          for (const auto& [v, c] : Bx) CHECK(hoch_degree(*A, v) == deg - 1);
        }
  }
}

TEST_CASE("potential chains lift with zero tail") {
  auto spec = parse_spec(kLoopX3);
  auto A = make_graded_base(spec.presentation);
  auto c = potential_chain(*A, *spec.potential);
  CHECK(hoch_b(*A, c).empty());
  auto lift = negative_cyclic_lift(*A, c, 3);
  REQUIRE(lift);
  CHECK(lift->tail_zero());
  CHECK(lift->components.size() == 4);

  auto pA = cellular_resolution(A);
  const auto& q = A->quiver();
  EnvElement want = env1(pA.rho[0], word(q, {"x", "x"}), 3);
  CHECK(small_model(pA, c) == want);

  HochChain zero;
  auto z = negative_cyclic_lift(*A, zero, 2);
  REQUIRE(z);
  CHECK(z->tail_zero());

  auto O = base_of(kOdd);
  const auto& qo = O->quiver();
  HochChain notcycle;
  hoch_add(notcycle, HochWord{word(qo, {"z"}), {word(qo, {"y"})}}, 1);
  CHECK_THROWS_AS(negative_cyclic_lift(*O, notcycle, 1), NotACycle);
}
