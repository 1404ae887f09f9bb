#include <random>

#include "doctest.h"

#include "cyforge/errors.hpp"
#include "cyforge/exactla.hpp"

using namespace cyforge;

namespace {

SparseMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> val(-3, 3);
  std::uniform_int_distribution<int> keep(0, 2);
  SparseMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng) == 0) m.add(i, j, Scalar(val(rng), 1 + keep(rng)));
  return m;
}

SparseMatrix permute(const SparseMatrix& m, const std::vector<std::size_t>& rp,
                     const std::vector<std::size_t>& cp) {
  SparseMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) out.add(rp[r], cp[c], v);
  return out;
}

SparseVector vec(std::initializer_list<int> xs) {
  SparseVector v;
  std::size_t i = 0;
  for (int x : xs) {
    if (x != 0) v.emplace(i, x);
    ++i;
  }
  return v;
}

}  // namespace

TEST_CASE("rank_and_kernel on proportional rows") {
  auto m = SparseMatrix::from_dense({{1, 2}, {2, 4}});
  auto rk = rank_and_kernel(m);
  CHECK(rk.rank == 1);
  REQUIRE(rk.kernel_basis.size() == 1);
  CHECK(rk.kernel_basis[0] == vec({2, -1}));
}

TEST_CASE("rank_and_kernel on identity and zero") {
  auto id = rank_and_kernel(SparseMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.kernel_basis.empty());
  auto z = rank_and_kernel(SparseMatrix(2, 3));
  CHECK(z.rank == 0);
  CHECK(z.kernel_basis.size() == 3);
}

TEST_CASE("kernel vectors are annihilated and rank-nullity holds") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_matrix(rng, 1 + trial % 6, 1 + (trial * 7) % 8);
    auto rk = rank_and_kernel(m);
    CHECK(rk.rank + rk.kernel_basis.size() == m.cols());
    SpanReducer span(m.cols());
    for (const auto& k : rk.kernel_basis) {
      CHECK(m.apply(k).empty());
      CHECK(span.insert(k));
    }
  }
}

TEST_CASE("rank of a matrix equals rank of its transpose") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = random_matrix(rng, 1 + trial % 7, 1 + (trial * 3) % 9);
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("solve_linear") {
  auto x = solve_linear(SparseMatrix::identity(2), vec({1, 2}));
  REQUIRE(x);
  CHECK(*x == vec({1, 2}));

  auto row = SparseMatrix::from_dense({{1, 1}});
  auto y = solve_linear(row, vec({2}));
  REQUIRE(y);
  CHECK(row.apply(*y) == vec({2}));

  auto zero = SparseMatrix::from_dense({{0}});
  CHECK_FALSE(solve_linear(zero, vec({1})));
  auto cert = inconsistency_certificate(zero, vec({1}));
  REQUIRE(cert);
  CHECK(dot(*cert, vec({1})) != 0);
}

TEST_CASE("solve_linear agrees with the product on random consistent systems") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = random_matrix(rng, 2 + trial % 5, 1 + trial % 6);
    SparseVector x0;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if ((j + trial) % 2 == 0 && j != 2) x0.emplace(j, Scalar(int(j) - 2) / 3);
    auto v = m.apply(x0);
    auto x = solve_linear(m, v);
    REQUIRE(x);
    CHECK(m.apply(*x) == v);
    CHECK(*solve_linear(m, {}) == SparseVector{});
  }
}

TEST_CASE("homology_block examples") {
  ChainBlock zero;
  zero.d_in = SparseMatrix(2, 0);
  zero.d_out = SparseMatrix(0, 2);
  CHECK(homology_block(zero).dim == 2);

  ChainBlock exact;
  exact.d_in = SparseMatrix::identity(1);
  exact.d_out = SparseMatrix(0, 1);
  CHECK(homology_block(exact).dim == 0);

  // 0 -> k -> k^2 -> k -> 0
  ChainBlock b;
  b.d_in = SparseMatrix::from_dense({{1}, {0}});
  b.d_out = SparseMatrix::from_dense({{0, 1}});
  auto h = homology_block(b);
  CHECK(h.dim == 0);

  ChainBlock bad;
  bad.d_in = SparseMatrix::from_dense({{1}, {0}});
  bad.d_out = SparseMatrix::from_dense({{1, 0}});
  CHECK_THROWS_AS(homology_block(bad), InvalidComplex);
}

TEST_CASE("homology dimension is invariant under basis permutation") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    // d_out * d_in = 0 by construction: d_in spans part of ker d_out.
    auto d_out = random_matrix(rng, 3, 6);
    auto ker = rank_and_kernel(d_out).kernel_basis;
    SparseMatrix d_in(6, ker.size());
    for (std::size_t j = 0; j < ker.size(); ++j)
      if (j % 2 == 0)
        for (const auto& [i, v] : ker[j]) d_in.add(i, j, v);
    ChainBlock b{{}, {}, {}, d_in, d_out};
    auto h = homology_block(b);
    for (const auto& z : h.representatives) CHECK(d_out.apply(z).empty());

    std::vector<std::size_t> in(d_in.cols()), mid(6), out(3);
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = i;
    for (std::size_t i = 0; i < 6; ++i) mid[i] = i;
    for (std::size_t i = 0; i < 3; ++i) out[i] = i;
    std::shuffle(in.begin(), in.end(), rng);
    std::shuffle(mid.begin(), mid.end(), rng);
    std::shuffle(out.begin(), out.end(), rng);
    ChainBlock p{{}, {}, {}, permute(d_in, mid, in), permute(d_out, out, mid)};
    CHECK(homology_block(p, false).dim == h.dim);
  }
}

TEST_CASE("exact arithmetic is reproducible") {
  std::mt19937 rng(19);
  auto m = random_matrix(rng, 8, 9);
  auto a = rank_and_kernel(m);
  auto b = rank_and_kernel(m);
  CHECK(a.rank == b.rank);
  CHECK(a.kernel_basis == b.kernel_basis);
}
