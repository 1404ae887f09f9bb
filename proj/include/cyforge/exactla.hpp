#pragma once

// Exact sparse linear algebra over the rationals.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace cyforge {

using Scalar = mpq_class;

/// Sparse vector: index -> nonzero value.
using SparseVector = std::map<std::size_t, Scalar>;

void axpy(SparseVector& y, const Scalar& a, const SparseVector& x);
Scalar dot(const SparseVector& x, const SparseVector& y);

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<std::vector<Scalar>>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }

  /// Adds v to entry (r, c); entries that cancel are removed.
  void add(std::size_t r, std::size_t c, const Scalar& v);
  Scalar at(std::size_t r, std::size_t c) const;
  const SparseVector& row(std::size_t r) const { return rows_[r]; }
  std::size_t nonzeros() const;

  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseVector apply(const SparseVector& x) const;
  bool is_zero() const;

  bool operator==(const SparseMatrix& other) const = default;

 private:
  std::vector<SparseVector> rows_;
  std::size_t cols_ = 0;
};

struct RankKernel {
  std::size_t rank = 0;
  std::vector<SparseVector> kernel_basis;
};

std::size_t rank(const SparseMatrix& m);

/// Kernel vectors are primitive integer vectors with positive leading entry.
RankKernel rank_and_kernel(const SparseMatrix& m);

/// One solution of m x = v, or nullopt when v is outside the column space.
std::optional<SparseVector> solve_linear(const SparseMatrix& m, const SparseVector& v);

/// For an inconsistent system: y with y^T m = 0 and y.v != 0.
std::optional<SparseVector> inconsistency_certificate(const SparseMatrix& m,
                                                      const SparseVector& v);

/// in -> mid -> out, with d_in : mid <- in and d_out : out <- mid.
struct ChainBlock {
  std::vector<std::string> basis_in, basis_mid, basis_out;
  SparseMatrix d_in;
  SparseMatrix d_out;
};

struct BlockHomology {
  std::size_t dim = 0;
  std::vector<SparseVector> representatives;
};

/// Throws InvalidComplex when d_out * d_in != 0.
BlockHomology homology_block(const ChainBlock& block, bool with_representatives = true);

/// Homology dimension from the two differentials alone (no square-zero check).
std::size_t homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out);

// Incremental row-reduced span; used to test membership and independence.
class SpanReducer {
 public:
  explicit SpanReducer(std::size_t dim) : dim_(dim) {}
  /// Returns true if v was independent of the current span (and adds it).
  bool insert(SparseVector v);
  /// Reduces v against the span; the residual is zero iff v lies in it.
  SparseVector reduce(SparseVector v) const;
  bool contains(const SparseVector& v) const { return reduce(v).empty(); }
  std::size_t size() const { return pivots_.size(); }

 private:
  std::size_t dim_;
  std::map<std::size_t, SparseVector> pivots_;  // pivot column -> row with leading 1
};

}  // namespace cyforge
