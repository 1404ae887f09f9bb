#include "cyforge/exactla.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "cyforge/errors.hpp"

namespace cyforge {

void axpy(SparseVector& y, const Scalar& a, const SparseVector& x) {
  if (a == 0) return;
  for (const auto& [i, xv] : x) {
    auto [it, inserted] = y.try_emplace(i, a * xv);
    if (!inserted) {
      it->second += a * xv;
      if (it->second == 0) y.erase(it);
    }
  }
}

Scalar dot(const SparseVector& x, const SparseVector& y) {
  Scalar s = 0;
  const auto& small = x.size() <= y.size() ? x : y;
  const auto& large = x.size() <= y.size() ? y : x;
  for (const auto& [i, v] : small) {
    auto it = large.find(i);
    if (it != large.end()) s += v * it->second;
  }
  return s;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.add(i, i, 1);
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<Scalar>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  SparseMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c) m.add(r, c, rows[r][c]);
  return m;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_.size() || c >= cols_) throw Error("SparseMatrix::add: index out of range");
  if (v == 0) return;
  Scalar x = v;
  x.canonicalize();
  auto [it, inserted] = rows_[r].try_emplace(c, std::move(x));
  if (!inserted) {
    it->second += v;
    it->second.canonicalize();
    if (it->second == 0) rows_[r].erase(it);
  }
}

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const {
  auto it = rows_.at(r).find(c);
  return it == rows_[r].end() ? Scalar(0) : it->second;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace(r, v);
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (cols_ != rhs.rows()) throw Error("SparseMatrix: dimension mismatch in product");
  SparseMatrix out(rows_.size(), rhs.cols());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [k, v] : rows_[r]) axpy(out.rows_[r], v, rhs.rows_[k]);
  return out;
}

SparseVector SparseMatrix::apply(const SparseVector& x) const {
  SparseVector y;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Scalar s = dot(rows_[r], x);
    if (s != 0) y.emplace(r, std::move(s));
  }
  return y;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const auto& r) { return r.empty(); });
}

namespace {

// Integer row, sorted by column.
using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

void remove_content(IntRow& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) return;
  }
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow to_int_row(const SparseVector& v) {
  mpz_class l = 1;
  for (const auto& [c, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntRow row;
  row.reserve(v.size());
  for (const auto& [c, x] : v) {
    mpz_class num = x.get_num() * (l / x.get_den());
    row.emplace_back(c, std::move(num));
  }
  remove_content(row);
  return row;
}

// r <- (p0/g) r - (r0/g) p, cancelling the shared leading column.
IntRow eliminate(const IntRow& r, const IntRow& p) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), r.front().second.get_mpz_t(), p.front().second.get_mpz_t());
  mpz_class fr = p.front().second / g;
  mpz_class fp = r.front().second / g;
  IntRow out;
  out.reserve(r.size() + p.size());
  std::size_t i = 1, j = 1;
  while (i < r.size() || j < p.size()) {
    if (j >= p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.emplace_back(r[i].first, fr * r[i].second);
      ++i;
    } else if (i >= r.size() || p[j].first < r[i].first) {
      out.emplace_back(p[j].first, -fp * p[j].second);
      ++j;
    } else {
      mpz_class v = fr * r[i].second - fp * p[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  remove_content(out);
  return out;
}

// Fraction-free row echelon form. Pivot per column: smallest |leading entry|,
// ties broken by lowest row index. Returned rows have strictly increasing
// leading columns.
std::vector<IntRow> echelon(std::vector<IntRow> rows) {
  std::map<std::size_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].empty()) buckets[rows[i].front().first].push_back(i);

  std::vector<IntRow> out;
  while (!buckets.empty()) {
    auto node = buckets.extract(buckets.begin());
    auto& ids = node.mapped();
    std::sort(ids.begin(), ids.end());
    std::size_t best = ids.front();
    for (std::size_t id : ids) {
      if (mpz_cmpabs(rows[id].front().second.get_mpz_t(), rows[best].front().second.get_mpz_t()) < 0)
        best = id;
    }
    for (std::size_t id : ids) {
      if (id == best) continue;
      rows[id] = eliminate(rows[id], rows[best]);
      if (!rows[id].empty()) buckets[rows[id].front().first].push_back(id);
    }
    out.push_back(std::move(rows[best]));
  }
  return out;
}

std::vector<IntRow> echelon_of(const SparseMatrix& m) {
  std::vector<IntRow> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!m.row(r).empty()) rows.push_back(to_int_row(m.row(r)));
  return echelon(std::move(rows));
}

// Solves the echelon system with the given values for non-pivot unknowns.
// `rhs_col`, when set, names an augmented column holding the right-hand side.
SparseVector back_substitute(const std::vector<IntRow>& ech, SparseVector x,
                             std::optional<std::size_t> rhs_col) {
  for (auto k = ech.size(); k-- > 0;) {
    const IntRow& row = ech[k];
    Scalar s = 0;
    for (std::size_t t = 1; t < row.size(); ++t) {
      const auto& [c, v] = row[t];
      if (rhs_col && c == *rhs_col) {
        s -= Scalar(v);
        continue;
      }
      auto it = x.find(c);
      if (it != x.end()) s += Scalar(v) * it->second;
    }
    if (s != 0) x[row.front().first] = -s / Scalar(row.front().second);
  }
  return x;
}

SparseVector primitive(SparseVector v) {
  if (v.empty()) return v;
  mpz_class l = 1, g = 0;
  for (const auto& [c, x] : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  for (auto& [c, x] : v) {
    x *= Scalar(l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
  }
  if (v.begin()->second < 0) g = -g;
  for (auto& [c, x] : v) x /= Scalar(g);
  return v;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) { return echelon_of(m).size(); }

RankKernel rank_and_kernel(const SparseMatrix& m) {
  auto ech = echelon_of(m);
  RankKernel out;
  out.rank = ech.size();
  std::vector<bool> pivot(m.cols(), false);
  for (const auto& row : ech) pivot[row.front().first] = true;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (pivot[f]) continue;
    SparseVector x;
    x.emplace(f, 1);
    out.kernel_basis.push_back(primitive(back_substitute(ech, std::move(x), std::nullopt)));
  }
  return out;
}

std::optional<SparseVector> solve_linear(const SparseMatrix& m, const SparseVector& v) {
  if (!v.empty() && v.rbegin()->first >= m.rows())
    throw Error("solve_linear: right-hand side longer than the matrix");
  const std::size_t rhs = m.cols();
  std::vector<SparseVector> aug(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) aug[r] = m.row(r);
  for (const auto& [r, x] : v) aug[r].emplace(rhs, x);
  std::vector<IntRow> rows;
  rows.reserve(aug.size());
  for (const auto& r : aug)
    if (!r.empty()) rows.push_back(to_int_row(r));
  auto ech = echelon(std::move(rows));
  for (const auto& row : ech)
    if (row.front().first == rhs) return std::nullopt;
  return back_substitute(ech, {}, rhs);
}

std::optional<SparseVector> inconsistency_certificate(const SparseMatrix& m,
                                                      const SparseVector& v) {
  auto left = rank_and_kernel(m.transpose());
  for (auto& y : left.kernel_basis)
    if (dot(y, v) != 0) return y;
  return std::nullopt;
}

std::size_t homology_dim(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  const std::size_t mid = d_out.cols();
  return mid - rank(d_out) - rank(d_in);
}

BlockHomology homology_block(const ChainBlock& block, bool with_representatives) {
  const auto& d_in = block.d_in;
  const auto& d_out = block.d_out;
  if (d_in.rows() != d_out.cols()) throw InvalidComplex("homology_block: dimension mismatch");
  if (!(d_out * d_in).is_zero()) throw InvalidComplex("homology_block: d_out * d_in != 0");
  BlockHomology h;
  if (!with_representatives) {
    h.dim = homology_dim(d_in, d_out);
    return h;
  }
  auto rk = rank_and_kernel(d_out);
  SpanReducer span(d_out.cols());
  auto cols = d_in.transpose();
  for (std::size_t j = 0; j < cols.rows(); ++j) span.insert(cols.row(j));
  for (auto& z : rk.kernel_basis)
    if (span.insert(z)) h.representatives.push_back(z);
  h.dim = h.representatives.size();
  return h;
}

SparseVector SpanReducer::reduce(SparseVector v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    const std::size_t col = it->first;
    Scalar c = it->second;
    axpy(v, -c, p->second);
    it = v.upper_bound(col);
  }
  return v;
}

bool SpanReducer::insert(SparseVector v) {
  if (!v.empty() && v.rbegin()->first >= dim_) throw Error("SpanReducer: index out of range");
  v = reduce(std::move(v));
  if (v.empty()) return false;
  Scalar lead = v.begin()->second;
  for (auto& [c, x] : v) x /= lead;
  pivots_.emplace(v.begin()->first, std::move(v));
  return true;
}

}  // namespace cyforge
