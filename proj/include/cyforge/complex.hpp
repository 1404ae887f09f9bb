#pragma once

// Finite cochain complexes assembled from keyed bases.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyforge/errors.hpp"
#include "cyforge/exactla.hpp"

namespace cyforge {

/// C^k with d^k : C^k -> C^{k+1}. Degrees absent from `dim` are zero.
struct GradedComplex {
  std::map<int, std::size_t> dim;
  std::map<int, SparseMatrix> d;

  std::size_t dim_at(int k) const {
    auto it = dim.find(k);
    return it == dim.end() ? 0 : it->second;
  }
  /// The map out of degree k (possibly an empty matrix).
  SparseMatrix d_at(int k) const;

  bool square_zero() const;
  ChainBlock block(int k) const;
  /// Nonzero cohomology dimensions.
  std::map<int, std::size_t> cohomology() const;
  long euler_characteristic() const;
  bool empty() const { return dim.empty(); }
};

long euler_characteristic(const std::map<int, std::size_t>& dims);

/// Collects basis keys per degree and assembles the differential matrices.
template <class Key>
class ComplexBuilder {
 public:
  using Image = std::vector<std::pair<Key, Scalar>>;

  void add(int degree, Key key) { basis_[degree].push_back(std::move(key)); }

  /// Sorts and deduplicates the bases; must precede index/build.
  void finalize() {
    for (auto& [deg, keys] : basis_) {
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    }
    finalized_ = true;
  }

  const std::map<int, std::vector<Key>>& basis() const { return basis_; }

  std::optional<std::size_t> index(int degree, const Key& key) const {
    auto it = basis_.find(degree);
    if (it == basis_.end()) return std::nullopt;
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), key);
    if (pos == it->second.end() || !(*pos == key)) return std::nullopt;
    return static_cast<std::size_t>(pos - it->second.begin());
  }

  /// Image keys must lie in the basis one degree up; with `drop_outside`
  /// they are discarded instead (quotient truncation).
  GradedComplex build(const std::function<Image(const Key&)>& d, bool drop_outside = false) const {
    if (!finalized_) throw Error("ComplexBuilder::build before finalize");
    GradedComplex c;
    for (const auto& [deg, keys] : basis_)
      if (!keys.empty()) c.dim[deg] = keys.size();
    for (const auto& [deg, keys] : basis_) {
      if (keys.empty()) continue;
      SparseMatrix m(c.dim_at(deg + 1), keys.size());
      for (std::size_t j = 0; j < keys.size(); ++j) {
        for (const auto& [img, coeff] : d(keys[j])) {
          auto i = index(deg + 1, img);
          if (!i) {
            if (drop_outside) continue;
            throw InvalidComplex("differential leaves the slice");
          }
          m.add(*i, j, coeff);
        }
      }
      c.d[deg] = std::move(m);
    }
    return c;
  }

 private:
  std::map<int, std::vector<Key>> basis_;
  bool finalized_ = false;
};

/// Vector in a keyed basis.
template <class Key>
SparseVector to_vector(const ComplexBuilder<Key>& b, int degree,
                       const std::vector<std::pair<Key, Scalar>>& terms) {
  SparseVector v;
  for (const auto& [k, c] : terms) {
    auto i = b.index(degree, k);
    if (!i) throw InvalidComplex("element outside the slice basis");
    SparseVector e;
    e.emplace(*i, c);
    axpy(v, 1, e);
  }
  return v;
}

}  // namespace cyforge
