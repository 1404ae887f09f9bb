#include "cyforge/complex.hpp"

namespace cyforge {

SparseMatrix GradedComplex::d_at(int k) const {
  auto it = d.find(k);
  if (it != d.end()) return it->second;
  return SparseMatrix(dim_at(k + 1), dim_at(k));
}

bool GradedComplex::square_zero() const {
  for (const auto& [k, m] : d)
    if (!(d_at(k + 1) * m).is_zero()) return false;
  return true;
}

ChainBlock GradedComplex::block(int k) const {
  ChainBlock b;
  b.d_in = d_at(k - 1);
  b.d_out = d_at(k);
  return b;
}

std::map<int, std::size_t> GradedComplex::cohomology() const {
  std::map<int, std::size_t> out;
  for (const auto& [k, n] : dim) {
    auto h = homology_dim(d_at(k - 1), d_at(k));
    if (h) out[k] = h;
  }
  return out;
}

long euler_characteristic(const std::map<int, std::size_t>& dims) {
  long e = 0;
  for (const auto& [k, n] : dims) e += (k % 2 == 0 ? 1 : -1) * static_cast<long>(n);
  return e;
}

long GradedComplex::euler_characteristic() const { return cyforge::euler_characteristic(dim); }

}  // namespace cyforge
