#include "cyforge/homology.hpp"

#include <algorithm>
#include <functional>

#include "cyforge/errors.hpp"
#include "cyforge/parallel.hpp"

namespace cyforge {

namespace {

int sign(int e) { return (e % 2 == 0) ? 1 : -1; }

template <class Map, class Key>
void map_add(Map& m, const Key& k, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = m.emplace(k, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) m.erase(it);
  }
}

// Arrows [begin, end) of p followed by arrows [0, begin) for a closed path.
Path rotate(const GradedQuiver& q, const Path& p, std::size_t begin) {
  if (begin == 0) return p;
  Path out;
  out.arrows.assign(p.arrows.begin() + static_cast<std::ptrdiff_t>(begin), p.arrows.end());
  out.arrows.insert(out.arrows.end(), p.arrows.begin(), p.arrows.begin() + static_cast<std::ptrdiff_t>(begin));
  out.source = q.arrow(out.arrows.front()).source;
  out.target = out.source;
  return out;
}

int arrows_degree(const GradedQuiver& q, const Path& p, std::size_t begin, std::size_t end) {
  int d = 0;
  for (std::size_t i = begin; i < end; ++i) d += q.arrow(p.arrows[i]).degree;
  return d;
}

void require_reduced_setting(const CompletionPresentation& B) {
  if (B.deformed || !B.b->weight_graded)
    throw Error("reduced complexes need an undeformed completion");
}

}  // namespace

// A (x)_{A^e} B/A

void bar_add(BarElement& x, const Path& w, const Scalar& c) { map_add(x, w, c); }

void bar_add_normalized(BarElement& x, const CompletionPresentation& B, const Path& w, const Scalar& c) {
  const auto& q = B.b->quiver();
  std::size_t i = 0;
  while (i < w.length() && !B.is_theta_arrow(w.arrows[i])) ++i;
  if (i == w.length()) return;
  int e = arrows_degree(q, w, 0, i) * arrows_degree(q, w, i, w.length());
  map_add(x, rotate(q, w, i), c * sign(e));
}

BarElement bar_differential(const CompletionPresentation& B, const BarElement& x) {
  BarElement out;
  for (const auto& [w, c] : x) {
    const Element dw = differential(B.b->pres, w);
    for (const auto& [p, a] : dw.terms()) bar_add_normalized(out, B, p, c * a);
  }
  return out;
}

BarElement b_map(const CompletionPresentation& B, const EnvElement& x) {
  BarElement out;
  const auto& q = B.b->quiver();
  for (const auto& [w, c] : x) {
    ArrowId h = B.arrow_of_gen[static_cast<std::size_t>(w.gen)];
    Path g = Path::arrow(q, h);
    int e = q.arrow(h).degree * B.b->degree(w.path);
    bar_add_normalized(out, B, *concat(g, w.path), c);
    bar_add_normalized(out, B, *concat(w.path, g), -c * sign(e));
  }
  return out;
}

EnvElement gamma_map(const CompletionPresentation& B, const BarElement& x) {
  EnvElement out;
  const auto& q = B.b->quiver();
  for (const auto& [w, c] : x) {
    for (std::size_t i = 0; i < w.length(); ++i) {
      ArrowId a = w.arrows[i];
      if (!B.is_theta_arrow(a)) continue;
      int e = arrows_degree(q, w, 0, i) * arrows_degree(q, w, i, w.length());
      Path r = rotate(q, w, i);
      Path rest = subpath(q, r, 1, r.length());
      env_add(out, EnvWord{B.theta_gen[static_cast<std::size_t>(a)], rest}, c * sign(e));
    }
  }
  return out;
}

EnvElement theta_differential(const CompletionPresentation& B, const EnvElement& x) {
  return env_differential(B.theta.module, *B.b, x);
}

// Periodic complex

int internal_degree(const CompletionPresentation& B, const PeriodicKey& k) {
  int d = B.b->degree(k.path);
  if (k.gen >= 0) d += B.theta.module.gen(k.gen).degree;
  return d;
}

int total_degree(const CompletionPresentation& B, const PeriodicKey& k) {
  return internal_degree(B, k) - k.column;
}

int key_length(const CompletionPresentation& B, const PeriodicKey& k) {
  int l = B.b->length(k.path);
  if (k.gen >= 0) l += B.theta.module.gen(k.gen).length;
  return l;
}

int key_weight(const CompletionPresentation& B, const PeriodicKey& k) {
  int w = B.b->weight(k.path);
  if (k.gen >= 0) w += B.theta.module.gen(k.gen).weight;
  return w;
}

PeriodicElement periodic_differential(const CompletionPresentation& B, const PeriodicElement& x,
                                      int max_column) {
  PeriodicElement out;
  for (const auto& [k, c] : x) {
    if (k.column > max_column) throw InvalidComplex("element outside the column range");
    const int s = sign(k.column);
    if (k.gen >= 0) {
      EnvElement e;
      env_add(e, EnvWord{k.gen, k.path}, 1);
      for (const auto& [w, a] : theta_differential(B, e))
        map_add(out, PeriodicKey{k.column, w.gen, w.path}, c * a * s);
      for (const auto& [w, a] : b_map(B, e)) map_add(out, PeriodicKey{k.column - 1, -1, w}, c * a);
    } else {
      BarElement e;
      bar_add(e, k.path, 1);
      for (const auto& [w, a] : bar_differential(B, e))
        map_add(out, PeriodicKey{k.column, -1, w}, c * a * s);
      if (k.column >= 2)
        for (const auto& [w, a] : gamma_map(B, e))
          map_add(out, PeriodicKey{k.column - 1, w.gen, w.path}, c * a);
    }
  }
  return out;
}

std::vector<PeriodicKey> column_words(const CompletionPresentation& B, const PathCatalog& cat,
                                      int column, int length, int weight) {
  std::vector<PeriodicKey> out;
  if (column % 2 == 1) {
    for (auto& w : env_slice_words(B.theta.module, *B.b, cat, length, weight))
      out.push_back(PeriodicKey{column, w.gen, std::move(w.path)});
  } else {
    for (auto& p : cat.cycles(length))
      if (!p.is_idempotent() && B.is_theta_arrow(p.arrows.front()) && B.b->weight(p) == weight)
        out.push_back(PeriodicKey{column, -1, std::move(p)});
  }
  return out;
}

PeriodicSlice periodic_slice(const CompletionPresentation& B, const PathCatalog& cat, int length,
                             int weight, int max_column, int deg_min) {
  PeriodicSlice s;
  s.length = length;
  s.weight = weight;
  auto even = column_words(B, cat, 0, length, weight);
  auto odd = column_words(B, cat, 1, length, weight);
  if (max_column < 0) {
    int kmax = deg_min;
    for (const auto& k : even) kmax = std::max(kmax, internal_degree(B, k));
    for (const auto& k : odd) kmax = std::max(kmax, internal_degree(B, k));
    max_column = std::max(1, kmax - deg_min + 1);
  }
  s.max_column = max_column;
  for (int j = 0; j <= max_column; ++j)
    for (const auto& k : (j % 2 ? odd : even)) {
      PeriodicKey key{j, k.gen, k.path};
      int deg = total_degree(B, key);
      s.builder.add(deg, std::move(key));
    }
  s.builder.finalize();
  s.complex = s.builder.build([&](const PeriodicKey& k) {
    PeriodicElement x;
    x.emplace(k, 1);
    auto dx = periodic_differential(B, x, max_column);
    return std::vector<std::pair<PeriodicKey, Scalar>>(dx.begin(), dx.end());
  });
  return s;
}

std::string format_key(const CompletionPresentation& B, const PeriodicKey& k) {
  const auto& q = B.b->quiver();
  std::string s = "[" + std::to_string(k.column) + "] ";
  if (k.gen >= 0) {
    s += B.theta.module.gen(k.gen).name + " (x) " +
         (k.path.is_idempotent() ? "e(" + q.vertex_name(k.path.source) + ")" : format_path(q, k.path));
  } else {
    s += "1 (x) " + format_path(q, k.path);
  }
  return s;
}

std::string to_string(HomologyKind k) {
  switch (k) {
    case HomologyKind::HochschildReduced: return "HH_red";
    case HomologyKind::CyclicReduced: return "HC_red";
    case HomologyKind::NegativeCyclic: return "HN";
  }
  return "?";
}

std::size_t HomologyTable::dim(int degree, int weight) const {
  for (const auto& e : entries)
    if (e.degree == degree && e.weight == weight) return e.dim;
  return 0;
}

namespace {

struct SliceResult {
  std::map<int, std::size_t> dims;
  bool euler_ok = true;
};

SliceResult slice_homology(const CompletionPresentation& B, const PathCatalog& cat, int length,
                           int weight, int max_column, int deg_min) {
  auto s = periodic_slice(B, cat, length, weight, max_column, deg_min);
  SliceResult r;
  auto h = s.complex.cohomology();
  r.euler_ok = euler_characteristic(h) == s.complex.euler_characteristic();
  for (const auto& [d, n] : h)
    if (d >= deg_min) r.dims[d] = n;
  return r;
}

HomologyTable tabulate(const CompletionPresentation& B, const Window& w, HomologyKind kind,
                       int max_column) {
  require_reduced_setting(B);
  PathCatalog cat(*B.b, w.len_max);
  std::vector<std::pair<int, int>> slices;
  for (int wt = 1; wt <= w.weight_max; ++wt)
    for (int l = 0; l <= w.len_max; ++l) slices.emplace_back(l, wt);
  std::vector<SliceResult> results(slices.size());
  parallel_for(slices.size(), [&](std::size_t i) {
    results[i] = slice_homology(B, cat, slices[i].first, slices[i].second, max_column, w.deg_min);
  });
  HomologyTable t;
  t.kind = kind;
  t.window = w;
  t.exact_lengths = B.b->exact_length;
  std::map<std::pair<int, int>, std::size_t> acc;  // (weight, degree)
  for (std::size_t i = 0; i < slices.size(); ++i) {
    t.euler_ok = t.euler_ok && results[i].euler_ok;
    for (const auto& [d, n] : results[i].dims) acc[{slices[i].second, d}] += n;
  }
  for (const auto& [key, n] : acc) t.entries.push_back({key.second, key.first, n});
  return t;
}

}  // namespace

HomologyTable reduced_hochschild(const CompletionPresentation& B, const Window& w) {
  return tabulate(B, w, HomologyKind::HochschildReduced, 1);
}

HomologyTable reduced_cyclic(const CompletionPresentation& B, const Window& w) {
  if (w.columns <= 0) return tabulate(B, w, HomologyKind::CyclicReduced, -1);
  auto t = tabulate(B, w, HomologyKind::CyclicReduced, w.columns);
  auto more = tabulate(B, w, HomologyKind::CyclicReduced, w.columns + 2);
  t.stable = t.entries.size() == more.entries.size() &&
             std::equal(t.entries.begin(), t.entries.end(), more.entries.begin(),
                        [](const TableEntry& a, const TableEntry& b) {
                          return a.degree == b.degree && a.weight == b.weight && a.dim == b.dim;
                        });
  return t;
}

namespace {

int max_column_of(const PeriodicElement& x) {
  int j = 0;
  for (const auto& [k, c] : x) j = std::max(j, k.column);
  return j;
}

}  // namespace

HomologyClass connes_B(const CompletionPresentation& B, const HomologyClass& hc) {
  if (!periodic_differential(B, hc.representative, max_column_of(hc.representative)).empty())
    throw NotACycle("representative is not a cycle of the periodic complex");
  HomologyClass out;
  out.kind = HomologyKind::HochschildReduced;
  out.degree = hc.degree - 1;
  out.weight = hc.weight;
  out.length = hc.length;
  out.representative = cone_connes(B, hc.representative);
  return out;
}

PeriodicElement cone_connes(const CompletionPresentation& B, const PeriodicElement& x) {
  BarElement y;
  for (const auto& [k, c] : x)
    if (k.column == 0) bar_add(y, k.path, c);
  PeriodicElement out;
  for (const auto& [w, c] : gamma_map(B, y)) map_add(out, PeriodicKey{1, w.gen, w.path}, c);
  return out;
}

namespace {

// Groups a homogeneous-degree element by (length, weight).
std::map<std::pair<int, int>, PeriodicElement> split(const CompletionPresentation& B,
                                                     const PeriodicElement& x) {
  std::map<std::pair<int, int>, PeriodicElement> out;
  for (const auto& [k, c] : x) out[{key_length(B, k), key_weight(B, k)}].emplace(k, c);
  return out;
}

std::optional<PeriodicElement> preimage(const CompletionPresentation& B, const PeriodicElement& x,
                                        int max_column) {
  PeriodicElement out;
  if (x.empty()) return out;
  const int deg = total_degree(B, x.begin()->first);
  for (const auto& [lw, part] : split(B, x)) {
    PathCatalog cat(*B.b, lw.first);
    auto s = periodic_slice(B, cat, lw.first, lw.second, max_column, deg - 2);
    std::vector<std::pair<PeriodicKey, Scalar>> terms(part.begin(), part.end());
    auto sol = solve_linear(s.complex.d_at(deg - 1), to_vector(s.builder, deg, terms));
    if (!sol) return std::nullopt;
    const auto& keys = s.builder.basis().at(deg - 1);
    for (const auto& [i, c] : *sol) map_add(out, keys[i], c);
  }
  return out;
}

}  // namespace

bool is_boundary(const CompletionPresentation& B, const PeriodicElement& x, int max_column) {
  return preimage(B, x, max_column).has_value();
}

std::optional<MixedChain<PeriodicElement>> negative_cyclic_lift(const CompletionPresentation& B,
                                                                const PeriodicElement& c,
                                                                int u_order) {
  if (!periodic_differential(B, c, 1).empty()) throw NotACycle("not a cycle of the cone over b");
  MixedChain<PeriodicElement> m;
  m.order = u_order;
  m.components.push_back(c);
  for (int i = 0; i < u_order; ++i) {
    PeriodicElement rhs;
    for (const auto& [k, a] : cone_connes(B, m.components.back())) rhs.emplace(k, -a);
    auto next = preimage(B, rhs, 1);
    if (!next) return std::nullopt;
    m.components.push_back(std::move(*next));
  }
  return m;
}

// Normalized Hochschild chains

void hoch_add(HochChain& x, const HochWord& w, const Scalar& c) {
  for (const auto& p : w.bar)
    if (p.is_idempotent()) return;
  map_add(x, w, c);
}

int hoch_degree(const GradedBase& A, const HochWord& w) {
  int d = A.degree(w.a0);
  for (const auto& p : w.bar) d += A.degree(p) - 1;
  return d;
}

int hoch_length(const GradedBase& A, const HochWord& w) {
  int l = A.length(w.a0);
  for (const auto& p : w.bar) l += A.length(p);
  return l;
}

HochChain hoch_b(const GradedBase& A, const HochChain& x) {
  HochChain out;
  for (const auto& [w, c] : x) {
    const std::size_t m = w.bar.size();
    std::vector<int> eps(m + 1);
    eps[0] = A.degree(w.a0);
    for (std::size_t i = 1; i <= m; ++i) eps[i] = eps[i - 1] + A.degree(w.bar[i - 1]) - 1;
    // internal differential, d(s a) = -s(da)
    const Element d0 = differential(A.pres, w.a0);
    for (const auto& [p, a] : d0.terms()) hoch_add(out, HochWord{p, w.bar}, c * a);
    for (std::size_t i = 1; i <= m; ++i) {
      const Element di = differential(A.pres, w.bar[i - 1]);
      for (const auto& [p, a] : di.terms()) {
        HochWord v = w;
        v.bar[i - 1] = p;
        hoch_add(out, v, -c * a * sign(eps[i - 1]));
      }
    }
    // merging neighbours
    for (std::size_t i = 0; i < m; ++i) {
      HochWord v;
      if (i == 0) {
        v.a0 = *concat(w.a0, w.bar[0]);
        v.bar.assign(w.bar.begin() + 1, w.bar.end());
      } else {
        v.a0 = w.a0;
        v.bar = w.bar;
        v.bar[i - 1] = *concat(w.bar[i - 1], w.bar[i]);
        v.bar.erase(v.bar.begin() + static_cast<std::ptrdiff_t>(i));
      }
      hoch_add(out, v, c * sign(eps[i]));
    }
    if (m >= 1) {
      const int sm = A.degree(w.bar[m - 1]) - 1;
      HochWord v;
      v.a0 = *concat(w.bar[m - 1], w.a0);
      v.bar.assign(w.bar.begin(), w.bar.end() - 1);
      hoch_add(out, v, -c * sign(sm * eps[m - 1]));
    }
  }
  return out;
}

HochChain hoch_B(const GradedBase& A, const HochChain& x) {
  HochChain out;
  for (const auto& [w, c] : x) {
    if (w.a0.is_idempotent()) continue;
    std::vector<Path> letters;
    letters.push_back(w.a0);
    letters.insert(letters.end(), w.bar.begin(), w.bar.end());
    std::vector<int> s(letters.size());
    for (std::size_t j = 0; j < letters.size(); ++j) s[j] = A.degree(letters[j]) - 1;
    for (std::size_t i = 0; i < letters.size(); ++i) {
      int before = 0, after = 0;
      for (std::size_t j = 0; j < letters.size(); ++j) (j < i ? before : after) += s[j];
      HochWord v;
      v.a0 = Path::idempotent(letters[i].source);
      v.bar.assign(letters.begin() + static_cast<std::ptrdiff_t>(i), letters.end());
      v.bar.insert(v.bar.end(), letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(i));
      hoch_add(out, v, c * sign(before * after));
    }
  }
  return out;
}

std::vector<HochWord> hoch_words(const GradedBase& A, const PathCatalog& cat, int length, int degree) {
  std::vector<HochWord> out;
  const int nv = static_cast<int>(A.quiver().vertex_count());
  std::function<void(HochWord&, VertexId, int)> extend = [&](HochWord& w, VertexId at, int rest) {
    if (rest == 0) {
      if (at == w.a0.source && hoch_degree(A, w) == degree) out.push_back(w);
      return;
    }
    for (int l = 1; l <= rest; ++l)
      for (VertexId y = 0; y < nv; ++y)
        for (const auto& p : cat.paths(at, y, l)) {
          w.bar.push_back(p);
          extend(w, y, rest - l);
          w.bar.pop_back();
        }
  };
  for (int l0 = 0; l0 <= length; ++l0)
    for (VertexId x = 0; x < nv; ++x)
      for (VertexId y = 0; y < nv; ++y)
        for (const auto& p : cat.paths(x, y, l0)) {
          HochWord w{p, {}};
          extend(w, y, length - l0);
        }
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_hoch(const GradedBase& A, const HochWord& w) {
  std::string s = format_path(A.quiver(), w.a0) + "[";
  for (std::size_t i = 0; i < w.bar.size(); ++i) {
    if (i) s += "|";
    s += format_path(A.quiver(), w.bar[i]);
  }
  return s + "]";
}

HochChain potential_chain(const GradedBase& A, const Potential& w) {
  HochChain x;
  for (const auto& [p, c] : w.element().terms()) {
    HochChain a0;
    hoch_add(a0, HochWord{p, {}}, c);
    for (const auto& [v, b] : hoch_B(A, a0)) hoch_add(x, v, b);
  }
  return x;
}

EnvElement small_model(const Resolution& pA, const HochChain& x) {
  const auto& A = *pA.module.base;
  const auto& q = A.quiver();
  EnvElement out;
  for (const auto& [w, c] : x) {
    if (w.bar.size() > 1) throw Error("small_model handles at most one bar letter");
    if (w.bar.empty()) {
      env_add(out, EnvWord{pA.omega[static_cast<std::size_t>(w.a0.source)], w.a0}, c);
      continue;
    }
    const Path& v = w.bar[0];
    for (std::size_t i = 0; i < v.length(); ++i) {
      if (q.arrow(v.arrows[i]).degree != 0) throw Error("small_model handles degree-0 arrows only");
      Path after = subpath(q, v, i + 1, v.length());
      Path before = subpath(q, v, 0, i);
      Path u = *concat(*concat(after, w.a0), before);
      env_add(out, EnvWord{pA.rho[static_cast<std::size_t>(v.arrows[i])], u}, c);
    }
  }
  return out;
}

std::optional<MixedChain<HochChain>> negative_cyclic_lift(const GradedBase& A, const HochChain& c,
                                                          int u_order) {
  if (!hoch_b(A, c).empty()) throw NotACycle("not a Hochschild cycle");
  MixedChain<HochChain> m;
  m.order = u_order;
  m.components.push_back(c);
  for (int i = 0; i < u_order; ++i) {
    HochChain rhs;
    for (const auto& [w, a] : hoch_B(A, m.components.back())) rhs.emplace(w, -a);
    HochChain next;
    std::map<int, HochChain> by_length;
    for (const auto& [w, a] : rhs) by_length[hoch_length(A, w)].emplace(w, a);
    for (const auto& [len, part] : by_length) {
      const int deg = hoch_degree(A, part.begin()->first);
      PathCatalog cat(A, len);
      auto src = hoch_words(A, cat, len, deg - 1);
      auto dst = hoch_words(A, cat, len, deg);
      auto index = [&](const HochWord& w) -> std::size_t {
        auto it = std::lower_bound(dst.begin(), dst.end(), w);
        if (it == dst.end() || !(*it == w)) throw InvalidComplex("chain outside the enumerated basis");
        return static_cast<std::size_t>(it - dst.begin());
      };
      SparseMatrix M(dst.size(), src.size());
      for (std::size_t j = 0; j < src.size(); ++j) {
        HochChain e;
        e.emplace(src[j], 1);
        for (const auto& [w, a] : hoch_b(A, e)) M.add(index(w), j, a);
      }
      SparseVector v;
      for (const auto& [w, a] : part) v[index(w)] = a;
      auto sol = solve_linear(M, v);
      if (!sol) return std::nullopt;
      for (const auto& [j, a] : *sol) hoch_add(next, src[j], a);
    }
    m.components.push_back(std::move(next));
  }
  return m;
}

}  // namespace cyforge
