#include "cyforge/bimods.hpp"

#include <algorithm>
#include <utility>

#include "cyforge/errors.hpp"

namespace cyforge {

namespace {

int sign(int e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace

// BiElement

void BiElement::add(const BiWord& w, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void BiElement::add(const BiElement& x, const Scalar& c) {
  if (c == 0) return;
  for (const auto& [w, a] : x.terms_) add(w, a * c);
}

Scalar BiElement::coefficient(const BiWord& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar(0) : it->second;
}

BiElement BiElement::operator+(const BiElement& o) const {
  BiElement r = *this;
  r.add(o, 1);
  return r;
}

BiElement BiElement::operator-(const BiElement& o) const {
  BiElement r = *this;
  r.add(o, -1);
  return r;
}

BiElement operator*(const Scalar& c, const BiElement& x) {
  BiElement r;
  r.add(x, c);
  return r;
}

// FreeBimodule

int FreeBimodule::add_generator(Generator g, BiElement d) {
  if (find(g.name)) throw Error("duplicate generator " + g.name);
  gens.push_back(std::move(g));
  diff.push_back(std::move(d));
  return static_cast<int>(gens.size()) - 1;
}

std::optional<int> FreeBimodule::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return static_cast<int>(i);
  return std::nullopt;
}

int FreeBimodule::degree(const BiWord& w) const {
  return base->degree(w.left) + gen(w.gen).degree + base->degree(w.right);
}

int FreeBimodule::weight(const BiWord& w) const {
  return base->weight(w.left) + gen(w.gen).weight + base->weight(w.right);
}

int FreeBimodule::length(const BiWord& w) const {
  return base->length(w.left) + gen(w.gen).length + base->length(w.right);
}

BiWord bare(const FreeBimodule& X, int g) {
  const auto& G = X.gen(g);
  return BiWord{Path::idempotent(G.left), g, Path::idempotent(G.right)};
}

BiElement act(const Element& a, const BiElement& x, const Element& b) {
  BiElement out;
  for (const auto& [w, c] : x.terms())
    for (const auto& [p, ca] : a.terms()) {
      auto left = concat(p, w.left);
      if (!left) continue;
      for (const auto& [q, cb] : b.terms()) {
        auto right = concat(w.right, q);
        if (!right) continue;
        out.add(BiWord{*left, w.gen, *right}, c * ca * cb);
      }
    }
  return out;
}

BiElement bimodule_differential(const FreeBimodule& X, const BiElement& x) {
  const auto& P = X.base->pres;
  BiElement out;
  for (const auto& [w, c] : x.terms()) {
    int dp = X.base->degree(w.left);
    int dg = X.gen(w.gen).degree;
    for (const auto tmp1 = differential(P, w.left); const auto& [p, a] : tmp1.terms())
      out.add(BiWord{p, w.gen, w.right}, c * a);
    out.add(act(Element(w.left), X.diff[static_cast<std::size_t>(w.gen)], Element(w.right)),
            c * sign(dp));
    for (const auto tmp2 = differential(P, w.right); const auto& [q, a] : tmp2.terms())
      out.add(BiWord{w.left, w.gen, q}, c * a * sign(dp + dg));
  }
  return out;
}

std::vector<std::string> audit_bimodule(const FreeBimodule& X) {
  std::vector<std::string> issues;
  for (std::size_t i = 0; i < X.gens.size(); ++i) {
    const auto& g = X.gens[i];
    bool ok = true;
    for (const auto& [w, c] : X.diff[i].terms()) {
      std::string where = "d(" + g.name + ") term " + format_biword(X, w);
      if (w.left.source != g.left || w.right.target != g.right || w.left.target != X.gen(w.gen).left ||
          w.right.source != X.gen(w.gen).right) {
        issues.push_back(where + " has wrong endpoints");
        ok = false;
      } else if (X.degree(w) != g.degree + 1) {
        issues.push_back(where + " has degree " + std::to_string(X.degree(w)));
        ok = false;
      } else if (X.base->exact_length && X.length(w) != g.length) {
        issues.push_back(where + " has length " + std::to_string(X.length(w)));
        ok = false;
      } else if (X.base->weight_graded && X.weight(w) != g.weight) {
        issues.push_back(where + " has weight " + std::to_string(X.weight(w)));
        ok = false;
      }
      if (!ok) break;
    }
    if (!ok) continue;
    BiElement dd = bimodule_differential(X, X.diff[i]);
    if (!dd.is_zero()) issues.push_back("d(d(" + g.name + ")) = " + format_bielement(X, dd));
  }
  return issues;
}

void validate_bimodule(const FreeBimodule& X) {
  auto issues = audit_bimodule(X);
  if (!issues.empty()) throw InvalidComplex(issues.front());
}

std::string format_biword(const FreeBimodule& X, const BiWord& w) {
  const auto& q = X.base->quiver();
  std::string s;
  if (!w.left.is_idempotent()) s += format_path(q, w.left) + ".";
  s += X.gen(w.gen).name;
  if (!w.right.is_idempotent()) s += "." + format_path(q, w.right);
  return s;
}

std::string format_bielement(const FreeBimodule& X, const BiElement& x) {
  if (x.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    Scalar a = abs(c);
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    first = false;
    if (a != 1) s += a.get_str() + "*";
    s += format_biword(X, w);
  }
  return s;
}

// Morphisms

BiElement BimoduleMorphism::apply(const BiElement& x) const {
  BiElement out;
  for (const auto& [w, c] : x.terms()) {
    int dp = source->base->degree(w.left);
    out.add(act(Element(w.left), values.at(static_cast<std::size_t>(w.gen)), Element(w.right)),
            c * sign(degree * dp));
  }
  return out;
}

std::vector<std::pair<int, BiElement>> BimoduleMorphism::closedness_residual() const {
  std::vector<std::pair<int, BiElement>> out;
  for (std::size_t g = 0; g < source->gens.size(); ++g) {
    BiElement r = bimodule_differential(*target, values[g]);
    r.add(apply(source->diff[g]), -sign(degree));
    if (!r.is_zero()) out.emplace_back(static_cast<int>(g), std::move(r));
  }
  return out;
}

BimoduleMorphism zero_morphism(std::shared_ptr<const FreeBimodule> s,
                               std::shared_ptr<const FreeBimodule> t, int degree) {
  BimoduleMorphism f;
  f.values.resize(s->gens.size());
  f.source = std::move(s);
  f.target = std::move(t);
  f.degree = degree;
  return f;
}

// Resolution

BiElement telescope(const Resolution& r, const Path& p) {
  BiElement out;
  const auto& q = r.module.base->quiver();
  int prefix = 0;
  for (std::size_t i = 0; i < p.length(); ++i) {
    ArrowId a = p.arrows[i];
    out.add(BiWord{subpath(q, p, 0, i), r.rho[static_cast<std::size_t>(a)],
                   subpath(q, p, i + 1, p.length())},
            sign(prefix));
    prefix += q.arrow(a).degree;
  }
  return out;
}

Resolution cellular_resolution(BasePtr A) {
  Resolution r;
  r.module.base = A;
  const auto& q = A->quiver();
  for (VertexId v = 0; v < static_cast<VertexId>(q.vertex_count()); ++v) {
    r.omega.push_back(r.module.add_generator({"omega_" + q.vertex_name(v), v, v, 0, 0, 0}));
    r.augmentation.emplace_back(Path::idempotent(v));
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(q.arrow_count()); ++a) {
    const auto& ar = q.arrow(a);
    auto ua = static_cast<std::size_t>(a);
    r.rho.push_back(r.module.add_generator(
        {"rho_" + ar.name, ar.source, ar.target, ar.degree - 1, A->arrow_weight[ua], A->arrow_length[ua]}));
    r.augmentation.emplace_back();
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(q.arrow_count()); ++a) {
    const auto& ar = q.arrow(a);
    Path pa = Path::arrow(q, a);
    BiElement d;
    d.add(BiWord{pa, r.omega[static_cast<std::size_t>(ar.target)], Path::idempotent(ar.target)}, 1);
    d.add(BiWord{Path::idempotent(ar.source), r.omega[static_cast<std::size_t>(ar.source)], pa}, -1);
    for (const auto& [p, c] : A->pres.diff_of(a).terms()) d.add(telescope(r, p), -c);
    r.module.diff[static_cast<std::size_t>(r.rho[static_cast<std::size_t>(a)])] = std::move(d);
  }
  return r;
}

Element augment(const Resolution& r, const BiElement& x) {
  Element out;
  for (const auto& [w, c] : x.terms())
    out.add(multiply(multiply(Element(w.left), r.augmentation[static_cast<std::size_t>(w.gen)]),
                     Element(w.right)),
            c);
  return out;
}

// Dual, shift, cone, base change

FreeBimodule dual_bimodule(const FreeBimodule& X, int weight_offset, int length_offset,
                           const std::string& suffix) {
  FreeBimodule D;
  D.base = X.base;
  for (const auto& g : X.gens)
    D.add_generator({g.name + suffix, g.right, g.left, -g.degree, weight_offset - g.weight,
                     length_offset - g.length});
  // Transpose: a term c.(p h q) of d(g) contributes to d(h*) the word q g* p.
  for (std::size_t g = 0; g < X.gens.size(); ++g) {
    for (const auto& [w, c] : X.diff[g].terms()) {
      int dp = X.base->degree(w.left);
      int dq = X.base->degree(w.right);
      int dh = X.gen(w.gen).degree;
      int e = 1 + dh + dp * dq;
      D.diff[static_cast<std::size_t>(w.gen)].add(BiWord{w.right, static_cast<int>(g), w.left},
                                                  c * sign(e));
    }
  }
  return D;
}

FreeBimodule shift(const FreeBimodule& X, int k, const std::string& prefix) {
  FreeBimodule S;
  S.base = X.base;
  for (const auto& g : X.gens) {
    Generator h = g;
    h.name = prefix + g.name;
    h.degree = g.degree - k;
    S.add_generator(h);
  }
  for (std::size_t g = 0; g < X.gens.size(); ++g)
    for (const auto& [w, c] : X.diff[g].terms())
      S.diff[g].add(w, c * sign(k + k * X.base->degree(w.left)));
  return S;
}

FreeBimodule cone(const BimoduleMorphism& f, const std::string& prefix) {
  if (f.degree != 0) throw Error("cone of a morphism of nonzero degree");
  const auto& X = *f.source;
  const auto& Y = *f.target;
  FreeBimodule C;
  C.base = Y.base;
  const int off = static_cast<int>(X.gens.size());
  for (const auto& g : X.gens) {
    Generator h = g;
    h.name = prefix + g.name;
    h.degree = g.degree - 1;
    C.add_generator(h);
  }
  for (std::size_t g = 0; g < Y.gens.size(); ++g) C.add_generator(Y.gens[g]);
  for (std::size_t g = 0; g < X.gens.size(); ++g) {
    for (const auto& [w, c] : X.diff[g].terms())
      C.diff[g].add(w, -c * sign(X.base->degree(w.left)));
    for (const auto& [w, c] : f.values[g].terms())
      C.diff[g].add(BiWord{w.left, w.gen + off, w.right}, c);
  }
  for (std::size_t g = 0; g < Y.gens.size(); ++g)
    for (const auto& [w, c] : Y.diff[g].terms())
      C.diff[g + static_cast<std::size_t>(off)].add(BiWord{w.left, w.gen + off, w.right}, c);
  return C;
}

FreeBimodule base_change(const FreeBimodule& X, BasePtr B) {
  const auto& old = X.base->quiver();
  const auto& q = B->quiver();
  if (old.vertices() != q.vertices() || old.arrow_count() > q.arrow_count())
    throw Error("base change to an unrelated quiver");
  for (std::size_t a = 0; a < old.arrow_count(); ++a)
    if (!(old.arrows()[a] == q.arrows()[a])) throw Error("base change to an unrelated quiver");
  FreeBimodule Y = X;
  Y.base = std::move(B);
  return Y;
}

Theta inverse_dualizing_theta(BasePtr A, int n, int top) {
  if (n < 1) throw Error("n must be positive");
  Resolution r = cellular_resolution(A);
  int K = top;
  if (K <= 0) {
    K = 1;
    for (int l : A->arrow_length) K = std::max(K, l + 1);
  }
  Theta t;
  t.module = shift(dual_bimodule(r.module, 1, K), n - 1, "");
  const auto& q = A->quiver();
  for (std::size_t v = 0; v < q.vertex_count(); ++v) {
    t.loop.push_back(r.omega[v]);
    t.module.gens[static_cast<std::size_t>(r.omega[v])].name = "t_" + q.vertex_name(static_cast<VertexId>(v));
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    t.bar.push_back(r.rho[a]);
    t.module.gens[static_cast<std::size_t>(r.rho[a])].name = q.arrows()[a].name + "*";
  }
  return t;
}

// Slices

std::vector<BiWord> slice_words(const FreeBimodule& X, const PathCatalog& cat, VertexId x,
                                VertexId y, int length, std::optional<int> weight) {
  std::vector<BiWord> out;
  for (std::size_t g = 0; g < X.gens.size(); ++g) {
    const auto& G = X.gens[g];
    int rest = length - G.length;
    if (rest < 0) continue;
    if (rest > cat.max_length()) throw WindowUnbounded("path catalog too short for slice");
    for (int lp = 0; lp <= rest; ++lp)
      for (const auto& p : cat.paths(x, G.left, lp))
        for (const auto& q : cat.paths(G.right, y, rest - lp)) {
          BiWord w{p, static_cast<int>(g), q};
          if (weight && X.weight(w) != *weight) continue;
          out.push_back(std::move(w));
        }
  }
  return out;
}

BimoduleSlice bimodule_slice(const FreeBimodule& X, const PathCatalog& cat, VertexId x, VertexId y,
                             int length, std::optional<int> weight) {
  BimoduleSlice s;
  for (auto& w : slice_words(X, cat, x, y, length, weight)) {
    int deg = X.degree(w);
    s.builder.add(deg, std::move(w));
  }
  s.builder.finalize();
  s.complex = s.builder.build([&](const BiWord& w) {
    std::vector<std::pair<BiWord, Scalar>> img;
    for (const auto tmp3 = bimodule_differential(X, BiElement(w)); const auto& [u, c] : tmp3.terms()) img.emplace_back(u, c);
    return img;
  });
  return s;
}

std::optional<BiElement> solve_preimage(const FreeBimodule& X, const PathCatalog& cat,
                                        const BiElement& target) {
  if (target.is_zero()) return BiElement{};
  const BiWord& w0 = target.terms().begin()->first;
  int deg = X.degree(w0);
  std::optional<int> wt;
  if (X.base->weight_graded) wt = X.weight(w0);
  auto s = bimodule_slice(X, cat, w0.left.source, w0.right.target, X.length(w0), wt);
  std::vector<std::pair<BiWord, Scalar>> terms(target.terms().begin(), target.terms().end());
  SparseVector rhs = to_vector(s.builder, deg, terms);
  auto sol = solve_linear(s.complex.d_at(deg - 1), rhs);
  if (!sol) return std::nullopt;
  BiElement out;
  const auto& keys = s.builder.basis().at(deg - 1);
  for (const auto& [i, c] : *sol) out.add(keys[i], c);
  return out;
}

GradedComplex augmented_slice(const Resolution& r, const PathCatalog& cat, VertexId x, VertexId y,
                              int length) {
  const auto& X = r.module;
  using Key = std::pair<int, BiWord>;
  ComplexBuilder<Key> b;
  for (auto& w : slice_words(X, cat, x, y, length, std::nullopt)) {
    int deg = X.degree(w) - 1;
    b.add(deg, Key{0, std::move(w)});
  }
  for (const auto& p : cat.paths(x, y, length))
    b.add(X.base->degree(p), Key{1, BiWord{p, -1, Path::idempotent(y)}});
  b.finalize();
  return b.build([&](const Key& k) {
    std::vector<std::pair<Key, Scalar>> img;
    if (k.first == 1) {
      for (const auto tmp4 = differential(X.base->pres, k.second.left); const auto& [p, c] : tmp4.terms())
        img.emplace_back(Key{1, BiWord{p, -1, Path::idempotent(y)}}, c);
      return img;
    }
    const BiWord& w = k.second;
    for (const auto tmp5 = bimodule_differential(X, BiElement(w)); const auto& [u, c] : tmp5.terms())
      img.emplace_back(Key{0, u}, -c);
    for (const auto tmp6 = augment(r, BiElement(w)); const auto& [p, c] : tmp6.terms())
      img.emplace_back(Key{1, BiWord{p, -1, Path::idempotent(y)}}, c);
    return img;
  });
}

// Tensor over the enveloping category

void env_add(EnvElement& x, const EnvWord& w, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = x.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

void env_add_normalized(EnvElement& out, const FreeBimodule& X, const GradedBase& M,
                        const BiWord& w, const Path& u, const Scalar& c) {
  auto qu = concat(w.right, u);
  if (!qu) return;
  auto qup = concat(*qu, w.left);
  if (!qup) return;
  int dp = M.degree(w.left);
  int e = dp * (X.gen(w.gen).degree + M.degree(w.right) + M.degree(u));
  env_add(out, EnvWord{w.gen, *qup}, c * sign(e));
}

EnvElement env_differential(const FreeBimodule& X, const GradedBase& M, const EnvElement& x) {
  EnvElement out;
  for (const auto& [w, c] : x) {
    for (const auto& [t, a] : X.diff[static_cast<std::size_t>(w.gen)].terms())
      env_add_normalized(out, X, M, t, w.path, c * a);
    int s = sign(X.gen(w.gen).degree);
    for (const auto tmp7 = differential(M.pres, w.path); const auto& [p, a] : tmp7.terms())
      env_add(out, EnvWord{w.gen, p}, c * a * s);
  }
  return out;
}

int env_degree(const FreeBimodule& X, const GradedBase& M, const EnvWord& w) {
  return X.gen(w.gen).degree + M.degree(w.path);
}

std::vector<EnvWord> env_slice_words(const FreeBimodule& X, const GradedBase& M,
                                     const PathCatalog& cat, int length, std::optional<int> weight) {
  std::vector<EnvWord> out;
  for (std::size_t g = 0; g < X.gens.size(); ++g) {
    const auto& G = X.gens[g];
    int rest = length - G.length;
    if (rest < 0) continue;
    if (rest > cat.max_length()) throw WindowUnbounded("path catalog too short for slice");
    for (const auto& u : cat.paths(G.right, G.left, rest))
      if (!weight || G.weight + M.weight(u) == *weight) out.push_back(EnvWord{static_cast<int>(g), u});
  }
  return out;
}

EnvSlice env_slice(const FreeBimodule& X, const GradedBase& M, const PathCatalog& cat, int length,
                   std::optional<int> weight) {
  EnvSlice s;
  for (auto& w : env_slice_words(X, M, cat, length, weight)) {
    int deg = env_degree(X, M, w);
    s.builder.add(deg, std::move(w));
  }
  s.builder.finalize();
  s.complex = s.builder.build([&](const EnvWord& w) {
    EnvElement x;
    env_add(x, w, 1);
    auto dx = env_differential(X, M, x);
    return std::vector<std::pair<EnvWord, Scalar>>(dx.begin(), dx.end());
  });
  return s;
}

namespace {

void pair_add(EnvPairElement& x, const EnvPairWord& w, const Scalar& c) {
  if (c == 0) return;
  auto [it, fresh] = x.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

// (p g q) (x) y  ->  sign . g (x) (q y p)
void pair_add_normalized(EnvPairElement& out, const FreeBimodule& X, const FreeBimodule& Y,
                         const BiWord& w, const BiWord& y, const Scalar& c) {
  auto left = concat(w.right, y.left);
  auto right = concat(y.right, w.left);
  if (!left || !right) return;
  int dp = X.base->degree(w.left);
  int e = dp * (X.gen(w.gen).degree + X.base->degree(w.right) + Y.degree(y));
  pair_add(out, EnvPairWord{w.gen, BiWord{*left, y.gen, *right}}, c * sign(e));
}

}  // namespace

EnvPairElement env_pair_differential(const FreeBimodule& X, const FreeBimodule& Y,
                                     const EnvPairElement& x) {
  EnvPairElement out;
  for (const auto& [w, c] : x) {
    for (const auto& [t, a] : X.diff[static_cast<std::size_t>(w.gen)].terms())
      pair_add_normalized(out, X, Y, t, w.rest, c * a);
    int s = sign(X.gen(w.gen).degree);
    for (const auto tmp8 = bimodule_differential(Y, BiElement(w.rest)); const auto& [u, a] : tmp8.terms())
      pair_add(out, EnvPairWord{w.gen, u}, c * a * s);
  }
  return out;
}

EnvElement env_pair_augment(const FreeBimodule& X, const Resolution& Y, const EnvPairElement& x) {
  (void)X;
  EnvElement out;
  for (const auto& [w, c] : x)
    for (const auto tmp9 = augment(Y, BiElement(w.rest)); const auto& [p, a] : tmp9.terms()) env_add(out, EnvWord{w.gen, p}, c * a);
  return out;
}

}  // namespace cyforge
