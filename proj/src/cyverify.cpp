#include "cyforge/cyverify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

#include "cyforge/errors.hpp"
#include "cyforge/parallel.hpp"

namespace cyforge {

namespace {

struct Triplets {
  std::vector<std::tuple<std::size_t, std::size_t, Scalar>> entries;
  std::size_t rows = 0;
  std::size_t cols = 0;
  void add(std::size_t r, std::size_t c, const Scalar& v) {
    entries.emplace_back(r, c, v);
    rows = std::max(rows, r + 1);
  }
  SparseMatrix matrix() const {
    SparseMatrix m(rows, cols);
    for (const auto& [r, c, v] : entries) m.add(r, c, v);
    return m;
  }
};

template <class Key>
std::size_t index_of(std::map<Key, std::size_t>& m, const Key& k) {
  auto [it, fresh] = m.emplace(k, m.size());
  return it->second;
}

int pA_dual_gen(const Theta& th, const Resolution& pA, int h) {
  for (std::size_t v = 0; v < pA.omega.size(); ++v)
    if (pA.omega[v] == h) return th.loop[v];
  for (std::size_t a = 0; a < pA.rho.size(); ++a)
    if (pA.rho[a] == h) return th.bar[a];
  throw Error("generator outside the resolution");
}

std::optional<int> slice_weight(const FreeBimodule& X, int w) {
  if (X.base->weight_graded) return w;
  return std::nullopt;
}

std::vector<std::optional<int>> weights_in(const GradedBase& b, const Window& w) {
  std::vector<std::optional<int>> out;
  if (!b.weight_graded) {
    out.emplace_back(std::nullopt);
    return out;
  }
  for (int k = 0; k <= w.weight_max; ++k) out.emplace_back(k);
  return out;
}

BlockReport merge(std::vector<BlockReport> parts) {
  BlockReport r;
  for (auto& p : parts) {
    r.ok = r.ok && p.ok;
    r.blocks += p.blocks;
    r.witnesses.insert(r.witnesses.end(), p.witnesses.begin(), p.witnesses.end());
  }
  return r;
}

}  // namespace

// Casimir element and the canonical class

CasimirElement casimir_element(const Theta& theta, const Resolution& pA) {
  const auto& X = theta.module;
  const auto& Y = pA.module;
  const std::size_t ng = Y.gens.size();
  std::vector<EnvPairWord> words(ng);
  for (std::size_t h = 0; h < ng; ++h) {
    const auto& G = Y.gens[h];
    words[h] = EnvPairWord{pA_dual_gen(theta, pA, static_cast<int>(h)),
                           BiWord{Path::idempotent(G.left), static_cast<int>(h), Path::idempotent(G.right)}};
  }
  std::vector<bool> fixed(ng, false);
  for (int g : pA.omega) fixed[static_cast<std::size_t>(g)] = true;
  std::map<EnvPairWord, std::size_t> rows;
  std::vector<std::size_t> col(ng, 0);
  std::size_t ncols = 0;
  for (std::size_t h = 0; h < ng; ++h)
    if (!fixed[h]) col[h] = ncols++;
  Triplets m;
  m.cols = ncols;
  SparseVector rhs;
  for (std::size_t h = 0; h < ng; ++h) {
    EnvPairElement e;
    e.emplace(words[h], 1);
    for (const auto& [w, c] : env_pair_differential(X, Y, e)) {
      std::size_t r = index_of(rows, w);
      if (fixed[h]) {
        SparseVector t;
        t.emplace(r, -c);
        axpy(rhs, 1, t);
      } else {
        m.add(r, col[h], c);
      }
    }
  }
  m.rows = std::max(m.rows, rows.size());
  std::optional<SparseVector> sol = SparseVector{};
  if (!rhs.empty() || ncols > 0) sol = solve_linear(m.matrix(), rhs);
  if (!sol) throw SolveFailed("no Casimir cycle with unit vertex coefficients");
  CasimirElement out;
  for (std::size_t h = 0; h < ng; ++h) {
    Scalar c = 1;
    if (!fixed[h]) {
      auto it = sol->find(col[h]);
      c = it == sol->end() ? Scalar(0) : it->second;
    }
    if (c != 0) out.resolved.emplace(words[h], c);
  }
  if (!env_pair_differential(X, Y, out.resolved).empty()) throw SolveFailed("Casimir element is not a cycle");
  out.element = env_pair_augment(X, pA, out.resolved);
  for (std::size_t v = 0; v < theta.loop.size(); ++v) {
    auto it = out.element.find(EnvWord{theta.loop[v], Path::idempotent(static_cast<VertexId>(v))});
    out.loop_coefficient.push_back(it == out.element.end() ? Scalar(0) : it->second);
  }
  return out;
}

CasimirElement casimir_element(const CompletionPresentation& B) {
  return casimir_element(B.theta, cellular_resolution(B.a));
}

HomologyClass casimir_class(const CompletionPresentation& B, const CasimirElement& c) {
  HomologyClass h;
  h.kind = HomologyKind::HochschildReduced;
  h.degree = -B.n;
  h.weight = 1;
  for (const auto& [w, a] : c.element) {
    PeriodicKey k{1, w.gen, w.path};
    h.length = key_length(B, k);
    h.representative.emplace(k, a);
  }
  return h;
}

HomologyClass canonical_class(const CompletionPresentation& B, const CasimirElement& c) {
  HomologyClass h;
  h.kind = HomologyKind::CyclicReduced;
  h.degree = 1 - B.n;
  h.weight = 1;
  const auto& q = B.b->quiver();
  for (std::size_t v = 0; v < B.theta.loop.size(); ++v) {
    if (c.loop_coefficient[v] == 0) continue;
    ArrowId t = B.arrow_of_gen[static_cast<std::size_t>(B.theta.loop[v])];
    PeriodicKey k{0, -1, Path::arrow(q, t)};
    h.length = key_length(B, k);
    h.representative.emplace(k, c.loop_coefficient[v]);
  }
  if (!periodic_differential(B, h.representative, 0).empty())
    throw NotACycle("canonical class is not a cycle of the totalization");
  return h;
}

// B (x)_A B

void tensor_add(TensorElement& x, const CompletionPresentation& B, const Path& p, const Path& q,
                const Scalar& c) {
  if (c == 0) return;
  const auto& Q = B.b->quiver();
  std::size_t cut = p.length();
  while (cut > 0 && !B.is_theta_arrow(p.arrows[cut - 1])) --cut;
  TensorWord w{subpath(Q, p, 0, cut), *concat(subpath(Q, p, cut, p.length()), q)};
  if (cut == 0) w.left = Path::idempotent(p.source);
  auto [it, fresh] = x.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

// Resolution of B

BimoduleResolution resolve_completion(const CompletionPresentation& B) {
  BimoduleResolution R;
  auto pA = cellular_resolution(B.a);
  R.theta = std::make_shared<FreeBimodule>(base_change(B.theta.module, B.b));
  R.pa = std::make_shared<FreeBimodule>(base_change(pA.module, B.b));
  const auto& T = *R.theta;
  const auto& P = *R.pa;
  const auto& q = B.b->quiver();
  for (const auto& g : T.gens) R.top = std::max(R.top, g.length);
  PathCatalog cat(*B.b, R.top);

  const std::size_t ng = T.gens.size();
  std::vector<std::optional<BiElement>> F(ng);
  auto apply_F = [&](const BiElement& x) {
    BiElement out;
    for (const auto& [w, c] : x.terms())
      out.add(act(Element(w.left), *F[static_cast<std::size_t>(w.gen)], Element(w.right)), c);
    return out;
  };
  auto augment_B = [&](const BiElement& x) {
    TensorElement out;
    for (const auto& [w, c] : x.terms())
      if (P.gen(w.gen).degree == 0 && P.gen(w.gen).length == 0 &&
          std::find(pA.omega.begin(), pA.omega.end(), w.gen) != pA.omega.end())
        tensor_add(out, B, w.left, w.right, c);
    return out;
  };

  std::size_t done = 0;
  while (done < ng) {
    std::size_t before = done;
    for (std::size_t g = 0; g < ng; ++g) {
      if (F[g]) continue;
      bool ready = true;
      for (const auto& [w, c] : T.diff[g].terms())
        if (!F[static_cast<std::size_t>(w.gen)]) ready = false;
      if (!ready) continue;
      const auto& G = T.gens[g];
      Path h = Path::arrow(q, B.arrow_of_gen[g]);
      BiElement Y(BiWord{h, pA.omega[G.right], Path::idempotent(G.right)});
      Y.add(BiWord{Path::idempotent(G.left), pA.omega[G.left], h}, -1);
      BiElement target = apply_F(T.diff[g]) - bimodule_differential(P, Y);
      BiElement X;
      if (!target.is_zero()) {
        auto s = bimodule_slice(P, cat, G.left, G.right, G.length, slice_weight(P, G.weight));
        const auto basis = s.builder.basis();
        auto it = basis.find(G.degree);
        if (it == basis.end()) throw SolveFailed("no room for the lift on " + G.name);
        const auto& keys = it->second;
        Triplets m;
        m.cols = keys.size();
        std::map<TensorWord, std::size_t> eps_rows;
        const std::size_t n1 = s.complex.dim_at(G.degree + 1);
        const SparseMatrix d = s.complex.d_at(G.degree);
        for (std::size_t r = 0; r < d.rows(); ++r)
          for (const auto& [c, v] : d.row(r)) m.add(r, c, v);
        for (std::size_t j = 0; j < keys.size(); ++j)
          for (const auto& [tw, c] : augment_B(BiElement(keys[j])))
            m.add(n1 + index_of(eps_rows, tw), j, c);
        m.rows = std::max(m.rows, n1 + eps_rows.size());
        std::vector<std::pair<BiWord, Scalar>> terms(target.terms().begin(), target.terms().end());
        SparseVector rhs = to_vector(s.builder, G.degree + 1, terms);
        auto sol = solve_linear(m.matrix(), rhs);
        if (!sol) throw SolveFailed("no lift of b' on " + G.name);
        for (const auto& [j, c] : *sol) X.add(keys[j], c);
      }
      F[g] = Y + X;
      ++done;
    }
    if (done == before) throw SolveFailed("theta differential is not triangular");
  }
  R.lift.source = R.theta;
  R.lift.target = R.pa;
  R.lift.degree = 0;
  for (auto& f : F) R.lift.values.push_back(std::move(*f));
  if (!R.lift.is_closed()) throw SolveFailed("lift of b' is not closed");
  R.module = std::make_shared<FreeBimodule>(cone(R.lift, "s"));
  return R;
}

std::string BlockWitness::describe(const GradedQuiver& q) const {
  std::ostringstream s;
  s << "block " << q.vertex_name(x) << "->" << q.vertex_name(y) << " length " << length;
  if (weight) s << " weight " << *weight;
  s << " degree " << degree << ": dim " << dim;
  return s.str();
}

// Row exactness of the bimodule sequence

BlockReport check_exact_sequence(const CompletionPresentation& B, const Window& w) {
  const auto& base = *B.b;
  FreeBimodule T = base_change(B.theta.module, B.b);
  PathCatalog cat(base, w.len_max);
  const int nv = static_cast<int>(base.quiver().vertex_count());
  struct Block {
    VertexId x, y;
    int length;
    std::optional<int> weight;
  };
  std::vector<Block> blocks;
  for (VertexId x = 0; x < nv; ++x)
    for (VertexId y = 0; y < nv; ++y)
      for (int l = 0; l <= w.len_max; ++l)
        for (auto wt : weights_in(base, w)) blocks.push_back({x, y, l, wt});
  std::vector<BlockReport> parts(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t bi) {
    const auto& bl = blocks[bi];
    auto wt_ok = [&](int v) { return !bl.weight || v == *bl.weight; };
    std::map<int, std::vector<BiWord>> c2;
    for (auto& word : slice_words(T, cat, bl.x, bl.y, bl.length, bl.weight))
      c2[T.degree(word)].push_back(word);
    std::map<int, std::vector<TensorWord>> c1;
    for (int l1 = 0; l1 <= bl.length; ++l1)
      for (VertexId v = 0; v < nv; ++v)
        for (const auto& p : cat.paths(bl.x, v, l1)) {
          if (!p.is_idempotent() && !B.is_theta_arrow(p.arrows.back())) continue;
          for (const auto& r : cat.paths(v, bl.y, bl.length - l1))
            if (wt_ok(base.weight(p) + base.weight(r)))
              c1[base.degree(p) + base.degree(r)].push_back(TensorWord{p, r});
        }
    std::map<int, std::vector<Path>> c0;
    for (const auto& p : cat.paths(bl.x, bl.y, bl.length))
      if (wt_ok(base.weight(p))) c0[base.degree(p)].push_back(p);
    std::set<int> degs;
    for (const auto& [k, v] : c2) degs.insert(k);
    for (const auto& [k, v] : c1) degs.insert(k);
    for (const auto& [k, v] : c0) degs.insert(k);
    BlockReport& rep = parts[bi];
    const auto& q = base.quiver();
    for (int k : degs) {
      if (k < w.deg_min) continue;
      ++rep.blocks;
      auto& W2 = c2[k];
      auto& W1 = c1[k];
      auto& W0 = c0[k];
      std::sort(W1.begin(), W1.end());
      std::sort(W0.begin(), W0.end());
      auto idx1 = [&](const TensorWord& t) {
        return static_cast<std::size_t>(std::lower_bound(W1.begin(), W1.end(), t) - W1.begin());
      };
      auto idx0 = [&](const Path& p) {
        return static_cast<std::size_t>(std::lower_bound(W0.begin(), W0.end(), p) - W0.begin());
      };
      SparseMatrix bp(W1.size(), W2.size()), mu(W0.size(), W1.size());
      for (std::size_t j = 0; j < W2.size(); ++j) {
        const auto& word = W2[j];
        Path g = Path::arrow(q, B.arrow_of_gen[static_cast<std::size_t>(word.gen)]);
        TensorElement img;
        tensor_add(img, B, *concat(word.left, g), word.right, 1);
        tensor_add(img, B, word.left, *concat(g, word.right), -1);
        for (const auto& [t, c] : img) bp.add(idx1(t), j, c);
      }
      for (std::size_t j = 0; j < W1.size(); ++j) mu.add(idx0(*concat(W1[j].left, W1[j].right)), j, 1);
      std::size_t rb = rank(bp), rm = rank(mu);
      bool zero = (mu * bp).is_zero();
      std::size_t defect = (W2.size() - rb) + (W1.size() - rb - std::min(W1.size() - rb, rm)) + (W0.size() - rm);
      if (!zero || rb != W2.size() || rm != W0.size() || rb + rm != W1.size()) {
        rep.ok = false;
        rep.witnesses.push_back({bl.x, bl.y, bl.length, bl.weight, k, std::max<std::size_t>(defect, 1)});
      }
    }
  });
  return merge(std::move(parts));
}

// The nondegeneracy morphism

BimoduleMorphism nondegeneracy_morphism(const CompletionPresentation& B, const BimoduleResolution& R,
                                        const HomologyClass& hh) {
  const auto& Rm = *R.module;
  auto S = std::make_shared<FreeBimodule>(shift(dual_bimodule(Rm, 1, R.top), B.n, "S"));
  const std::size_t nth = R.theta->gens.size();
  std::vector<Scalar> pin(B.theta.loop.size());
  bool any = false;
  for (std::size_t v = 0; v < pin.size(); ++v) {
    auto it = hh.representative.find(
        PeriodicKey{1, B.theta.loop[v], Path::idempotent(static_cast<VertexId>(v))});
    if (it != hh.representative.end()) pin[v] = it->second;
    any = any || pin[v] != 0;
  }
  if (!any) return zero_morphism(S, R.module, 0);

  auto pA = cellular_resolution(B.a);
  int maxlen = 0;
  for (const auto& g : S->gens) maxlen = std::max(maxlen, g.length);
  PathCatalog cat(*B.b, maxlen);
  const std::size_t ng = S->gens.size();
  std::vector<std::vector<BiWord>> unknowns(ng);
  std::vector<std::size_t> offset(ng + 1, 0);
  for (std::size_t i = 0; i < ng; ++i) {
    const auto& G = S->gens[i];
    for (auto& w : slice_words(Rm, cat, G.left, G.right, G.length, slice_weight(Rm, G.weight)))
      if (Rm.degree(w) == G.degree) unknowns[i].push_back(std::move(w));
    std::sort(unknowns[i].begin(), unknowns[i].end());
    offset[i + 1] = offset[i] + unknowns[i].size();
  }
  using RowKey = std::pair<std::size_t, BiWord>;
  std::map<RowKey, std::size_t> rows;
  Triplets m;
  m.cols = offset[ng];
  for (std::size_t i = 0; i < ng; ++i) {
    for (std::size_t j = 0; j < unknowns[i].size(); ++j) {
      const BiElement dw = bimodule_differential(Rm, BiElement(unknowns[i][j]));
      for (const auto& [u, c] : dw.terms()) m.add(index_of(rows, RowKey{i, u}), offset[i] + j, c);
    }
    for (const auto& [t, c] : S->diff[i].terms()) {
      const auto h = static_cast<std::size_t>(t.gen);
      for (std::size_t j = 0; j < unknowns[h].size(); ++j) {
        const BiElement img = act(Element(t.left), BiElement(unknowns[h][j]), Element(t.right));
        for (const auto& [u, a] : img.terms()) m.add(index_of(rows, RowKey{i, u}), offset[h] + j, -c * a);
      }
    }
  }
  std::size_t r = rows.size();
  SparseVector rhs;
  for (std::size_t v = 0; v < pin.size(); ++v) {
    const auto i = nth + static_cast<std::size_t>(pA.omega[v]);
    BiWord target = bare(Rm, B.theta.loop[v]);
    auto it = std::lower_bound(unknowns[i].begin(), unknowns[i].end(), target);
    if (it == unknowns[i].end() || !(*it == target)) throw SolveFailed("pinned generator outside its slice");
    m.add(r, offset[i] + static_cast<std::size_t>(it - unknowns[i].begin()), 1);
    if (pin[v] != 0) rhs.emplace(r, pin[v]);
    ++r;
  }
  m.rows = std::max(m.rows, r);
  auto sol = solve_linear(m.matrix(), rhs);
  if (!sol) throw SolveFailed("no closed morphism with the given Casimir coefficients");
  BimoduleMorphism phi;
  phi.source = S;
  phi.target = R.module;
  phi.degree = 0;
  phi.values.resize(ng);
  for (std::size_t i = 0; i < ng; ++i)
    for (std::size_t j = 0; j < unknowns[i].size(); ++j) {
      auto it = sol->find(offset[i] + j);
      if (it != sol->end()) phi.values[i].add(unknowns[i][j], it->second);
    }
  if (!phi.is_closed()) throw SolveFailed("nondegeneracy morphism is not closed");
  return phi;
}

BlockReport check_quasi_iso(const BimoduleMorphism& phi, const Window& w) {
  FreeBimodule C = cone(phi, "s");
  const auto& base = *C.base;
  PathCatalog cat(base, w.len_max);
  const int nv = static_cast<int>(base.quiver().vertex_count());
  struct Block {
    VertexId x, y;
    int length;
    std::optional<int> weight;
  };
  std::vector<Block> blocks;
  for (VertexId x = 0; x < nv; ++x)
    for (VertexId y = 0; y < nv; ++y)
      for (int l = 0; l <= w.len_max; ++l)
        for (auto wt : weights_in(base, w)) blocks.push_back({x, y, l, wt});
  std::vector<BlockReport> parts(blocks.size());
  parallel_for(blocks.size(), [&](std::size_t i) {
    const auto& bl = blocks[i];
    auto s = bimodule_slice(C, cat, bl.x, bl.y, bl.length, bl.weight);
    for (const auto& [d, n] : s.complex.cohomology()) {
      if (d < w.deg_min) continue;
      parts[i].ok = false;
      parts[i].witnesses.push_back({bl.x, bl.y, bl.length, bl.weight, d, n});
    }
    parts[i].blocks = 1;
  });
  return merge(std::move(parts));
}

// Report

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

Status overall(const std::vector<Check>& checks) {
  Status s = Status::Pass;
  for (const auto& c : checks) {
    if (c.status == Status::Fail) return Status::Fail;
    if (c.status == Status::Inconclusive) s = Status::Inconclusive;
  }
  return s;
}

namespace {

std::string join(const std::vector<std::string>& v, const std::string& sep = "; ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string dims_string(const std::vector<std::size_t>& d) {
  std::string s = "[";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
  return s + "]";
}

std::string scalar_string(const Scalar& c) { return c.get_str(); }

std::string format_periodic(const CompletionPresentation& B, const PeriodicElement& x) {
  std::vector<std::string> parts;
  for (const auto& [k, c] : x) parts.push_back(scalar_string(c) + " " + format_key(B, k));
  return parts.empty() ? "0" : join(parts, " + ");
}

template <class F>
Check guarded(const std::string& name, F&& body) {
  Check c;
  c.name = name;
  try {
    body(c);
  } catch (const WindowUnbounded& e) {
    c.status = Status::Inconclusive;
    c.summary = e.what();
  } catch (const SolveFailed& e) {
    c.status = Status::Inconclusive;
    c.summary = e.what();
  } catch (const Error& e) {
    c.status = Status::Fail;
    c.summary = e.what();
  }
  return c;
}

void report_blocks(Check& c, const BlockReport& r, const GradedQuiver& q) {
  c.details.emplace_back("blocks", std::to_string(r.blocks));
  c.details.emplace_back("nonzero_blocks", std::to_string(r.witnesses.size()));
  if (!r.witnesses.empty()) c.details.emplace_back("witness", r.witnesses.front().describe(q));
}

}  // namespace

VerificationReport verify_cy(const ParsedSpec& spec, int n, const Window& w, const std::string& sha) {
  VerificationReport rep;
  rep.spec_sha256 = sha;
  rep.n = n;
  rep.window = w;
  auto A = make_graded_base(spec.presentation);
  const bool ginz = spec.potential && !spec.potential->is_zero();
  if (ginz && n != 3) throw DegreeMismatch("potentials need n = 3");
  int top = 0;
  if (ginz)
    if (auto l = potential_length(*spec.potential); l && *l >= 2) top = *l;
  const CompletionPresentation B0 = cy_completion(A, n, top);
  const CompletionPresentation B = ginz ? ginzburg(spec.presentation, *spec.potential) : B0;
  const auto& q = B.b->quiver();

  rep.checks.push_back(guarded("validator", [&](Check& c) {
    std::vector<std::string> issues;
    for (const auto& i : audit_presentation(B.presentation())) issues.push_back(i.message);
    for (const auto& i : audit_bimodule(B.theta.module)) issues.push_back("theta: " + i);
    for (const auto& i : audit_bimodule(cellular_resolution(A).module)) issues.push_back("pA: " + i);
    c.details.emplace_back("arrows", std::to_string(q.arrow_count()));
    c.details.emplace_back("issues", std::to_string(issues.size()));
    if (!issues.empty()) {
      c.status = Status::Fail;
      c.summary = issues.front();
    } else {
      c.summary = "d^2 = 0 and degrees consistent";
    }
  }));

  rep.checks.push_back(guarded("exact-sequence", [&](Check& c) {
    auto r = check_exact_sequence(B, w);
    report_blocks(c, r, q);
    c.status = r.ok ? Status::Pass : Status::Fail;
    c.summary = r.ok ? "structural: the bimodule sequence is exact on every block" : "the bimodule sequence is not exact";
  }));

  const bool in_window = w.weight_max >= 1 && 1 - n >= w.deg_min && top <= w.len_max;
  std::optional<CasimirElement> cas;
  std::optional<HomologyClass> canon;
  rep.checks.push_back(guarded("canonical-class", [&](Check& c) {
    cas = casimir_element(B0);
    EnvElement dc = theta_differential(B0, cas->element);
    c.details.emplace_back("casimir", format_periodic(B0, casimir_class(B0, *cas).representative));
    c.details.emplace_back("casimir_cycle", dc.empty() ? "yes" : "no");
    canon = canonical_class(B0, *cas);
    c.details.emplace_back("representative", format_periodic(B0, canon->representative));
    c.details.emplace_back("degree", std::to_string(canon->degree));
    if (!dc.empty()) {
      c.status = Status::Fail;
      c.summary = "Casimir element is not a cycle";
    } else if (!in_window) {
      c.status = Status::Inconclusive;
      c.summary = "canonical class outside window";
    } else {
      c.summary = "Casimir element and canonical class are cycles";
    }
  }));

  rep.checks.push_back(guarded("exact-structure", [&](Check& c) {
    if (!canon) throw Error("no canonical class");
    auto hh = connes_B(B0, *canon);
    auto want = casimir_class(B0, *cas);
    bool same = hh.representative == want.representative;
    auto lift = negative_cyclic_lift(B0, hh.representative, w.u_order);
    bool tail = lift && lift->tail_zero();
    bool nonzero = !is_boundary(B0, want.representative, 1);
    c.details.emplace_back("connes_image", format_periodic(B0, hh.representative));
    c.details.emplace_back("matches_casimir", same ? "yes" : "no");
    c.details.emplace_back("zero_tail_lift", tail ? "yes" : "no");
    c.details.emplace_back("nonzero_class", nonzero ? "yes" : "no");
    if (!same || !tail || !nonzero) {
      c.status = Status::Fail;
      c.summary = "Casimir class is not the Connes image of the canonical class";
    } else if (!in_window) {
      c.status = Status::Inconclusive;
      c.summary = "canonical class outside window";
    } else {
      c.summary = "Casimir class = B(canonical class), lifts with zero tail";
    }
  }));

  if (ginz) {
    rep.checks.push_back(guarded("deformation-lift", [&](Check& c) {
      auto chain = potential_chain(*A, *spec.potential);
      auto pA = cellular_resolution(A);
      EnvElement small = small_model(pA, chain);
      EnvElement delta;
      for (std::size_t a = 0; a < A->quiver().arrow_count(); ++a) {
        Element r = cyclic_derivative(A->quiver(), *spec.potential, static_cast<ArrowId>(a));
        for (const auto& [p, k] : r.terms()) env_add(delta, EnvWord{pA.rho[a], p}, k);
      }
      EnvElement neg;
      for (const auto& [k, v] : delta) neg.emplace(k, -v);
      bool matches = small == delta || small == neg;
      auto lift = negative_cyclic_lift(*A, chain, w.u_order);
      c.details.emplace_back("class", std::to_string(chain.size()) + " terms");
      c.details.emplace_back("small_model_matches_deformation", matches ? "yes" : "no");
      c.details.emplace_back("u_order", std::to_string(w.u_order));
      if (!matches) {
        c.status = Status::Fail;
        c.summary = "deformation cocycle differs from the class of B(W)";
      } else if (!lift) {
        c.status = Status::Inconclusive;
        c.summary = "no lift up to u^" + std::to_string(w.u_order) + " within window";
      } else {
        c.details.emplace_back("zero_tail", lift->tail_zero() ? "yes" : "no");
        c.summary = "deformation class B(W) lifts to negative cyclic homology";
      }
    }));
  }

  rep.checks.push_back(guarded("nondegeneracy", [&](Check& c) {
    if (!cas) throw Error("no Casimir element");
    auto R = resolve_completion(B);
    auto issues = audit_bimodule(*R.module);
    if (!issues.empty()) throw InvalidComplex("resolution of B: " + issues.front());
    auto phi = nondegeneracy_morphism(B, R, casimir_class(B0, *cas));
    c.details.emplace_back("closed", phi.is_closed() ? "yes" : "no");
    auto r = check_quasi_iso(phi, w);
    report_blocks(c, r, q);
    if (!r.ok) {
      c.status = Status::Fail;
      c.summary = "cone of the nondegeneracy morphism has homology";
    } else if (!B.b->exact_length || !in_window) {
      c.status = Status::Inconclusive;
      c.summary = !in_window ? "canonical class outside window" : "lengths not exact, blocks truncated";
    } else {
      c.summary = "cone of the nondegeneracy morphism is acyclic in the window";
    }
  }));

  if (ginz) {
    rep.checks.push_back(guarded("jacobian", [&](Check& c) {
      auto h0 = h0_dimensions(*B.b, w.len_max);
      auto jac = jacobian_algebra(spec.presentation, *spec.potential, w.len_max);
      c.details.emplace_back("h0", dims_string(h0.dims));
      c.details.emplace_back("jacobian", dims_string(jac.dims));
      c.details.emplace_back("h0_total", std::to_string(h0.total()));
      c.details.emplace_back("stable", h0.stable ? "yes" : "no");
      if (h0.dims != jac.dims) {
        c.status = h0.exact ? Status::Fail : Status::Inconclusive;
        c.summary = "H0 differs from the Jacobian algebra";
      } else if (!h0.stable) {
        c.status = Status::Inconclusive;
        c.summary = "H0 not stable at len_max + 2";
      } else {
        c.summary = "H0 equals the Jacobian algebra length by length";
      }
    }));
  }

  rep.checks.push_back(guarded("homology-tables", [&](Check& c) {
    rep.homology.push_back(reduced_hochschild(B0, w));
    rep.homology.push_back(reduced_cyclic(B0, w));
    bool euler = rep.homology[0].euler_ok && rep.homology[1].euler_ok;
    bool stable = rep.homology[1].stable;
    c.details.emplace_back("euler", euler ? "yes" : "no");
    c.details.emplace_back("stable", stable ? "yes" : "no");
    if (!euler) {
      c.status = Status::Fail;
      c.summary = "Euler identity violated";
    } else if (!stable) {
      c.status = Status::Inconclusive;
      c.summary = "cyclic table changes with the column count";
    } else {
      c.summary = ginz ? "reduced tables of the undeformed completion" : "reduced tables computed";
    }
  }));

  rep.verdict = overall(rep.checks);
  return rep;
}

}  // namespace cyforge
