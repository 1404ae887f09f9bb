#include "cyforge/completion.hpp"

#include <algorithm>

#include "cyforge/errors.hpp"

namespace cyforge {

namespace {

int sign(int e) { return (e % 2 == 0) ? 1 : -1; }

void check_values(const CompletionPresentation& B, const std::vector<Element>& values) {
  const auto& th = B.theta.module;
  if (values.size() != th.gens.size()) throw DegreeMismatch("cocycle has the wrong number of values");
  const auto& q = B.a->quiver();
  for (std::size_t g = 0; g < values.size(); ++g)
    for (const auto& [p, c] : values[g].terms()) {
      if (p.source != th.gens[g].left || p.target != th.gens[g].right)
        throw DegreeMismatch("value on " + th.gens[g].name + " has wrong endpoints");
      if (degree(q, p) != th.gens[g].degree + 1)
        throw DegreeMismatch("value on " + th.gens[g].name + " has degree " +
                             std::to_string(degree(q, p)));
    }
}

std::string describe(const CompletionPresentation& B, const std::vector<std::pair<int, Element>>& r) {
  const auto& g = B.theta.module.gens[static_cast<std::size_t>(r.front().first)];
  return "residual on " + g.name + ": " + format_element(B.a->quiver(), r.front().second);
}

}  // namespace

bool DeformationClass::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Element& e) { return e.is_zero(); });
}

CompletionPresentation cy_completion(BasePtr A, int n, int top) {
  CompletionPresentation B;
  B.n = n;
  B.a = A;
  B.theta = inverse_dualizing_theta(A, n, top);
  const auto& th = B.theta.module;
  DgPresentation P = A->pres;
  std::vector<int> weight = A->arrow_weight;
  std::vector<int> length = A->arrow_length;
  const std::size_t na = A->quiver().arrow_count();
  for (std::size_t a = 0; a < na; ++a) {
    B.kind.push_back(ArrowKind::Original);
    B.origin.push_back(static_cast<int>(a));
    B.theta_gen.push_back(-1);
  }
  B.arrow_of_gen.assign(th.gens.size(), -1);
  auto add = [&](int g, ArrowKind k, int origin) {
    const auto& G = th.gen(g);
    if (G.length < 1) throw Error("theta generator " + G.name + " has nonpositive length");
    ArrowId id = P.add_arrow(G.name, G.left, G.right, G.degree);
    B.arrow_of_gen[static_cast<std::size_t>(g)] = id;
    B.kind.push_back(k);
    B.origin.push_back(origin);
    B.theta_gen.push_back(g);
    weight.push_back(G.weight);
    length.push_back(G.length);
  };
  for (std::size_t a = 0; a < na; ++a) add(B.theta.bar[a], ArrowKind::Dual, static_cast<int>(a));
  for (std::size_t v = 0; v < B.theta.loop.size(); ++v)
    add(B.theta.loop[v], ArrowKind::Loop, static_cast<int>(v));
  // theta_to_path needs arrow_of_gen only
  for (std::size_t g = 0; g < th.gens.size(); ++g)
    P.set_diff(B.arrow_of_gen[g], theta_to_path(B, th.diff[g]));
  validate_presentation(P);
  B.b = make_graded_base(std::move(P), std::move(weight), std::move(length));
  return B;
}

Element theta_to_path(const CompletionPresentation& B, const BiElement& x) {
  Element out;
  for (const auto& [w, c] : x.terms()) {
    ArrowId h = B.arrow_of_gen[static_cast<std::size_t>(w.gen)];
    Path p = w.left;
    p.arrows.push_back(h);
    p.arrows.insert(p.arrows.end(), w.right.arrows.begin(), w.right.arrows.end());
    p.target = w.right.target;
    out.add(p, c);
  }
  return out;
}

std::vector<std::pair<int, Element>> cocycle_residual(const CompletionPresentation& B,
                                                      const DeformationClass& delta) {
  const auto& th = B.theta.module;
  const auto& A = B.a->pres;
  std::vector<std::pair<int, Element>> out;
  for (std::size_t g = 0; g < th.gens.size(); ++g) {
    Element r = differential(A, delta.values[g]);
    for (const auto& [w, c] : th.diff[g].terms()) {
      Element v = multiply(multiply(Element(w.left), delta.values[static_cast<std::size_t>(w.gen)]),
                           Element(w.right));
      r.add(v, c * sign(B.a->degree(w.left)));
    }
    if (!r.is_zero()) out.emplace_back(static_cast<int>(g), std::move(r));
  }
  return out;
}

DeformationClass class_to_cocycle(const CompletionPresentation& B, const Potential& w) {
  if (B.n != 3) throw DegreeMismatch("potentials define deformations only for n = 3");
  const auto& q = B.a->quiver();
  for (const auto& a : q.arrows())
    if (a.degree != 0) throw DegreeMismatch("potential input needs degree-0 arrows, got " + a.name);
  std::vector<Element> values(B.theta.module.gens.size());
  for (std::size_t a = 0; a < q.arrow_count(); ++a)
    values[static_cast<std::size_t>(B.theta.bar[a])] = cyclic_derivative(q, w, static_cast<ArrowId>(a));
  DeformationClass d = class_to_cocycle(B, std::move(values));
  d.potential = w;
  return d;
}

DeformationClass class_to_cocycle(const CompletionPresentation& B, std::vector<Element> values) {
  check_values(B, values);
  DeformationClass d;
  d.values = std::move(values);
  auto r = cocycle_residual(B, d);
  if (!r.empty()) throw NotACycle(describe(B, r));
  return d;
}

CompletionPresentation deform(const CompletionPresentation& B, const DeformationClass& delta) {
  check_values(B, delta.values);
  auto r = cocycle_residual(B, delta);
  if (!r.empty()) throw NotClosed(describe(B, r));
  if (delta.is_zero()) return B;
  CompletionPresentation D = B;
  DgPresentation P = B.b->pres;
  for (std::size_t g = 0; g < delta.values.size(); ++g) {
    ArrowId x = B.arrow_of_gen[g];
    P.set_diff(x, P.diff_of(x) + delta.values[g]);
  }
  validate_presentation(P);
  D.b = make_graded_base(std::move(P), B.b->arrow_weight, B.b->arrow_length);
  D.deformed = true;
  return D;
}

std::optional<int> potential_length(const Potential& w) {
  std::optional<int> len;
  for (const auto& [p, c] : w.element().terms()) {
    int l = static_cast<int>(p.length());
    if (len && *len != l) return std::nullopt;
    len = l;
  }
  return len;
}

CompletionPresentation ginzburg(const DgPresentation& q, const Potential& w) {
  for (std::size_t a = 0; a < q.quiver.arrow_count(); ++a) {
    if (q.quiver.arrows()[a].degree != 0)
      throw DegreeMismatch("Ginzburg input needs degree-0 arrows, got " + q.quiver.arrows()[a].name);
    if (a < q.diff.size() && !q.diff[a].is_zero())
      throw DegreeMismatch("Ginzburg input must have zero differential");
  }
  auto A = make_graded_base(q);
  int top = 0;
  if (auto l = potential_length(w); l && *l >= 2) top = *l;
  auto B = cy_completion(A, 3, top);
  return deform(B, class_to_cocycle(B, w));
}

std::size_t JacobianResult::total() const {
  std::size_t s = 0;
  for (auto d : dims) s += d;
  return s;
}

JacobianResult jacobian_algebra(const DgPresentation& q, const Potential& w, int len_max) {
  const auto& Q = q.quiver;
  auto paths = path_basis(q, {}, static_cast<std::size_t>(std::max(len_max, 0)));
  std::map<Path, std::size_t> index;
  for (std::size_t i = 0; i < paths.size(); ++i) index[paths[i]] = i;
  SpanReducer ideal(paths.size());
  for (std::size_t a = 0; a < Q.arrow_count(); ++a) {
    Element r = cyclic_derivative(Q, w, static_cast<ArrowId>(a));
    if (r.is_zero()) continue;
    std::size_t rlen = 0;
    for (const auto& [p, c] : r.terms()) rlen = std::max(rlen, p.length());
    for (const auto& left : paths)
      for (const auto& right : paths) {
        if (left.length() + rlen + right.length() > static_cast<std::size_t>(len_max)) continue;
        Element m = multiply(multiply(Element(left), r), Element(right));
        if (m.is_zero()) continue;
        SparseVector v;
        for (const auto& [p, c] : m.terms()) v[index.at(p)] = c;
        ideal.insert(std::move(v));
      }
  }
  JacobianResult res;
  res.dims.assign(static_cast<std::size_t>(std::max(len_max, 0)) + 1, 0);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    SparseVector e;
    e[i] = 1;
    if (ideal.insert(std::move(e))) {
      res.basis.push_back(paths[i]);
      ++res.dims[paths[i].length()];
    }
  }
  return res;
}

std::size_t H0Result::total() const {
  std::size_t s = 0;
  for (auto d : dims) s += d;
  return s;
}

namespace {

std::vector<std::size_t> h0_run(const GradedBase& b, int len_max) {
  PathCatalog cat(b, len_max);
  std::vector<std::size_t> dims(static_cast<std::size_t>(len_max) + 1, 0);
  const int nv = static_cast<int>(b.quiver().vertex_count());
  auto collect = [&](int lo, int hi, int deg) {
    std::vector<Path> out;
    for (int l = lo; l <= hi; ++l)
      for (VertexId x = 0; x < nv; ++x)
        for (VertexId y = 0; y < nv; ++y)
          for (const auto& p : cat.paths(x, y, l))
            if (b.degree(p) == deg) out.push_back(p);
    return out;
  };
  auto quotient = [&](const std::vector<Path>& zero, const std::vector<Path>& minus) {
    std::map<Path, std::size_t> index;
    for (std::size_t i = 0; i < zero.size(); ++i) index[zero[i]] = i;
    SpanReducer img(zero.size());
    for (const auto& p : minus) {
      SparseVector v;
      for (const auto dp = differential(b.pres, p); const auto& [t, c] : dp.terms()) {
        auto it = index.find(t);
        if (it != index.end()) v[it->second] = c;
      }
      if (!v.empty()) img.insert(std::move(v));
    }
    for (std::size_t i = 0; i < zero.size(); ++i) {
      SparseVector e;
      e[i] = 1;
      if (img.insert(std::move(e))) ++dims[static_cast<std::size_t>(b.length(zero[i]))];
    }
  };
  if (b.exact_length) {
    for (int l = 0; l <= len_max; ++l) quotient(collect(l, l, 0), collect(l, l, -1));
  } else {
    // Terms beyond the cutoff are dropped: a truncated quotient.
    quotient(collect(0, len_max, 0), collect(0, len_max, -1));
  }
  return dims;
}

}  // namespace

H0Result h0_dimensions(const GradedBase& b, int len_max) {
  H0Result r;
  r.exact = b.exact_length;
  r.dims = h0_run(b, len_max);
  auto more = h0_run(b, len_max + 2);
  int margin = 0;
  if (!b.exact_length)
    for (const auto& d : b.pres.diff)
      for (const auto& [p, c] : d.terms()) margin = std::max(margin, b.length(p));
  for (int l = 0; l <= len_max - margin; ++l)
    if (r.dims[static_cast<std::size_t>(l)] != more[static_cast<std::size_t>(l)]) r.stable = false;
  return r;
}

}  // namespace cyforge
