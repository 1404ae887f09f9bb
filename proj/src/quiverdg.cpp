#include "cyforge/quiverdg.hpp"

#include <algorithm>
#include <functional>

#include "cyforge/errors.hpp"

namespace cyforge {

VertexId GradedQuiver::add_vertex(const std::string& name) {
  if (vertex_index_.count(name)) throw Error("duplicate vertex '" + name + "'");
  auto id = static_cast<VertexId>(vertices_.size());
  vertices_.push_back(name);
  out_.emplace_back();
  vertex_index_.emplace(name, id);
  return id;
}

ArrowId GradedQuiver::add_arrow(const std::string& name, VertexId source, VertexId target,
                                int degree) {
  if (arrow_index_.count(name)) throw DuplicateArrow("duplicate arrow '" + name + "'");
  auto nv = static_cast<VertexId>(vertices_.size());
  if (source < 0 || source >= nv || target < 0 || target >= nv)
    throw UnknownVertex("arrow '" + name + "' has an undeclared endpoint");
  auto id = static_cast<ArrowId>(arrows_.size());
  arrows_.push_back(Arrow{name, source, target, degree});
  out_[static_cast<std::size_t>(source)].push_back(id);
  arrow_index_.emplace(name, id);
  return id;
}

std::optional<VertexId> GradedQuiver::find_vertex(std::string_view name) const {
  auto it = vertex_index_.find(name);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ArrowId> GradedQuiver::find_arrow(std::string_view name) const {
  auto it = arrow_index_.find(name);
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

Path Path::arrow(const GradedQuiver& q, ArrowId a) {
  const auto& ar = q.arrow(a);
  return Path{ar.source, ar.target, {a}};
}

std::strong_ordering Path::operator<=>(const Path& o) const {
  if (auto c = arrows.size() <=> o.arrows.size(); c != 0) return c;
  if (auto c = source <=> o.source; c != 0) return c;
  if (auto c = arrows <=> o.arrows; c != 0) return c;
  return target <=> o.target;
}

int degree(const GradedQuiver& q, const Path& p) {
  int d = 0;
  for (ArrowId a : p.arrows) d += q.arrow(a).degree;
  return d;
}

std::optional<Path> concat(const Path& x, const Path& y) {
  if (x.target != y.source) return std::nullopt;
  Path out{x.source, y.target, x.arrows};
  out.arrows.insert(out.arrows.end(), y.arrows.begin(), y.arrows.end());
  return out;
}

Path subpath(const GradedQuiver& q, const Path& p, std::size_t begin, std::size_t end) {
  if (begin == end) {
    VertexId v = begin < p.length() ? q.arrow(p.arrows[begin]).source : p.target;
    return Path::idempotent(v);
  }
  Path out;
  out.arrows.assign(p.arrows.begin() + static_cast<std::ptrdiff_t>(begin),
                    p.arrows.begin() + static_cast<std::ptrdiff_t>(end));
  out.source = q.arrow(out.arrows.front()).source;
  out.target = q.arrow(out.arrows.back()).target;
  return out;
}

Element::Element(Path p, Scalar c) { add(p, c); }

void Element::add(const Path& p, const Scalar& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(p, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Element::add(const Element& x, const Scalar& c) {
  if (c == 0) return;
  for (const auto& [p, v] : x.terms_) add(p, c * v);
}

Scalar Element::coefficient(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Element Element::operator+(const Element& o) const {
  Element r = *this;
  r.add(o);
  return r;
}

Element Element::operator-(const Element& o) const {
  Element r = *this;
  r.add(o, -1);
  return r;
}

Element Element::operator-() const {
  Element r;
  r.add(*this, -1);
  return r;
}

Element operator*(const Scalar& c, const Element& x) {
  Element r;
  r.add(x, c);
  return r;
}

Element multiply(const Element& x, const Element& y) {
  Element out;
  for (const auto& [p, a] : x.terms())
    for (const auto& [q, b] : y.terms())
      if (auto pq = concat(p, q)) out.add(*pq, a * b);
  return out;
}

std::optional<int> homogeneous_degree(const GradedQuiver& q, const Element& x) {
  std::optional<int> d;
  for (const auto& [p, c] : x.terms()) {
    int dp = degree(q, p);
    if (d && *d != dp) throw NonHomogeneous("element is not homogeneous");
    d = dp;
  }
  return d;
}

void DgPresentation::set_diff(ArrowId a, Element e) {
  diff.resize(quiver.arrow_count());
  diff.at(static_cast<std::size_t>(a)) = std::move(e);
}

ArrowId DgPresentation::add_arrow(const std::string& name, VertexId s, VertexId t, int degree) {
  ArrowId a = quiver.add_arrow(name, s, t, degree);
  diff.resize(quiver.arrow_count());
  return a;
}

Element differential(const DgPresentation& p, const Path& x) {
  Element out;
  const auto& q = p.quiver;
  int prefix_degree = 0;
  for (std::size_t i = 0; i < x.length(); ++i) {
    ArrowId a = x.arrows[i];
    const Element& da = p.diff_of(a);
    if (!da.is_zero()) {
      Element left(subpath(q, x, 0, i));
      Element right(subpath(q, x, i + 1, x.length()));
      Scalar sign = (prefix_degree % 2 == 0) ? 1 : -1;
      out.add(multiply(multiply(left, da), right), sign);
    }
    prefix_degree += q.arrow(a).degree;
  }
  return out;
}

Element differential(const DgPresentation& p, const Element& x) {
  homogeneous_degree(p.quiver, x);
  Element out;
  for (const auto& [path, c] : x.terms()) out.add(differential(p, path), c);
  return out;
}

std::vector<PresentationIssue> audit_presentation(const DgPresentation& p) {
  std::vector<PresentationIssue> issues;
  const auto& q = p.quiver;
  if (p.diff.size() != q.arrow_count()) {
    issues.push_back({PresentationIssue::Kind::DegreeMismatch, "", {},
                      "differential table does not cover every arrow"});
    return issues;
  }
  for (ArrowId a = 0; a < static_cast<ArrowId>(q.arrow_count()); ++a) {
    const auto& ar = q.arrow(a);
    bool ok = true;
    for (const auto& [path, c] : p.diff_of(a).terms()) {
      if (degree(q, path) != ar.degree + 1) {
        issues.push_back({PresentationIssue::Kind::DegreeMismatch, ar.name, {},
                          "d(" + ar.name + ") contains " + format_path(q, path) + " of degree " +
                              std::to_string(degree(q, path)) + ", expected " +
                              std::to_string(ar.degree + 1)});
        ok = false;
        break;
      }
      if (path.source != ar.source || path.target != ar.target) {
        issues.push_back({PresentationIssue::Kind::EndpointMismatch, ar.name, {},
                          "d(" + ar.name + ") contains " + format_path(q, path) +
                              " with wrong endpoints"});
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    Element dd = differential(p, p.diff_of(a));
    if (!dd.is_zero())
      issues.push_back({PresentationIssue::Kind::NotSquareZero, ar.name, dd,
                        "d(d(" + ar.name + ")) = " + format_element(q, dd)});
  }
  return issues;
}

void validate_presentation(const DgPresentation& p) {
  auto issues = audit_presentation(p);
  if (issues.empty()) return;
  const auto& first = issues.front();
  if (first.kind == PresentationIssue::Kind::NotSquareZero) throw NotSquareZero(first.message);
  throw DegreeMismatch(first.message);
}

std::vector<Path> path_basis(const DgPresentation& p, const PathFilter& filter, std::size_t len_max) {
  const auto& q = p.quiver;
  std::vector<Path> out;
  auto accept = [&](const Path& path, int deg) {
    if (filter.target && path.target != *filter.target) return;
    if (filter.degree && deg != *filter.degree) return;
    out.push_back(path);
  };
  std::function<void(Path&, int)> extend = [&](Path& path, int deg) {
    accept(path, deg);
    if (path.length() == len_max) return;
    for (ArrowId a : q.out_arrows(path.target)) {
      path.arrows.push_back(a);
      VertexId old = path.target;
      path.target = q.arrow(a).target;
      extend(path, deg + q.arrow(a).degree);
      path.target = old;
      path.arrows.pop_back();
    }
  };
  for (VertexId v = 0; v < static_cast<VertexId>(q.vertex_count()); ++v) {
    if (filter.source && v != *filter.source) continue;
    Path path = Path::idempotent(v);
    extend(path, 0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<int>> homogeneous_length(const DgPresentation& p) {
  const auto& q = p.quiver;
  const std::size_t n = q.arrow_count();
  std::vector<int> w(n, 0);
  std::size_t assigned = 0;
  for (std::size_t a = 0; a < n; ++a)
    if (p.diff[a].is_zero()) {
      w[a] = 1;
      ++assigned;
    }
  bool progress = true;
  while (assigned < n && progress) {
    progress = false;
    for (std::size_t a = 0; a < n; ++a) {
      if (w[a] != 0) continue;
      std::optional<int> value;
      bool ready = true;
      for (const auto& [path, c] : p.diff[a].terms()) {
        int s = 0;
        for (ArrowId b : path.arrows) {
          if (w[static_cast<std::size_t>(b)] == 0) ready = false;
          s += w[static_cast<std::size_t>(b)];
        }
        if (!ready) break;
        if (value && *value != s) return std::nullopt;
        value = s;
      }
      if (!ready) continue;
      if (!value || *value < 1) return std::nullopt;
      w[a] = *value;
      ++assigned;
      progress = true;
    }
  }
  if (assigned < n) return std::nullopt;
  return w;
}

int path_weight(const std::vector<int>& arrow_weights, const Path& p) {
  int s = 0;
  for (ArrowId a : p.arrows) s += arrow_weights.at(static_cast<std::size_t>(a));
  return s;
}

std::pair<Path, int> canonical_rotation(const GradedQuiver& q, const Path& cycle) {
  if (!cycle.is_cycle() || cycle.is_idempotent())
    throw Error("canonical_rotation: expected a nonidempotent cycle");
  const std::size_t n = cycle.length();
  Path best = cycle;
  int best_sign = 1;
  for (std::size_t r = 1; r < n; ++r) {
    Path rot;
    rot.arrows.assign(cycle.arrows.begin() + static_cast<std::ptrdiff_t>(r), cycle.arrows.end());
    rot.arrows.insert(rot.arrows.end(), cycle.arrows.begin(),
                      cycle.arrows.begin() + static_cast<std::ptrdiff_t>(r));
    rot.source = rot.target = q.arrow(rot.arrows.front()).source;
    if (rot.arrows < best.arrows) {
      int head = degree(q, subpath(q, cycle, 0, r));
      int tail = degree(q, cycle) - head;
      best = rot;
      best_sign = ((head * tail) % 2 == 0) ? 1 : -1;
    }
  }
  return {best, best_sign};
}

Potential::Potential(const GradedQuiver& q, const Element& w) {
  for (const auto& [p, c] : w.terms()) {
    if (p.is_idempotent() || !p.is_cycle())
      throw Error("potential term " + format_path(q, p) + " is not a cycle");
    auto [rot, sign] = canonical_rotation(q, p);
    w_.add(rot, sign * c);
  }
}

Element cyclic_derivative(const GradedQuiver& q, const Potential& w, ArrowId a) {
  if (q.arrow(a).degree != 0)
    throw DegreeMismatch("cyclic derivatives are only defined here for degree-0 arrows");
  Element out;
  for (const auto& [cycle, c] : w.element().terms()) {
    const std::size_t n = cycle.length();
    for (std::size_t i = 0; i < n; ++i) {
      if (cycle.arrows[i] != a) continue;
      for (ArrowId b : cycle.arrows)
        if (q.arrow(b).degree != 0) throw DegreeMismatch("potential has a graded arrow");
      // a_{i+1} ... a_n a_1 ... a_{i-1}
      Path rest;
      for (std::size_t k = 1; k < n; ++k) rest.arrows.push_back(cycle.arrows[(i + k) % n]);
      if (rest.arrows.empty()) {
        rest = Path::idempotent(q.arrow(a).target);
      } else {
        rest.source = q.arrow(rest.arrows.front()).source;
        rest.target = q.arrow(rest.arrows.back()).target;
      }
      out.add(rest, c);
    }
  }
  return out;
}

}  // namespace cyforge
