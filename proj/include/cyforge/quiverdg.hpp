#pragma once

// Graded quivers, paths, dg presentations and potentials.
//
// Composition is diagrammatic throughout: the path "a.b" runs a, then b, so it
// requires target(a) == source(b). Grading is cohomological.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cyforge/exactla.hpp"

namespace cyforge {

using VertexId = int;
using ArrowId = int;

struct Arrow {
  std::string name;
  VertexId source = 0;
  VertexId target = 0;
  int degree = 0;

  bool operator==(const Arrow&) const = default;
};

class GradedQuiver {
 public:
  VertexId add_vertex(const std::string& name);
  /// Throws DuplicateArrow / UnknownVertex.
  ArrowId add_arrow(const std::string& name, VertexId source, VertexId target, int degree);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Arrow& arrow(ArrowId a) const { return arrows_.at(static_cast<std::size_t>(a)); }
  const std::string& vertex_name(VertexId v) const { return vertices_.at(static_cast<std::size_t>(v)); }

  std::optional<VertexId> find_vertex(std::string_view name) const;
  std::optional<ArrowId> find_arrow(std::string_view name) const;

  /// Arrows leaving v, in id order.
  const std::vector<ArrowId>& out_arrows(VertexId v) const { return out_.at(static_cast<std::size_t>(v)); }

  bool operator==(const GradedQuiver& o) const {
    return vertices_ == o.vertices_ && arrows_ == o.arrows_;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<ArrowId>> out_;
  std::map<std::string, VertexId, std::less<>> vertex_index_;
  std::map<std::string, ArrowId, std::less<>> arrow_index_;
};

/// An idempotent e(v) (empty word) or a composable arrow word.
struct Path {
  VertexId source = 0;
  VertexId target = 0;
  std::vector<ArrowId> arrows;

  static Path idempotent(VertexId v) { return Path{v, v, {}}; }
  static Path arrow(const GradedQuiver& q, ArrowId a);

  std::size_t length() const { return arrows.size(); }
  bool is_idempotent() const { return arrows.empty(); }
  bool is_cycle() const { return source == target; }

  /// Order: by length, then by source, then lexicographically by arrow id.
  std::strong_ordering operator<=>(const Path& o) const;
  bool operator==(const Path& o) const = default;
};

int degree(const GradedQuiver& q, const Path& p);

/// Concatenation, or nullopt when target(x) != source(y).
std::optional<Path> concat(const Path& x, const Path& y);

/// Subword [begin, end) of a nonidempotent path; an empty range gives the
/// idempotent at the corresponding vertex.
Path subpath(const GradedQuiver& q, const Path& p, std::size_t begin, std::size_t end);

/// Finite linear combination of paths with nonzero rational coefficients.
class Element {
 public:
  Element() = default;
  explicit Element(Path p, Scalar c = 1);

  void add(const Path& p, const Scalar& c);
  void add(const Element& x, const Scalar& c = 1);
  bool is_zero() const { return terms_.empty(); }
  const std::map<Path, Scalar>& terms() const { return terms_; }
  Scalar coefficient(const Path& p) const;

  Element operator+(const Element& o) const;
  Element operator-(const Element& o) const;
  Element operator-() const;
  friend Element operator*(const Scalar& c, const Element& x);
  bool operator==(const Element& o) const = default;

 private:
  std::map<Path, Scalar> terms_;
};

/// Bilinear diagrammatic product; incomposable products vanish.
Element multiply(const Element& x, const Element& y);

/// Degree of a homogeneous element, nullopt for zero, throws NonHomogeneous otherwise.
std::optional<int> homogeneous_degree(const GradedQuiver& q, const Element& x);

struct DgPresentation {
  GradedQuiver quiver;
  std::vector<Element> diff;  // indexed by arrow id

  const Element& diff_of(ArrowId a) const { return diff.at(static_cast<std::size_t>(a)); }
  void set_diff(ArrowId a, Element e);
  ArrowId add_arrow(const std::string& name, VertexId s, VertexId t, int degree);

  bool operator==(const DgPresentation&) const = default;
};

/// Leibniz extension d(uv) = d(u)v + (-1)^{|u|} u d(v). Throws NonHomogeneous.
Element differential(const DgPresentation& p, const Element& x);
Element differential(const DgPresentation& p, const Path& x);

struct PresentationIssue {
  enum class Kind { DegreeMismatch, EndpointMismatch, NotSquareZero };
  Kind kind;
  std::string arrow;
  Element residual;  // d^2(arrow) for NotSquareZero
  std::string message;
};

/// All problems found; empty means the presentation is a valid dg category.
std::vector<PresentationIssue> audit_presentation(const DgPresentation& p);

/// Throws DegreeMismatch or NotSquareZero on the first problem.
void validate_presentation(const DgPresentation& p);

struct PathFilter {
  std::optional<VertexId> source;
  std::optional<VertexId> target;
  std::optional<int> degree;
};

/// All composable paths of length <= len_max passing the filter, sorted.
std::vector<Path> path_basis(const DgPresentation& p, const PathFilter& filter, std::size_t len_max);

/// Positive integer weights on arrows for which the differential is
/// homogeneous (every term of d(a) has the weight of a). Arrows with zero
/// differential get weight 1. nullopt if no such assignment exists this way.
std::optional<std::vector<int>> homogeneous_length(const DgPresentation& p);

int path_weight(const std::vector<int>& arrow_weights, const Path& p);

/// Nonzero combination of cycles, kept in canonical rotation.
class Potential {
 public:
  Potential() = default;
  Potential(const GradedQuiver& q, const Element& w);

  const Element& element() const { return w_; }
  bool is_zero() const { return w_.is_zero(); }
  bool operator==(const Potential&) const = default;

 private:
  Element w_;
};

/// Rotation of a cycle to its lexicographically least arrow word, with the
/// Koszul sign of the rotation.
std::pair<Path, int> canonical_rotation(const GradedQuiver& q, const Path& cycle);

/// Cyclic derivative with respect to arrow a (degree-0 arrows only).
Element cyclic_derivative(const GradedQuiver& q, const Potential& w, ArrowId a);

// Text format.
struct ParsedSpec {
  DgPresentation presentation;
  std::optional<Potential> potential;
};

/// Throws ParseError, UnknownVertex, DuplicateArrow; also validates.
ParsedSpec parse_spec(std::string_view text);

std::string format_element(const GradedQuiver& q, const Element& x);
std::string format_path(const GradedQuiver& q, const Path& p);
std::string pretty_print(const DgPresentation& p, const std::optional<Potential>& w = std::nullopt);

}  // namespace cyforge
