#pragma once

// Free (cellular) dg bimodules over a graded base: the resolution pA, duals,
// shifts, cones, base change, the inverse dualizing bimodule theta, and
// tensor products over the enveloping category.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cyforge/complex.hpp"
#include "cyforge/graded_base.hpp"

namespace cyforge {

struct Generator {
  std::string name;
  VertexId left = 0;
  VertexId right = 0;
  int degree = 0;
  int weight = 0;
  int length = 0;

  bool operator==(const Generator&) const = default;
};

/// The word left.g.right; left ends at g.left and right starts at g.right.
struct BiWord {
  Path left;
  int gen = 0;
  Path right;

  auto operator<=>(const BiWord&) const = default;
  bool operator==(const BiWord&) const = default;
};

class BiElement {
 public:
  BiElement() = default;
  BiElement(BiWord w, Scalar c = 1) { add(w, c); }

  void add(const BiWord& w, const Scalar& c);
  void add(const BiElement& x, const Scalar& c = 1);
  bool is_zero() const { return terms_.empty(); }
  const std::map<BiWord, Scalar>& terms() const { return terms_; }
  Scalar coefficient(const BiWord& w) const;

  BiElement operator+(const BiElement& o) const;
  BiElement operator-(const BiElement& o) const;
  friend BiElement operator*(const Scalar& c, const BiElement& x);
  bool operator==(const BiElement&) const = default;

 private:
  std::map<BiWord, Scalar> terms_;
};

struct FreeBimodule {
  BasePtr base;
  std::vector<Generator> gens;
  std::vector<BiElement> diff;  // indexed like gens

  int add_generator(Generator g, BiElement d = {});
  std::optional<int> find(const std::string& name) const;
  const Generator& gen(int g) const { return gens.at(static_cast<std::size_t>(g)); }

  int degree(const BiWord& w) const;
  int weight(const BiWord& w) const;
  int length(const BiWord& w) const;
  VertexId source(const BiWord& w) const { return w.left.source; }
  VertexId target(const BiWord& w) const { return w.right.target; }
};

BiWord bare(const FreeBimodule& X, int g);

/// a.x.b for base elements a, b.
BiElement act(const Element& a, const BiElement& x, const Element& b);

/// d(p g q) = dp.g.q + (-1)^|p| p.dg.q + (-1)^{|p|+|g|} p.g.dq
BiElement bimodule_differential(const FreeBimodule& X, const BiElement& x);

/// Human-readable list of problems (endpoint, degree, length, weight, d^2).
std::vector<std::string> audit_bimodule(const FreeBimodule& X);
/// Throws InvalidComplex on the first problem.
void validate_bimodule(const FreeBimodule& X);

std::string format_biword(const FreeBimodule& X, const BiWord& w);
std::string format_bielement(const FreeBimodule& X, const BiElement& x);

/// Degree-k bimodule map determined on generators, f(p g q) = (-1)^{k|p|} p f(g) q.
struct BimoduleMorphism {
  std::shared_ptr<const FreeBimodule> source;
  std::shared_ptr<const FreeBimodule> target;
  int degree = 0;
  std::vector<BiElement> values;  // indexed by source generators

  BiElement apply(const BiElement& x) const;
  /// d f(g) - (-1)^k f(d g) for every generator; empty when closed.
  std::vector<std::pair<int, BiElement>> closedness_residual() const;
  bool is_closed() const { return closedness_residual().empty(); }
};

BimoduleMorphism zero_morphism(std::shared_ptr<const FreeBimodule> s,
                               std::shared_ptr<const FreeBimodule> t, int degree = 0);

/// pA together with its augmentation onto A (omega_v -> e(v), rho_a -> 0).
struct Resolution {
  FreeBimodule module;
  std::vector<int> omega;           // generator index per vertex
  std::vector<int> rho;             // generator index per arrow
  std::vector<Element> augmentation;  // per generator
};

Resolution cellular_resolution(BasePtr A);

/// The telescoping derivation of degree -1: a1..al -> sum of a1..rho(ai)..al.
BiElement telescope(const Resolution& r, const Path& p);

/// Image of an element of pA under the augmentation.
Element augment(const Resolution& r, const BiElement& x);

/// Generator-wise dual: g* has endpoints swapped, degree -|g|, weight
/// weight_offset - w(g) and length length_offset - l(g).
FreeBimodule dual_bimodule(const FreeBimodule& X, int weight_offset = 0, int length_offset = 0,
                           const std::string& suffix = "^v");

/// Sigma^k: degrees drop by k, d(s g) = (-1)^k s(dg), s(p g q) = (-1)^{k|p|} p (s g) q.
FreeBimodule shift(const FreeBimodule& X, int k, const std::string& prefix = "s");

/// Cone of a closed degree-0 morphism: generators s x (source) then y (target),
/// d(s x) = -s(dx) + f(x).
FreeBimodule cone(const BimoduleMorphism& f, const std::string& prefix = "s");

/// Same generators over a base whose quiver extends the old one.
FreeBimodule base_change(const FreeBimodule& X, BasePtr B);

struct Theta {
  FreeBimodule module;
  std::vector<int> bar;  // generator per arrow of A
  std::vector<int> loop;  // generator per vertex of A
};

/// Sigma^{n-1} of the dual of pA, with generators renamed a* and t_v.
/// t_v gets length `top` (0 picks one more than the longest arrow) and a*
/// gets top - length(a).
Theta inverse_dualizing_theta(BasePtr A, int n, int top = 0);

/// Finite slice of a bimodule at fixed endpoints, length and optional weight.
struct BimoduleSlice {
  ComplexBuilder<BiWord> builder;
  GradedComplex complex;
};

std::vector<BiWord> slice_words(const FreeBimodule& X, const PathCatalog& cat, VertexId x,
                                VertexId y, int length, std::optional<int> weight);
BimoduleSlice bimodule_slice(const FreeBimodule& X, const PathCatalog& cat, VertexId x, VertexId y,
                             int length, std::optional<int> weight = std::nullopt);

/// Some z with d z = target inside the slice of target's endpoints/grading.
std::optional<BiElement> solve_preimage(const FreeBimodule& X, const PathCatalog& cat,
                                        const BiElement& target);

/// Cone of the augmentation pA -> A at one slice; acyclic iff pA resolves A there.
GradedComplex augmented_slice(const Resolution& r, const PathCatalog& cat, VertexId x, VertexId y,
                              int length);

// X (x)_{A^e} M for a path category M containing the base of X:
// basis g (x) u with u a path from right(g) to left(g).
struct EnvWord {
  int gen = 0;
  Path path;
  auto operator<=>(const EnvWord&) const = default;
  bool operator==(const EnvWord&) const = default;
};
using EnvElement = std::map<EnvWord, Scalar>;

void env_add(EnvElement& x, const EnvWord& w, const Scalar& c);
/// (p g q) (x) u = (-1)^{|p|(|g|+|q|+|u|)} g (x) q u p
void env_add_normalized(EnvElement& out, const FreeBimodule& X, const GradedBase& M,
                        const BiWord& w, const Path& u, const Scalar& c);
/// d(g (x) u) = dg (x) u + (-1)^|g| g (x) du
EnvElement env_differential(const FreeBimodule& X, const GradedBase& M, const EnvElement& x);

int env_degree(const FreeBimodule& X, const GradedBase& M, const EnvWord& w);

/// Basis words of total length (generator length plus path length in M).
std::vector<EnvWord> env_slice_words(const FreeBimodule& X, const GradedBase& M,
                                     const PathCatalog& cat, int length, std::optional<int> weight);

struct EnvSlice {
  ComplexBuilder<EnvWord> builder;
  GradedComplex complex;
};
EnvSlice env_slice(const FreeBimodule& X, const GradedBase& M, const PathCatalog& cat, int length,
                   std::optional<int> weight = std::nullopt);

// X (x)_{A^e} Y for free X, Y over the same base: basis g (x) u h v.
struct EnvPairWord {
  int gen = 0;
  BiWord rest;
  auto operator<=>(const EnvPairWord&) const = default;
  bool operator==(const EnvPairWord&) const = default;
};
using EnvPairElement = std::map<EnvPairWord, Scalar>;

EnvPairElement env_pair_differential(const FreeBimodule& X, const FreeBimodule& Y,
                                     const EnvPairElement& x);
/// Pushes the Y factor along an augmentation Y -> base.
EnvElement env_pair_augment(const FreeBimodule& X, const Resolution& Y, const EnvPairElement& x);

}  // namespace cyforge
