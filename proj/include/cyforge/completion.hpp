#pragma once

// Calabi-Yau completions T_A(theta), their deformations by closed degree-1
// morphisms theta -> A, Ginzburg dg algebras and Jacobian algebras.

#include <optional>
#include <string>
#include <vector>

#include "cyforge/bimods.hpp"

namespace cyforge {

enum class ArrowKind { Original, Dual, Loop };

struct CompletionPresentation {
  int n = 0;
  BasePtr a;  // the input category
  BasePtr b;  // the completion; arrows of a come first with the same ids
  Theta theta;
  std::vector<ArrowKind> kind;       // per arrow of b
  std::vector<int> origin;           // arrow of a (Original, Dual) or vertex (Loop)
  std::vector<int> theta_gen;        // per arrow of b, -1 for Original
  std::vector<ArrowId> arrow_of_gen;  // per generator of theta
  bool deformed = false;

  const DgPresentation& presentation() const { return b->pres; }
  bool is_theta_arrow(ArrowId x) const { return kind[static_cast<std::size_t>(x)] != ArrowKind::Original; }
};

/// Closed degree-1 morphism theta -> A given on generators.
struct DeformationClass {
  std::vector<Element> values;  // per theta generator
  std::optional<Potential> potential;
  bool is_zero() const;
};

/// t_v has length `top` (0 = automatic), a* has top - length(a).
CompletionPresentation cy_completion(BasePtr A, int n, int top = 0);

/// p h q in theta read as the path p.h.q of the completion.
Element theta_to_path(const CompletionPresentation& B, const BiElement& x);

/// d delta(g) + delta(d g) for generators where it does not vanish.
std::vector<std::pair<int, Element>> cocycle_residual(const CompletionPresentation& B,
                                                      const DeformationClass& delta);

/// Potential input: requires n = 3 and degree-0 arrows; delta(a*) = d_a W.
DeformationClass class_to_cocycle(const CompletionPresentation& B, const Potential& w);
/// Explicit values on generators; throws DegreeMismatch or NotACycle.
DeformationClass class_to_cocycle(const CompletionPresentation& B, std::vector<Element> values);

/// Throws NotClosed when delta is not a cocycle.
CompletionPresentation deform(const CompletionPresentation& B, const DeformationClass& delta);

/// Common length of the terms of W, if any.
std::optional<int> potential_length(const Potential& w);

/// The Ginzburg dg category of (Q, W); Q must have degree-0 arrows and no differential.
CompletionPresentation ginzburg(const DgPresentation& q, const Potential& w);

struct JacobianResult {
  std::vector<std::size_t> dims;  // by path length 0..len_max
  std::vector<Path> basis;
  std::size_t total() const;
};

/// kQ modulo the two-sided ideal of the cyclic derivatives, up to len_max.
JacobianResult jacobian_algebra(const DgPresentation& q, const Potential& w, int len_max);

struct H0Result {
  std::vector<std::size_t> dims;  // by length 0..len_max
  bool exact = true;   // computed in an exact length grading
  bool stable = true;  // agrees with the run at len_max + 2
  std::size_t total() const;
};

/// Degree-0 paths modulo the image of d, length by length.
H0Result h0_dimensions(const GradedBase& b, int len_max);

}  // namespace cyforge
