#pragma once

// The Calabi-Yau verification pipeline: Casimir element, canonical cyclic
// class, the resolution of B as a cone, the nondegeneracy morphism and the
// blockwise quasi-isomorphism test.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cyforge/homology.hpp"

namespace cyforge {

struct CasimirElement {
  EnvPairElement resolved;        // in theta (x)_{A^e} pA
  EnvElement element;             // pushed to theta (x)_{A^e} A
  std::vector<Scalar> loop_coefficient;  // coefficient of t_v (x) e(v), per vertex
};

/// Throws SolveFailed if no diagonal cycle with unit omega coefficients exists.
CasimirElement casimir_element(const Theta& theta, const Resolution& pA);
CasimirElement casimir_element(const CompletionPresentation& B);

/// The Casimir element as a cycle of the cone over b.
HomologyClass casimir_class(const CompletionPresentation& B, const CasimirElement& c);
/// 1 (x) sum c_v t_v in column 0; throws NotACycle if the totalization does not kill it.
HomologyClass canonical_class(const CompletionPresentation& B, const CasimirElement& c);

/// Normal form of B (x)_A B: left is an idempotent or ends with a theta letter.
struct TensorWord {
  Path left;
  Path right;
  auto operator<=>(const TensorWord&) const = default;
  bool operator==(const TensorWord&) const = default;
};
using TensorElement = std::map<TensorWord, Scalar>;

void tensor_add(TensorElement& x, const CompletionPresentation& B, const Path& p, const Path& q,
                const Scalar& c);

/// B (x)_A pA (x)_A B --(lift of b')-- B (x)_A theta (x)_A B, as a cone.
struct BimoduleResolution {
  std::shared_ptr<FreeBimodule> theta;  // theta over B
  std::shared_ptr<FreeBimodule> pa;     // pA over B
  BimoduleMorphism lift;
  std::shared_ptr<FreeBimodule> module;  // cone(lift)
  int top = 0;                           // length of the t_v generators
};

/// Throws SolveFailed when some correction term has no preimage in its slice.
BimoduleResolution resolve_completion(const CompletionPresentation& B);

struct BlockWitness {
  VertexId x = 0;
  VertexId y = 0;
  int length = 0;
  std::optional<int> weight;
  int degree = 0;
  std::size_t dim = 0;
  std::string describe(const GradedQuiver& q) const;
};

struct BlockReport {
  bool ok = true;
  std::size_t blocks = 0;
  std::vector<BlockWitness> witnesses;  // sorted; first is the reported one
};

/// Row exactness of 0 -> B (x)_A theta (x)_A B -> B (x)_A B -> B -> 0 per block.
BlockReport check_exact_sequence(const CompletionPresentation& B, const Window& w);

/// Closed degree-0 map Sigma^n dual(R) -> R, with the t_v coefficient of
/// the image of each omega_v^v fixed by the class. A zero class gives the zero map.
BimoduleMorphism nondegeneracy_morphism(const CompletionPresentation& B, const BimoduleResolution& R,
                                        const HomologyClass& hh);

/// Cohomology of cone(phi) per (x, y, length, weight) block in the window.
BlockReport check_quasi_iso(const BimoduleMorphism& phi, const Window& w);

enum class Status { Pass, Fail, Inconclusive };
std::string to_string(Status s);

struct Check {
  std::string name;
  Status status = Status::Pass;
  std::string summary;
  std::vector<std::pair<std::string, std::string>> details;
};

struct VerificationReport {
  std::string spec_sha256;
  int n = 0;
  Window window;
  std::vector<Check> checks;
  std::vector<HomologyTable> homology;
  Status verdict = Status::Pass;
};

/// With a potential the input is the Ginzburg algebra (n = 3).
VerificationReport verify_cy(const ParsedSpec& spec, int n, const Window& w,
                             const std::string& spec_sha256 = "");

Status overall(const std::vector<Check>& checks);

}  // namespace cyforge
