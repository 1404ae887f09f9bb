#pragma once

// Reduced Hochschild and cyclic homology of an undeformed completion
// B = T_A(theta), computed from the two small columns theta (x)_{A^e} B and
// A (x)_{A^e} B/A, plus the normalized mixed complex of a presentation for
// negative cyclic lifts.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cyforge/completion.hpp"

namespace cyforge {

struct Window {
  int deg_min = -5;
  int weight_max = 3;
  int len_max = 6;
  int u_order = 3;
  int columns = 0;  // periodic columns beyond column 0; 0 = as many as the window needs
};

/// Element of A (x)_{A^e} B/A: closed paths starting with a theta letter.
using BarElement = std::map<Path, Scalar>;

void bar_add(BarElement& x, const Path& w, const Scalar& c);
/// Adds the class of a closed path: its leading A-letters are rotated to
/// the end with the Koszul sign; paths without theta letters vanish.
void bar_add_normalized(BarElement& x, const CompletionPresentation& B, const Path& w, const Scalar& c);
BarElement bar_differential(const CompletionPresentation& B, const BarElement& x);

/// g (x) u -> 1 (x) g u - (-1)^{|g||u|} 1 (x) u g
BarElement b_map(const CompletionPresentation& B, const EnvElement& x);
/// 1 (x) w1...wm -> sum over theta letters wi of the Koszul-signed rotation wi (x) w(i+1)...w(i-1)
EnvElement gamma_map(const CompletionPresentation& B, const BarElement& x);
EnvElement theta_differential(const CompletionPresentation& B, const EnvElement& x);

/// Basis key of the periodic complex. Odd columns hold theta (x) B (gen >= 0),
/// even columns hold A (x) B/A (gen = -1). Total degree = internal - column.
struct PeriodicKey {
  int column = 0;
  int gen = -1;
  Path path;
  auto operator<=>(const PeriodicKey&) const = default;
  bool operator==(const PeriodicKey&) const = default;
};
using PeriodicElement = std::map<PeriodicKey, Scalar>;

int internal_degree(const CompletionPresentation& B, const PeriodicKey& k);
int total_degree(const CompletionPresentation& B, const PeriodicKey& k);
int key_length(const CompletionPresentation& B, const PeriodicKey& k);
int key_weight(const CompletionPresentation& B, const PeriodicKey& k);

/// D = (-1)^j d on column j, plus b from odd columns and gamma from even
/// columns >= 2. Columns <= max_column; with max_column = 1 this is the cone over b.
PeriodicElement periodic_differential(const CompletionPresentation& B, const PeriodicElement& x,
                                      int max_column);

std::vector<PeriodicKey> column_words(const CompletionPresentation& B, const PathCatalog& cat,
                                      int column, int length, int weight);

struct PeriodicSlice {
  int length = 0;
  int weight = 0;
  int max_column = 1;
  ComplexBuilder<PeriodicKey> builder;
  GradedComplex complex;
};

/// max_column = -1 picks enough columns for exact homology in total degrees >= deg_min.
PeriodicSlice periodic_slice(const CompletionPresentation& B, const PathCatalog& cat, int length,
                             int weight, int max_column, int deg_min);

std::string format_key(const CompletionPresentation& B, const PeriodicKey& k);

enum class HomologyKind { HochschildReduced, CyclicReduced, NegativeCyclic };
std::string to_string(HomologyKind k);

struct HomologyClass {
  HomologyKind kind = HomologyKind::HochschildReduced;
  int degree = 0;
  int weight = 0;
  int length = 0;
  PeriodicElement representative;
};

struct TableEntry {
  int degree = 0;
  int weight = 0;
  std::size_t dim = 0;
};

struct HomologyTable {
  HomologyKind kind = HomologyKind::HochschildReduced;
  Window window;
  std::vector<TableEntry> entries;  // nonzero entries, sorted by (weight, degree)
  bool euler_ok = true;             // per-slice Euler identities
  bool stable = true;               // column truncation did not change the table
  bool exact_lengths = true;
  std::size_t dim(int degree, int weight) const;
};

HomologyTable reduced_hochschild(const CompletionPresentation& B, const Window& w);
HomologyTable reduced_cyclic(const CompletionPresentation& B, const Window& w);

/// Throws NotACycle unless hc is a cycle of the totalization; returns the
/// class of gamma applied to the column-0 component, placed in the cone.
HomologyClass connes_B(const CompletionPresentation& B, const HomologyClass& hc);

/// Is x a boundary in its slice of the complex with the given columns?
bool is_boundary(const CompletionPresentation& B, const PeriodicElement& x, int max_column);

// Normalized Hochschild chains a0[a1|...|am] of a presentation.
struct HochWord {
  Path a0;
  std::vector<Path> bar;
  auto operator<=>(const HochWord&) const = default;
  bool operator==(const HochWord&) const = default;
};
using HochChain = std::map<HochWord, Scalar>;

void hoch_add(HochChain& x, const HochWord& w, const Scalar& c);
int hoch_degree(const GradedBase& A, const HochWord& w);
int hoch_length(const GradedBase& A, const HochWord& w);
/// Hochschild differential including the internal one.
HochChain hoch_b(const GradedBase& A, const HochChain& x);
/// Connes' operator.
HochChain hoch_B(const GradedBase& A, const HochChain& x);
std::vector<HochWord> hoch_words(const GradedBase& A, const PathCatalog& cat, int length, int degree);
std::string format_hoch(const GradedBase& A, const HochWord& w);

/// The chain e[W] = B(W) for a potential.
HochChain potential_chain(const GradedBase& A, const Potential& w);

/// Image in A (x)_{A^e} pA of a chain with at most one bar letter (degree-0
/// presentations): a0[v1...vl] -> sum_i rho(vi) (x) v(i+1)...vl a0 v1...v(i-1).
EnvElement small_model(const Resolution& pA, const HochChain& x);

/// c0 + c1 u + ... with b c(i+1) + B c(i) = 0.
template <class Chain>
struct MixedChain {
  std::vector<Chain> components;
  int order = 0;
  bool tail_zero() const {
    for (std::size_t i = 1; i < components.size(); ++i)
      if (!components[i].empty()) return false;
    return true;
  }
};

/// Throws NotACycle; nullopt means no lift up to u^k inside the window.
std::optional<MixedChain<HochChain>> negative_cyclic_lift(const GradedBase& A, const HochChain& c,
                                                          int u_order);

/// Same for the cone over b with B(s x, y) = (s gamma y, 0).
PeriodicElement cone_connes(const CompletionPresentation& B, const PeriodicElement& x);
std::optional<MixedChain<PeriodicElement>> negative_cyclic_lift(const CompletionPresentation& B,
                                                                const PeriodicElement& c,
                                                                int u_order);

}  // namespace cyforge
