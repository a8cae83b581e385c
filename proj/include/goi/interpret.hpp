#ifndef GOI_INTERPRET_HPP
#define GOI_INTERPRET_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "goi/groupoid.hpp"
#include "goi/projects.hpp"
#include "goi/proof.hpp"

namespace goi {

/// Leaf `second` of occurrence `first`.
using AtomKey = std::pair<int, std::size_t>;

struct Goi1Interpretation {
  PartialInjectionOp pi;
  PartialInjectionOp sigma;
  /// Projection onto the cut addresses (the support of sigma).
  PartialInjectionOp cut_projection;
  /// Addresses of the conclusion atoms.
  std::map<AtomKey, AddressWord> address;
};

/// Addresses: an axiom puts X^perp at R and X at L; tensor and cut put the
/// first premise under R and the second under L. Throws
/// UnsupportedRuleError on a non-MLL proof.
Goi1Interpretation interpret_mll_goi1(Proof const& p);

/// Axiom links of a cut-free MLL proof, as pairs of conclusion atoms.
std::vector<std::pair<AtomKey, AtomKey>> axiom_links(Proof const& p);

struct SoundnessResult {
  bool equal = false;
  PartialInjectionOp executed;
  PartialInjectionOp expected;
  std::uint64_t nilpotency_degree = 0;
};

/// Executes (pi, sigma) and compares, as partial injections, with the
/// links of the normal form placed at the addresses of p's conclusion.
SoundnessResult soundness_check_mll(ProofPtr const& p);

/// Per variable: the number of locations an atom occupies and witness
/// projects on the abstract carrier 0..size-1.
struct BasisEntry {
  std::size_t size = 1;
  std::vector<Project> primal;
  std::vector<Project> dual;
};

struct InterpretationBasis {
  std::map<std::string, BasisEntry> variables;
};

/// Reads the JSON basis format documented in the README. Throws Error on a
/// malformed entry.
InterpretationBasis load_basis(std::string const& json_text);
InterpretationBasis load_basis_file(std::string const& path);

/// Pairs (primal, dual) of a variable that are not orthogonal.
std::vector<std::string> basis_defects(InterpretationBasis const& basis);

struct LocationPlan {
  /// Locations of each conclusion atom.
  std::map<AtomKey, std::vector<std::uint64_t>> atoms;
  /// Delocations introduced by cut and with rules, in DFS order.
  std::vector<std::pair<std::string, Delocation>> delocations;
  std::uint64_t next_location = 0;
};

/// The two projects met at a cut node, the second one already relocated.
struct CutRecord {
  Project left;
  Project right;
  Project result;
};

struct MatricialInterpretation {
  Project project;
  LocationPlan plan;
  /// One record per cut, innermost first.
  std::vector<CutRecord> cuts;
};

/// Deterministic DFS allocation of fresh location blocks. Throws
/// MissingVariableError when the basis lacks a variable.
LocationPlan allocate_locations(Proof const& p, InterpretationBasis const& basis);

/// Axiom: fax; par: unchanged; tensor: tensor_project; cut: plug after
/// relocating the negative cut formula onto the positive one; plus: carrier
/// extension; with: with_bar after relocating the second context; top: the
/// zero project on the context.
MatricialInterpretation interpret_mall_matricial(Proof const& p,
                                                 InterpretationBasis const& basis);

/// Locations of every leaf of occurrence `id`, in leaf order.
std::vector<std::vector<std::uint64_t>> leaf_locations(LocationPlan const& plan,
                                                       Occurrence const& o);

} // namespace goi

#endif
