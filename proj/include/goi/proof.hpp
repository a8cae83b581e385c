#ifndef GOI_PROOF_HPP
#define GOI_PROOF_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "goi/formula.hpp"

namespace goi {

enum class Rule { ax, cut, tensor, par, plusl, plusr, with, top };

std::string to_string(Rule r);

/// A formula occurrence. Ids are unique within a proof and survive every
/// rule that does not consume the occurrence.
struct Occurrence {
  int id;
  FormulaPtr formula;
};
using Sequent = std::vector<Occurrence>;

struct Proof;
using ProofPtr = std::shared_ptr<Proof const>;

/// A checked proof node. Exchange is implicit: sequents are multisets of
/// occurrences, listed context first and introduced formula last.
struct Proof {
  Rule rule = Rule::ax;
  std::vector<ProofPtr> premises;
  Sequent conclusion;

  /// ax: (X^perp, X); cut, tensor, with: principal occurrence of each
  /// premise; par: both components; plus: the kept formula.
  int a = -1;
  int b = -1;
  /// Occurrence introduced by tensor, par, plus, with, top.
  int introduced = -1;
  std::string var;  // ax
  FormulaPtr side;  // plus: the added disjunct
  /// with: context id of the second premise -> context id of the first.
  std::vector<std::pair<int, int>> context_map;
};

/// Allocator for fresh occurrence ids.
struct IdSource {
  int next = 0;
  int fresh() { return next++; }
};

/// Smart constructors. They check applicability and throw RuleError with the
/// given path.
ProofPtr make_ax(std::string const& var, int dual_id, int var_id);
ProofPtr make_cut(ProofPtr p, int a, ProofPtr q, int b,
                  std::string const& path = "root");
ProofPtr make_tensor(ProofPtr p, int a, ProofPtr q, int b, int introduced,
                     std::string const& path = "root");
ProofPtr make_par(ProofPtr p, int a, int b, int introduced,
                  std::string const& path = "root");
ProofPtr make_plus(Rule side, ProofPtr p, int a, FormulaPtr other, int introduced,
                   std::string const& path = "root");
ProofPtr make_with(ProofPtr p, int a, ProofPtr q, int b, int introduced,
                   std::string const& path = "root");
ProofPtr make_top(Sequent context, int introduced);

/// Parses and checks. Grammar:
///   (ax X) | (cut F p q) | (tensor [i j] p q) | (par i j p)
///   | (plusl F [i] p) | (plusr F [i] p) | (with [i j] p q) | (top F ...)
/// Indices are 0-based positions in the premise sequents; the default
/// principal formula is the last one. Throws ParseError or RuleError.
ProofPtr parse_proof(std::string const& text);

bool is_mll(Proof const& p);
bool is_cut_free(Proof const& p);
std::size_t cut_count(Proof const& p);
std::size_t depth(Proof const& p);

/// Position of occurrence `id` in a sequent, or npos.
std::size_t position_of(Sequent const& s, int id);

/// Cut elimination for MLL, innermost cuts first. Occurrence ids of the
/// conclusion are preserved.
ProofPtr normalize_mll(ProofPtr const& p);

/// Conclusion rendered as "|- A, B".
std::string sequent_string(Sequent const& s);

} // namespace goi

#endif
