#ifndef GOI_WITNESS_HPP
#define GOI_WITNESS_HPP

#include <vector>

#include "goi/interpret.hpp"

namespace goi {

struct WitnessLimits {
  /// Members kept per generated set.
  std::size_t max_members = 24;
  /// Combinations whose dialect exceeds this many coordinates are skipped.
  std::size_t max_dialect = 16;
};

/// Depth-1 witnesses of the conduct of f placed at the given leaf blocks:
/// basis witnesses for atoms, a (x) b for tensors, tensors filtered against
/// the dual for pars, carrier extensions for plus, sums for with, an
/// empty-carrier sample for top and nothing for zero.
std::vector<Project> formula_witnesses(
    Formula const& f, std::vector<std::vector<std::uint64_t>> const& leaves,
    InterpretationBasis const& basis, WitnessLimits const& limits = {});

/// Witnesses of the dual of |- A_1, ..., A_n: tensors of one witness of each
/// A_i^perp, on the carrier of the interpretation.
ConductWitnessSet sequent_dual_witnesses(Sequent const& conclusion,
                                         LocationPlan const& plan,
                                         InterpretationBasis const& basis,
                                         WitnessLimits const& limits = {});

} // namespace goi

#endif
