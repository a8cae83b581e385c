#ifndef GOI_PROJECTS_HPP
#define GOI_PROJECTS_HPP

#include <map>
#include <string>
#include <vector>

#include "goi/dialect.hpp"
#include "goi/execution.hpp"
#include "goi/measurement.hpp"

namespace goi {

/// A bijection between two location sets, acting as theta (x) 1 on every
/// dialect coordinate.
class Delocation {
public:
  Delocation() = default;
  /// Throws CarrierError unless `map` is injective.
  explicit Delocation(std::map<std::uint64_t, std::uint64_t> map);

  std::map<std::uint64_t, std::uint64_t> const& map() const { return map_; }
  std::vector<std::uint64_t> source() const;
  std::vector<std::uint64_t> target() const;
  std::uint64_t operator()(std::uint64_t loc) const;

  /// theta as a table on slot 0.
  PartialInjectionOp theta() const;
  Delocation inverse() const;

private:
  std::map<std::uint64_t, std::uint64_t> map_;
};

/// Pairs the i-th smallest source with the i-th smallest target.
Delocation make_delocation(std::vector<std::uint64_t> const& source,
                           std::vector<std::uint64_t> const& target);

/// theta A theta^*; locations outside the source are left unchanged, which
/// must not create clashes.
DialectalOperator relocate(DialectalOperator const& a, Delocation const& theta);
Project relocate(Project const& a, Delocation const& theta);

/// (q_theta + q_phi, 0, tr, C, theta phi^* + phi theta^*) for two
/// delocations of the same source onto disjoint targets.
Project build_fax(Delocation const& theta, Delocation const& phi);

/// Wager-0 project with the zero operator.
Project zero_project(std::vector<std::uint64_t> carrier);

/// a beta(1) + alpha(1) b, alpha (x) beta, A(dagger) + B(ddagger).
Project tensor_project(Project const& a, Project const& b);

/// Wager f alpha(1) + a phi(1) + [[F, A]], dialect F (x) A, operator
/// plug_dialectal. Throws NotOrthogonalError when the measurement is
/// infinite and IndeterminateError when it is indeterminate.
Project plug_project(Project const& f, Project const& a);

/// a + lambda b on equal carriers: dialect A + B, trace alpha + lambda beta.
Project sum_lambda(Project const& a, double lambda, Project const& b);

/// Zero padding to carrier + q; q must be disjoint from the carrier.
Project extend_carrier(Project const& a, std::vector<std::uint64_t> const& q);

/// Superposition of f and g, whose carriers may share a context: carrier
/// union, dialect F + G, trace (phi + gamma)/2, wager (f + g)/2.
Project with_bar(Project const& f, Project const& g);
Project with_bar(Project const& f, Project const& g, Delocation const& theta1,
                 Delocation const& theta2);

/// The With project of dialect C + C and trace (1/2, 1/2):
/// K = (t1 + t1* + t2 + t2*) + (t1 phi* + phi t1* + t3 + t3*).
/// theta1 and phi share their source (carrier of A), theta2 sends B and
/// theta3 sends C. Throws CarrierError when the carriers overlap.
Project build_with_project(Delocation const& theta1, Delocation const& theta2,
                           Delocation const& theta3, Delocation const& phi);

/// Multiplicities m_i and size K such that block i of size k_i repeated m_i
/// times fits in M_K with lambda_i / k_i = c m_i / K.
struct FactorEmbedding {
  std::vector<std::size_t> multiplicities;
  std::size_t size = 0;
  double scale = 0.0; // c
};

struct PromisingReport {
  bool dialect = false;
  bool pseudo_trace = false;
  bool wager = false;
  bool symmetry = false;
  bool traces = false;
  FactorEmbedding embedding;
  /// First failure, empty when everything passes.
  std::string detail;

  bool all() const { return dialect && pseudo_trace && wager && symmetry && traces; }
};

/// Searches multiplicities up to `max_multiplicity`.
std::optional<FactorEmbedding> factor_embedding(PseudoTrace const& trace,
                                                Dialect const& dialect,
                                                std::size_t max_multiplicity = 64);

PromisingReport is_promising(Project const& a);

enum class Polarity { primal, dual };

struct ConductWitnessSet {
  std::vector<std::uint64_t> carrier;
  std::vector<Project> members;
  Polarity polarity = Polarity::primal;
};

/// Throws CarrierError when a member lives on another carrier.
void validate(ConductWitnessSet const& s);

/// sca_mat(a, t) and sca_mat(a', t) agree within tau for every witness t.
bool obs_equiv(Project const& a, Project const& a2, ConductWitnessSet const& w);

struct WitnessRow {
  std::size_t id = 0;
  Measure sca;
  bool orthogonal = false;
  bool suspicious = false;
};

std::vector<WitnessRow> orthogonal_witness_suite(Project const& a,
                                                 ConductWitnessSet const& s);

} // namespace goi

#endif
