#ifndef GOI_MEASUREMENT_HPP
#define GOI_MEASUREMENT_HPP

#include <cmath>
#include <string>
#include <vector>

#include "goi/dialect.hpp"

namespace goi {

/// A value of R u {inf}, or an indeterminate outcome when a spectral
/// certificate straddles 1.
struct Measure {
  enum class Kind { finite, infinite, indeterminate };

  Kind kind = Kind::finite;
  double value = 0.0;
  std::string note;

  static Measure finite(double v, std::string note = {}) {
    return {Kind::finite, v, std::move(note)};
  }
  static Measure infinite(std::string note = {}) {
    return {Kind::infinite, kInfinity, std::move(note)};
  }
  static Measure indeterminate(std::string note) {
    return {Kind::indeterminate, 0.0, std::move(note)};
  }
  /// Wagers are plain doubles where +inf stands for the infinite wager.
  static Measure from_wager(double w) {
    return std::isinf(w) ? infinite() : finite(w);
  }

  bool is_finite() const { return kind == Kind::finite; }
  bool is_infinite() const { return kind == Kind::infinite; }
  bool is_indeterminate() const { return kind == Kind::indeterminate; }
};

/// Indeterminate wins, then inf absorbs.
Measure operator+(Measure const& a, Measure const& b);
/// s * inf is inf for s != 0 and 0 for s = 0.
Measure operator*(double s, Measure const& m);

std::string to_string(Measure const& m);

/// sum_i lambda_i tr_i(M) with normalized block traces; M is indexed by the
/// dialect coordinates.
cplx pseudo_trace_eval(PseudoTrace const& alpha, Dialect const& dialect,
                       DenseOperator const& m);

/// ldet(1 - M) for the trace tr (x) alpha carried by M.
///
/// Symbolic payloads: 0 when nilpotent, inf on a cycle. Dense payloads are
/// gated by the spectral certificate, then evaluated as
/// -sum_b w_b log|det(1 - M_b)| over the dialect blocks b. When the norm is
/// below 0.9 the series is evaluated as a cross-check and a disagreement
/// beyond its remainder bound is recorded in the note.
Measure ldet(DialectalOperator const& m);

/// Truncated series sum_{k<=K} tr_w(M^k)/k together with a bound on the
/// remainder, valid when the operator norm q is below 1.
struct SeriesValue {
  cplx value;
  double remainder_bound;
  unsigned terms;
};
SeriesValue ldet_series(DialectalOperator const& m, double target = 1e-13,
                        unsigned max_terms = 4000);

/// A(dagger) B(ddagger) on the union of the carriers.
DialectalOperator extended_product(DialectalOperator const& a,
                                   DialectalOperator const& b);

/// [[A, B]] = ldet(1 - A(dagger) B(ddagger)), inf when rho >= 1.
Measure meas_mat(DialectalOperator const& a, DialectalOperator const& b);
/// -log det_{tr(x)alpha(x)beta}(1 - A(dagger) B(ddagger)), inf on a singular
/// argument. No spectral gate.
Measure meas_hyp(DialectalOperator const& a, DialectalOperator const& b);
/// -log|det(1 - uv)| for plain operators (unnormalized trace).
Measure meas_hyp(DenseOperator const& u, DenseOperator const& v);

Measure sca_mat(Project const& a, Project const& b);
Measure sca_hyp(Project const& a, Project const& b);

enum class Model { matricial, hyperfinite };

Measure sca(Project const& a, Project const& b, Model model);

struct OrthogonalityVerdict {
  bool orthogonal = false;
  Measure value;
  /// |sca| in (tau, 10 tau]: nonzero only by a small margin.
  bool suspicious = false;
};

OrthogonalityVerdict orthogonality(Project const& a, Project const& b,
                                   Model model = Model::matricial);
bool orthogonal_mat(Project const& a, Project const& b);
bool orthogonal_hyp(Project const& a, Project const& b);

/// A unital isomorphism between dialects: new block i is old block perm[i]
/// conjugated by unitaries[i].
struct DialectIso {
  std::vector<std::size_t> perm;
  std::vector<DenseOperator> unitaries;

  static DialectIso identity(Dialect const& d);
  Dialect target(Dialect const& source) const;
};

/// Throws Error unless iso is a block permutation with unitary blocks
/// matching d.
void validate(DialectIso const& iso, Dialect const& d);

/// (Id (x) phi)(A) with pseudo-trace alpha o phi^{-1}. Stays symbolic when
/// every block unitary is a weighted permutation.
DialectalOperator apply_variant(DialectalOperator const& a, DialectIso const& iso);
Project apply_variant(Project const& a, DialectIso const& iso);

/// |sca(a, probe) - sca(a^phi, probe)|; 0 when both are inf, inf when only
/// one is.
double variant_invariance_residual(Project const& a, DialectIso const& iso,
                                   Project const& probe,
                                   Model model = Model::matricial);

/// Difference of two measures with the same conventions.
double measure_distance(Measure const& a, Measure const& b);

} // namespace goi

#endif
