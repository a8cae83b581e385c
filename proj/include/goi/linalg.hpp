#ifndef GOI_LINALG_HPP
#define GOI_LINALG_HPP

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "goi/core.hpp"

namespace goi {

/// Square complex matrix whose rows and columns are labelled by a carrier.
///
/// Entries are stored row-major. Labels are unique; two operators are
/// combined by matching labels, never positions.
class DenseOperator {
public:
  DenseOperator() = default;
  explicit DenseOperator(std::vector<Index> carrier);
  DenseOperator(std::vector<Index> carrier, std::vector<cplx> entries);

  /// Operator on the carrier {0, ..., n-1} built from rows.
  static DenseOperator from_rows(
      std::initializer_list<std::initializer_list<cplx>> rows);
  static DenseOperator identity(std::vector<Index> carrier);
  static DenseOperator diagonal(std::vector<cplx> const& diag);

  std::size_t size() const { return carrier_.size(); }
  std::vector<Index> const& carrier() const { return carrier_; }
  std::vector<cplx> const& entries() const { return entries_; }

  cplx operator()(std::size_t i, std::size_t j) const {
    return entries_[i * size() + j];
  }
  cplx& operator()(std::size_t i, std::size_t j) {
    return entries_[i * size() + j];
  }

  std::optional<std::size_t> position(Index label) const;
  bool same_carrier_set(DenseOperator const& other) const;

  /// Same operator with rows/columns listed in `order` (a permutation of
  /// the carrier).
  DenseOperator aligned_to(std::vector<Index> const& order) const;
  /// Compression to a subset of the carrier.
  DenseOperator restricted(std::vector<Index> const& sub) const;
  /// Zero extension to a superset of the carrier.
  DenseOperator extended(std::vector<Index> const& super) const;

  bool is_zero() const;

private:
  std::vector<Index> carrier_;
  std::vector<cplx> entries_;
};

/// Natural carrier {(0,0), ..., (n-1,0)}.
std::vector<Index> natural_carrier(std::size_t n);

DenseOperator mat_mul(DenseOperator const& a, DenseOperator const& b);
DenseOperator add(DenseOperator const& a, DenseOperator const& b);
DenseOperator sub(DenseOperator const& a, DenseOperator const& b);
DenseOperator scale(DenseOperator const& a, cplx s);
DenseOperator adjoint(DenseOperator const& a);
/// 1 - a.
DenseOperator one_minus(DenseOperator const& a);
cplx trace(DenseOperator const& a);
DenseOperator power(DenseOperator const& a, unsigned k);

/// Largest entrywise modulus difference after label alignment.
double max_abs_diff(DenseOperator const& a, DenseOperator const& b);

double frobenius_norm(DenseOperator const& a);
/// Largest singular value (Jacobi SVD).
double operator_norm(DenseOperator const& a);

bool is_hermitian(DenseOperator const& a, double tol = tau_num());
bool is_projection(DenseOperator const& a, double tol = tau_num());
bool is_partial_isometry(DenseOperator const& a, double tol = tau_num());
bool is_normal(DenseOperator const& a, double tol = tau_num());
/// At most one nonzero entry per row and column, each of modulus one.
bool is_weighted_partial_permutation(DenseOperator const& a,
                                     double tol = tau_num());

/// Position of the spectral radius relative to 1.
enum class UnitGate { below, at_least, straddle };

struct SpectralReport {
  double norm = 0.0;
  /// Best (smallest) Gelfand upper estimate.
  double spectral_radius = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  /// upper - lower
  double error_bound = 0.0;
  bool exact_zero = false;
  /// Squaring stopped early at the requested threshold.
  bool settled = false;
  /// Running minimum of ||A^{2^k}||_F^{2^-k}, k = 0, 1, ...
  std::vector<double> upper_sequence;
  std::string note;

  UnitGate gate(double margin = tau_num()) const;
};

/// Gelfand estimate by repeated squaring, with a lower bound taken from
/// exact structure (groupoid shape, normality) or traces of powers. When
/// `settle_below` is positive, squaring stops as soon as the upper bound
/// drops below it and only the determinant lower bound is computed.
SpectralReport spectral_radius(DenseOperator const& a, double tol = 1e-12,
                               double settle_below = 0.0);

cplx plain_det(DenseOperator const& a);

/// Solves a X = b by partially pivoted elimination. Returns nothing if a
/// pivot falls below `pivot_tol` times the largest entry of a.
std::optional<DenseOperator> solve(DenseOperator const& a,
                                   DenseOperator const& b,
                                   double pivot_tol = 1e-13);

/// Fuglede-Kadison determinant exp(tr_w(log|a|)) for the diagonal trace
/// tr_w(X) = sum_i w_i X_ii. Without weights the normalized trace 1/n is
/// used, giving |det a|^{1/n}. Singular input yields 0.
///
/// The result is the determinant of a trace only when a is block diagonal
/// with respect to the level sets of w, which is the case for operators on
/// carrier (x) dialect.
double fk_det(DenseOperator const& a,
              std::optional<std::vector<double>> const& weights = std::nullopt);

/// Block diagonal sum; carriers must be disjoint.
DenseOperator direct_sum(DenseOperator const& a, DenseOperator const& b);
/// Kronecker product. Row (i, j) of the result is labelled (i*|b| + j, 0).
DenseOperator tensor(DenseOperator const& a, DenseOperator const& b);

} // namespace goi

#endif
