#ifndef GOI_DIALECT_HPP
#define GOI_DIALECT_HPP

#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "goi/groupoid.hpp"
#include "goi/linalg.hpp"

namespace goi {

/// A finite-dimensional algebra M_{k_1} + ... + M_{k_l}. Coordinates
/// 0..total()-1 are laid out block after block.
class Dialect {
public:
  Dialect() : blocks_{1} { index(); }
  explicit Dialect(std::vector<std::size_t> blocks);

  static Dialect trivial() { return Dialect(); }

  std::vector<std::size_t> const& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t total() const { return total_; }
  std::size_t offset(std::size_t block) const { return offsets_[block]; }
  std::size_t block_of(std::size_t coord) const { return owner_[coord]; }

  bool operator==(Dialect const& o) const { return blocks_ == o.blocks_; }

private:
  std::vector<std::size_t> blocks_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> owner_;
  std::size_t total_ = 0;
  void index();
};

/// alpha = sum_i lambda_i tr_i with tr_i the normalized trace of block i.
struct PseudoTrace {
  std::vector<double> weights{1.0};

  double unit_value() const;
  /// All weights strictly positive.
  bool faithful() const;
  bool operator==(PseudoTrace const&) const = default;
};

/// Coordinates of A (x) B: blocks (i, j) in lexicographic order, inside a
/// block the left coordinate is the major one.
class DialectProduct {
public:
  DialectProduct(Dialect left, Dialect right);

  Dialect const& left() const { return left_; }
  Dialect const& right() const { return right_; }
  Dialect const& product() const { return product_; }

  std::size_t coord(std::size_t a, std::size_t b) const;
  std::pair<std::size_t, std::size_t> split(std::size_t c) const;

private:
  Dialect left_, right_, product_;
  std::vector<std::size_t> coord_;               // a * |B| + b -> c
  std::vector<std::pair<std::size_t, std::size_t>> split_;
};

PseudoTrace tensor(PseudoTrace const& a, PseudoTrace const& b);
Dialect direct_sum(Dialect const& a, Dialect const& b);

using OperatorPayload = std::variant<DenseOperator, PartialInjectionOp>;

/// An operator on carrier (x) dialect together with its pseudo-trace.
///
/// The payload is either a dense matrix on the window (see window()) or a
/// table on the same indices: value = location, slot = dialect coordinate.
/// Projects require the payload to be hermitian of norm at most 1; products
/// handed to ldet need not be.
struct DialectalOperator {
  std::vector<std::uint64_t> carrier; // sorted, unique
  Dialect dialect;
  PseudoTrace trace;
  OperatorPayload op;

  bool symbolic() const {
    return std::holds_alternative<PartialInjectionOp>(op);
  }
  PartialInjectionOp const& table() const {
    return std::get<PartialInjectionOp>(op);
  }
  /// Indices (location, coordinate), location major.
  std::vector<Index> window() const;
  /// Dense payload (symbolic payloads are converted on the window).
  DenseOperator dense() const;
  /// Weight of each window index for tr (x) alpha: lambda_b / k_b, the
  /// location trace being unnormalized.
  std::vector<double> weights() const;

  bool is_zero() const;
};

/// Zero operator.
DialectalOperator zero_operator(std::vector<std::uint64_t> carrier,
                                Dialect dialect = {}, PseudoTrace trace = {});

/// Throws CarrierError / NumericError when the payload leaves the window,
/// mixes dialect blocks, is not hermitian or has norm above 1 + tau.
void validate(DialectalOperator const& a);

/// Dialect extension A (x) 1_B; result dialect A (x) B.
DialectalOperator dagger(DialectalOperator const& a, Dialect const& other,
                         PseudoTrace const& other_trace);
/// (Id (x) tau)(B (x) 1_A); result dialect A (x) B.
DialectalOperator ddagger(DialectalOperator const& b, Dialect const& other,
                          PseudoTrace const& other_trace);

/// Zero extension to a larger carrier.
DialectalOperator extend(DialectalOperator const& a,
                         std::vector<std::uint64_t> const& carrier);
/// Compression to a subset of the carrier.
DialectalOperator compress(DialectalOperator const& a,
                           std::vector<std::uint64_t> const& carrier);

/// a + b on the same carrier and dialect.
DialectalOperator add(DialectalOperator const& a, DialectalOperator const& b);
/// a b on the same carrier and dialect.
DialectalOperator multiply(DialectalOperator const& a, DialectalOperator const& b);

/// Exact equality for symbolic payloads, entrywise within tol otherwise.
bool same_operator(DialectalOperator const& a, DialectalOperator const& b,
                   double tol = tau_num());

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// A project (a, (A, alpha)) on a finite carrier. The wager may be +inf.
struct Project {
  double wager = 0.0;
  DialectalOperator op;

  std::vector<std::uint64_t> const& carrier() const { return op.carrier; }
  Dialect const& dialect() const { return op.dialect; }
  PseudoTrace const& trace() const { return op.trace; }
};

std::vector<std::uint64_t> carrier_union(std::vector<std::uint64_t> const& a,
                                         std::vector<std::uint64_t> const& b);
std::vector<std::uint64_t> carrier_intersection(
    std::vector<std::uint64_t> const& a, std::vector<std::uint64_t> const& b);
std::vector<std::uint64_t> carrier_difference(
    std::vector<std::uint64_t> const& a, std::vector<std::uint64_t> const& b);

} // namespace goi

#endif
