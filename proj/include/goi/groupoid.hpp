#ifndef GOI_GROUPOID_HPP
#define GOI_GROUPOID_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "goi/core.hpp"
#include "goi/linalg.hpp"

namespace goi {

/// A word over {L, R} read as a composite isometry: "RL" is R after L, so
/// the first letter is the outermost one. R n = 2n, L n = 2n + 1.
class AddressWord {
public:
  AddressWord() = default;
  explicit AddressWord(std::string letters);

  std::string const& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }

  std::uint64_t apply(std::uint64_t n) const;
  /// Partial inverse: defined iff n lies in the range of the word.
  std::optional<std::uint64_t> strip(std::uint64_t n) const;

  bool is_prefix_of(AddressWord const& other) const;
  AddressWord then(AddressWord const& inner) const {
    return AddressWord(letters_ + inner.letters_);
  }
  /// Word with `p` as outermost prefix.
  AddressWord under(AddressWord const& p) const { return p.then(*this); }

  auto operator<=>(AddressWord const&) const = default;

private:
  std::string letters_;
};

/// weight * target * source^*: maps source(n) to target(n).
struct WordTerm {
  AddressWord target;
  AddressWord source;
  cplx weight = 1.0;

  auto operator<=>(WordTerm const& o) const {
    if (auto c = target <=> o.target; c != 0)
      return c;
    return source <=> o.source;
  }
  bool operator==(WordTerm const& o) const {
    return target == o.target && source == o.source && weight == o.weight;
  }
};

struct Arrow {
  Index target;
  cplx weight = 1.0;
  bool operator==(Arrow const&) const = default;
};

/// Weighted partial injection on the basis of l2(N) (x) dialect slots: an
/// element of the normalising groupoid of the diagonal.
///
/// Three representations share one interface. A table is a finite graph. An
/// address operator is a finite sum of prefix replacements t s^* over
/// address words; it has infinite support but exact composition and
/// equality, and acts on `value` only. A rule is an opaque named
/// injection with an explicit partial inverse.
class PartialInjectionOp {
public:
  enum class Kind { table, address, rule };

  using RuleFn = std::function<std::optional<Arrow>(Index)>;

  /// The zero operator (an empty table).
  PartialInjectionOp() = default;

  /// Throws WeightError on a non-unimodular weight and DisjointnessError if
  /// two sources share a target.
  static PartialInjectionOp table(std::map<Index, Arrow> graph);
  static PartialInjectionOp table(
      std::vector<std::pair<std::uint64_t, std::uint64_t>> const& arrows);
  static PartialInjectionOp address(std::vector<WordTerm> terms);
  static PartialInjectionOp rule(std::string name, RuleFn forward,
                                 RuleFn inverse);
  /// Identity on a finite set of indices.
  static PartialInjectionOp projection(std::vector<Index> const& support);

  Kind kind() const { return kind_; }
  std::string const& name() const;
  std::map<Index, Arrow> const& graph() const { return graph_; }
  std::vector<WordTerm> const& terms() const { return terms_; }

  std::optional<Arrow> apply(Index i) const;
  std::optional<Arrow> apply_inverse(Index i) const;

  /// Exactly zero (finite representations only; rules are never zero).
  bool is_zero() const;
  /// Number of arrows of a table, of terms of an address operator.
  std::size_t support_size() const;
  std::vector<Index> domain() const;   // tables only
  std::vector<Index> codomain() const; // tables only

  /// Exact equality; address operators are compared in reduced form. Rules
  /// only compare equal to themselves.
  bool operator==(PartialInjectionOp const& other) const;

  /// Table with weights compared up to `tol`.
  bool approx_equal(PartialInjectionOp const& other, double tol) const;

  /// Address operator in reduced form (sibling terms merged, sorted).
  PartialInjectionOp reduced() const;

private:
  Kind kind_ = Kind::table;
  std::map<Index, Arrow> graph_;
  std::map<Index, Arrow> inverse_graph_;
  std::vector<WordTerm> terms_;
  struct RuleImpl {
    std::string name;
    RuleFn forward;
    RuleFn inverse;
  };
  std::shared_ptr<RuleImpl const> rule_;
};

PartialInjectionOp r_isometry();
PartialInjectionOp l_isometry();
PartialInjectionOp identity_op();

/// u after v.
PartialInjectionOp compose(PartialInjectionOp const& u,
                           PartialInjectionOp const& v);
PartialInjectionOp adjoint(PartialInjectionOp const& u);
/// Sum of operators with disjoint domains and disjoint codomains.
PartialInjectionOp sum_disjoint(PartialInjectionOp const& u,
                                PartialInjectionOp const& v);
/// R u R* + L v L*.
PartialInjectionOp odot(PartialInjectionOp const& u,
                        PartialInjectionOp const& v);
/// L R*.
PartialInjectionOp tta();
/// p u p* for an address word p.
PartialInjectionOp conjugate(PartialInjectionOp const& u, AddressWord const& p);
/// Restriction (1 - c) u (1 - c) for a projection c of the same kind.
PartialInjectionOp restrict_outside(PartialInjectionOp const& u,
                                    PartialInjectionOp const& c);

/// u = u* and u^3 = u. Rules are checked on indices 0..budget.
bool is_partial_symmetry(PartialInjectionOp const& u,
                         std::uint64_t budget = 1024);

struct Nilpotent {
  std::uint64_t degree;
};
struct Cyclic {
  Index witness;
};
struct Exceeded {};
using NilpotencyResult = std::variant<Nilpotent, Cyclic, Exceeded>;

inline constexpr std::uint64_t kOrbitBudget = 10000;

/// Orbit exploration. Tables default to their full domain; rules need seeds.
/// Address operators are powered symbolically (seeds are then only used to
/// locate a cycle witness).
NilpotencyResult nilpotency(PartialInjectionOp const& u,
                            std::optional<std::vector<Index>> seeds = std::nullopt,
                            std::uint64_t budget = kOrbitBudget);

std::uint64_t beta_encode(std::uint64_t n, std::uint64_t m);
std::pair<std::uint64_t, std::uint64_t> beta_decode(std::uint64_t k);

/// k = beta(n, m) -> beta(u n, v m). Slots pass through.
PartialInjectionOp internal_tensor(PartialInjectionOp const& u,
                                   PartialInjectionOp const& v);
/// internal_tensor(identity, u).
PartialInjectionOp bang(PartialInjectionOp const& u);
/// beta(beta(p, q), r) -> beta(p, beta(q, r)).
PartialInjectionOp gamma_assoc();
/// n -> n + 1, a rule that is neither nilpotent nor cyclic.
PartialInjectionOp shift_rule();

/// Matrix of u on a finite window. Column s holds the image of s.
DenseOperator to_dense(PartialInjectionOp const& u,
                       std::vector<Index> const& window);

/// Element ((x_n), p) of Z^(Z) x| Z with the product
/// ((x_n), p).((y_n), q) = ((x_{n-q} + y_n), p + q).
struct GroupElement {
  std::map<std::int64_t, std::int64_t> x; // nonzero entries only
  std::int64_t p = 0;

  std::int64_t at(std::int64_t n) const {
    auto it = x.find(n);
    return it == x.end() ? 0 : it->second;
  }
  bool operator==(GroupElement const&) const = default;
  auto operator<=>(GroupElement const&) const = default;
};

GroupElement g_identity();
GroupElement g_a();
GroupElement g_b();
GroupElement g_compose(GroupElement const& g, GroupElement const& h);
GroupElement g_inverse(GroupElement const& g);

/// A word such as a^2 b^1 a^48 b^2, as (letter, exponent) pairs.
using MonoidWord = std::vector<std::pair<char, unsigned>>;
GroupElement monoid_word_eval(MonoidWord const& word);

} // namespace goi

#endif
