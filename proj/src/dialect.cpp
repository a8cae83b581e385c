#include "goi/dialect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace goi {

Dialect::Dialect(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty())
    throw Error("a dialect needs at least one block");
  for (auto k : blocks_)
    if (k == 0)
      throw Error("dialect blocks must have positive dimension");
  index();
}

void Dialect::index() {
  offsets_.clear();
  owner_.clear();
  total_ = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    offsets_.push_back(total_);
    total_ += blocks_[b];
    owner_.insert(owner_.end(), blocks_[b], b);
  }
}

double PseudoTrace::unit_value() const {
  return std::accumulate(weights.begin(), weights.end(), 0.0);
}

bool PseudoTrace::faithful() const {
  return std::all_of(weights.begin(), weights.end(),
                     [](double w) { return w > 0.0; });
}

DialectProduct::DialectProduct(Dialect left, Dialect right)
    : left_(std::move(left)), right_(std::move(right)) {
  std::vector<std::size_t> blocks;
  for (auto k : left_.blocks())
    for (auto l : right_.blocks())
      blocks.push_back(k * l);
  product_ = Dialect(blocks);
  std::size_t na = left_.total(), nb = right_.total();
  coord_.resize(na * nb);
  split_.resize(na * nb);
  for (std::size_t a = 0; a < na; ++a) {
    std::size_t i = left_.block_of(a), x = a - left_.offset(i);
    for (std::size_t b = 0; b < nb; ++b) {
      std::size_t j = right_.block_of(b), y = b - right_.offset(j);
      std::size_t block = i * right_.block_count() + j;
      std::size_t c = product_.offset(block) + x * right_.blocks()[j] + y;
      coord_[a * nb + b] = c;
      split_[c] = {a, b};
    }
  }
}

std::size_t DialectProduct::coord(std::size_t a, std::size_t b) const {
  return coord_[a * right_.total() + b];
}

std::pair<std::size_t, std::size_t> DialectProduct::split(std::size_t c) const {
  return split_[c];
}

PseudoTrace tensor(PseudoTrace const& a, PseudoTrace const& b) {
  PseudoTrace t;
  t.weights.clear();
  for (double x : a.weights)
    for (double y : b.weights)
      t.weights.push_back(x * y);
  return t;
}

Dialect direct_sum(Dialect const& a, Dialect const& b) {
  std::vector<std::size_t> blocks = a.blocks();
  blocks.insert(blocks.end(), b.blocks().begin(), b.blocks().end());
  return Dialect(blocks);
}

std::vector<Index> DialectalOperator::window() const {
  std::vector<Index> w;
  w.reserve(carrier.size() * dialect.total());
  for (auto loc : carrier)
    for (std::size_t c = 0; c < dialect.total(); ++c)
      w.push_back(Index{loc, c});
  return w;
}

DenseOperator DialectalOperator::dense() const {
  if (symbolic())
    return to_dense(table(), window());
  auto const& d = std::get<DenseOperator>(op);
  auto w = window();
  if (d.carrier() == w)
    return d;
  return d.aligned_to(w);
}

std::vector<double> DialectalOperator::weights() const {
  if (trace.weights.size() != dialect.block_count())
    throw CarrierError("pseudo-trace and dialect have different block counts");
  std::vector<double> w;
  w.reserve(carrier.size() * dialect.total());
  for (std::size_t l = 0; l < carrier.size(); ++l)
    for (std::size_t c = 0; c < dialect.total(); ++c) {
      std::size_t b = dialect.block_of(c);
      w.push_back(trace.weights[b] / static_cast<double>(dialect.blocks()[b]));
    }
  return w;
}

bool DialectalOperator::is_zero() const {
  if (symbolic())
    return table().is_zero();
  return std::get<DenseOperator>(op).is_zero();
}

DialectalOperator zero_operator(std::vector<std::uint64_t> carrier,
                                Dialect dialect, PseudoTrace trace) {
  return DialectalOperator{std::move(carrier), std::move(dialect),
                           std::move(trace), PartialInjectionOp()};
}

void validate(DialectalOperator const& a) {
  if (!std::is_sorted(a.carrier.begin(), a.carrier.end()) ||
      std::adjacent_find(a.carrier.begin(), a.carrier.end()) != a.carrier.end())
    throw CarrierError("carrier must be sorted and unique");
  if (a.trace.weights.size() != a.dialect.block_count())
    throw CarrierError("pseudo-trace and dialect have different block counts");
  auto in_window = [&](Index i) {
    return std::binary_search(a.carrier.begin(), a.carrier.end(), i.value) &&
           i.slot < a.dialect.total();
  };
  if (a.symbolic()) {
    auto const& t = a.table();
    if (t.kind() != PartialInjectionOp::Kind::table)
      throw UnsupportedRuleError("dialectal operators must be tables");
    for (auto const& [s, arrow] : t.graph()) {
      if (!in_window(s))
        throw CarrierError("operator acts outside its carrier at " + to_string(s));
      if (!in_window(arrow.target))
        throw CarrierError("operator maps outside its carrier at " +
                           to_string(arrow.target));
      if (a.dialect.block_of(s.slot) != a.dialect.block_of(arrow.target.slot))
        throw CarrierError("operator mixes dialect blocks at " + to_string(s));
    }
    if (!t.approx_equal(adjoint(t), tau_num()))
      throw NumericError("symbolic operator is not hermitian");
    return;
  }
  DenseOperator d = std::get<DenseOperator>(a.op);
  auto w = a.window();
  if (d.carrier() != w) {
    if (d.size() != w.size())
      throw CarrierError("dense payload does not match carrier (x) dialect");
    d = d.aligned_to(w);
  }
  std::size_t dt = a.dialect.total();
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (a.dialect.block_of(i % dt) != a.dialect.block_of(j % dt) &&
          std::abs(d(i, j)) > tau_num())
        throw CarrierError("operator mixes dialect blocks");
  if (!is_hermitian(d))
    throw NumericError("dense operator is not hermitian");
  if (operator_norm(d) > 1.0 + tau_num())
    throw NumericError("operator norm exceeds 1");
}

namespace {

// Re-indexes a payload through a coordinate map (old coord, copy) -> new
// coord applied on every copy in 0..copies-1.
template <typename CoordMap>
DialectalOperator extend_dialect(DialectalOperator const& a,
                                 DialectProduct const& prod,
                                 std::size_t copies, CoordMap map,
                                 PseudoTrace trace) {
  DialectalOperator r{a.carrier, prod.product(), std::move(trace), {}};
  if (a.symbolic()) {
    std::map<Index, Arrow> g;
    for (auto const& [s, arrow] : a.table().graph())
      for (std::size_t k = 0; k < copies; ++k)
        g[Index{s.value, map(s.slot, k)}] =
            Arrow{Index{arrow.target.value, map(arrow.target.slot, k)},
                  arrow.weight};
    r.op = PartialInjectionOp::table(std::move(g));
    return r;
  }
  DenseOperator src = a.dense();
  std::size_t da = a.dialect.total(), dn = prod.product().total();
  DenseOperator out(r.window());
  for (std::size_t li = 0; li < a.carrier.size(); ++li)
    for (std::size_t x = 0; x < da; ++x)
      for (std::size_t lj = 0; lj < a.carrier.size(); ++lj)
        for (std::size_t y = 0; y < da; ++y) {
          cplx v = src(li * da + x, lj * da + y);
          if (v == cplx(0.0))
            continue;
          for (std::size_t k = 0; k < copies; ++k)
            out(li * dn + map(x, k), lj * dn + map(y, k)) = v;
        }
  r.op = std::move(out);
  return r;
}

} // namespace

DialectalOperator dagger(DialectalOperator const& a, Dialect const& other,
                         PseudoTrace const& other_trace) {
  DialectProduct prod(a.dialect, other);
  return extend_dialect(
      a, prod, other.total(),
      [&](std::size_t x, std::size_t k) { return prod.coord(x, k); },
      tensor(a.trace, other_trace));
}

DialectalOperator ddagger(DialectalOperator const& b, Dialect const& other,
                          PseudoTrace const& other_trace) {
  DialectProduct prod(other, b.dialect);
  return extend_dialect(
      b, prod, other.total(),
      [&](std::size_t y, std::size_t k) { return prod.coord(k, y); },
      tensor(other_trace, b.trace));
}

DialectalOperator extend(DialectalOperator const& a,
                         std::vector<std::uint64_t> const& carrier) {
  DialectalOperator r{carrier, a.dialect, a.trace, a.op};
  if (!a.symbolic())
    r.op = a.dense().extended(r.window());
  return r;
}

DialectalOperator compress(DialectalOperator const& a,
                           std::vector<std::uint64_t> const& carrier) {
  DialectalOperator r{carrier, a.dialect, a.trace, {}};
  if (a.symbolic()) {
    std::map<Index, Arrow> g;
    for (auto const& [s, arrow] : a.table().graph())
      if (std::binary_search(carrier.begin(), carrier.end(), s.value) &&
          std::binary_search(carrier.begin(), carrier.end(), arrow.target.value))
        g[s] = arrow;
    r.op = PartialInjectionOp::table(std::move(g));
  } else {
    r.op = a.dense().restricted(r.window());
  }
  return r;
}

DialectalOperator add(DialectalOperator const& a, DialectalOperator const& b) {
  if (a.carrier != b.carrier || !(a.dialect == b.dialect))
    throw CarrierError("add: carriers or dialects differ");
  DialectalOperator r{a.carrier, a.dialect, a.trace, {}};
  if (a.symbolic() && b.symbolic()) {
    try {
      r.op = sum_disjoint(a.table(), b.table());
      return r;
    } catch (DisjointnessError const&) {
    }
  }
  r.op = add(a.dense(), b.dense());
  return r;
}

DialectalOperator multiply(DialectalOperator const& a,
                           DialectalOperator const& b) {
  if (a.carrier != b.carrier || !(a.dialect == b.dialect))
    throw CarrierError("multiply: carriers or dialects differ");
  DialectalOperator r{a.carrier, a.dialect, a.trace, {}};
  if (a.symbolic() && b.symbolic())
    r.op = compose(a.table(), b.table());
  else
    r.op = mat_mul(a.dense(), b.dense());
  return r;
}

bool same_operator(DialectalOperator const& a, DialectalOperator const& b,
                   double tol) {
  if (a.carrier != b.carrier || !(a.dialect == b.dialect))
    return false;
  if (a.symbolic() && b.symbolic())
    return a.table() == b.table();
  return max_abs_diff(a.dense(), b.dense()) <= tol;
}

std::vector<std::uint64_t> carrier_union(std::vector<std::uint64_t> const& a,
                                         std::vector<std::uint64_t> const& b) {
  std::vector<std::uint64_t> r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

std::vector<std::uint64_t> carrier_intersection(
    std::vector<std::uint64_t> const& a, std::vector<std::uint64_t> const& b) {
  std::vector<std::uint64_t> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(r));
  return r;
}

std::vector<std::uint64_t> carrier_difference(
    std::vector<std::uint64_t> const& a, std::vector<std::uint64_t> const& b) {
  std::vector<std::uint64_t> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(r));
  return r;
}

} // namespace goi
