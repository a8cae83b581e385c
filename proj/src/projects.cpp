#include "goi/projects.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace goi {

Delocation::Delocation(std::map<std::uint64_t, std::uint64_t> map)
    : map_(std::move(map)) {
  std::set<std::uint64_t> seen;
  for (auto const& [s, t] : map_)
    if (!seen.insert(t).second)
      throw CarrierError("delocation is not injective at target " +
                         std::to_string(t));
}

std::vector<std::uint64_t> Delocation::source() const {
  std::vector<std::uint64_t> r;
  for (auto const& [s, t] : map_)
    r.push_back(s);
  return r;
}

std::vector<std::uint64_t> Delocation::target() const {
  std::vector<std::uint64_t> r;
  for (auto const& [s, t] : map_)
    r.push_back(t);
  std::sort(r.begin(), r.end());
  return r;
}

std::uint64_t Delocation::operator()(std::uint64_t loc) const {
  auto it = map_.find(loc);
  return it == map_.end() ? loc : it->second;
}

PartialInjectionOp Delocation::theta() const {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> arrows(map_.begin(),
                                                              map_.end());
  return PartialInjectionOp::table(arrows);
}

Delocation Delocation::inverse() const {
  std::map<std::uint64_t, std::uint64_t> inv;
  for (auto const& [s, t] : map_)
    inv[t] = s;
  return Delocation(std::move(inv));
}

Delocation make_delocation(std::vector<std::uint64_t> const& source,
                           std::vector<std::uint64_t> const& target) {
  if (source.size() != target.size())
    throw CarrierError("delocation: source and target sizes differ");
  auto s = source, t = target;
  std::sort(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  std::map<std::uint64_t, std::uint64_t> m;
  for (std::size_t i = 0; i < s.size(); ++i)
    m[s[i]] = t[i];
  return Delocation(std::move(m));
}

DialectalOperator relocate(DialectalOperator const& a, Delocation const& theta) {
  std::vector<std::uint64_t> carrier;
  for (auto loc : a.carrier)
    carrier.push_back(theta(loc));
  std::sort(carrier.begin(), carrier.end());
  if (std::adjacent_find(carrier.begin(), carrier.end()) != carrier.end())
    throw CarrierError("relocate: image carrier has a clash");
  DialectalOperator r{carrier, a.dialect, a.trace, {}};
  if (a.symbolic()) {
    std::map<Index, Arrow> g;
    for (auto const& [s, arrow] : a.table().graph())
      g[Index{theta(s.value), s.slot}] =
          Arrow{Index{theta(arrow.target.value), arrow.target.slot}, arrow.weight};
    r.op = PartialInjectionOp::table(std::move(g));
    return r;
  }
  DenseOperator d = a.dense();
  std::vector<Index> labels;
  for (auto const& i : d.carrier())
    labels.push_back(Index{theta(i.value), i.slot});
  r.op = DenseOperator(labels, d.entries()).aligned_to(r.window());
  return r;
}

Project relocate(Project const& a, Delocation const& theta) {
  return Project{a.wager, relocate(a.op, theta)};
}

Project build_fax(Delocation const& theta, Delocation const& phi) {
  if (theta.source() != phi.source())
    throw CarrierError("fax: delocations have different sources");
  auto qt = theta.target(), qp = phi.target();
  if (!carrier_intersection(qt, qp).empty())
    throw CarrierError("fax: delocation targets overlap");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> arrows;
  for (auto const& [s, t] : theta.map()) {
    arrows.emplace_back(phi(s), t);
    arrows.emplace_back(t, phi(s));
  }
  DialectalOperator op{carrier_union(qt, qp), Dialect(), PseudoTrace(),
                       PartialInjectionOp::table(arrows)};
  return Project{0.0, std::move(op)};
}

Project zero_project(std::vector<std::uint64_t> carrier) {
  return Project{0.0, zero_operator(std::move(carrier))};
}

namespace {

// s * w with 0 * inf = 0.
double wager_scale(double s, double w) {
  return (s == 0.0 || w == 0.0) ? 0.0 : s * w;
}

// Block-diagonal superposition mu A + lambda B on equal carriers.
Project superpose(Project const& a, double mu, Project const& b, double lambda) {
  if (a.carrier() != b.carrier())
    throw CarrierError("sum: carriers differ");
  if (!(mu > 0.0) || !(lambda > 0.0))
    throw WeightError("sum: coefficients must be positive");
  Dialect d = direct_sum(a.dialect(), b.dialect());
  PseudoTrace t;
  t.weights.clear();
  for (double w : a.trace().weights)
    t.weights.push_back(mu * w);
  for (double w : b.trace().weights)
    t.weights.push_back(lambda * w);
  std::size_t shift = a.dialect().total();
  DialectalOperator r{a.carrier(), d, t, {}};
  if (a.op.symbolic() && b.op.symbolic()) {
    std::map<Index, Arrow> g = a.op.table().graph();
    for (auto const& [s, arrow] : b.op.table().graph())
      g[Index{s.value, s.slot + shift}] =
          Arrow{Index{arrow.target.value, arrow.target.slot + shift}, arrow.weight};
    r.op = PartialInjectionOp::table(std::move(g));
  } else {
    DenseOperator out(r.window());
    DenseOperator da = a.op.dense(), db = b.op.dense();
    std::size_t na = a.dialect().total(), nb = b.dialect().total(),
                n = d.total();
    std::size_t locs = a.carrier().size();
    for (std::size_t li = 0; li < locs; ++li)
      for (std::size_t lj = 0; lj < locs; ++lj) {
        for (std::size_t x = 0; x < na; ++x)
          for (std::size_t y = 0; y < na; ++y)
            out(li * n + x, lj * n + y) = da(li * na + x, lj * na + y);
        for (std::size_t x = 0; x < nb; ++x)
          for (std::size_t y = 0; y < nb; ++y)
            out(li * n + shift + x, lj * n + shift + y) =
                db(li * nb + x, lj * nb + y);
      }
    r.op = std::move(out);
  }
  return Project{wager_scale(mu, a.wager) + wager_scale(lambda, b.wager),
                 std::move(r)};
}

} // namespace

Project tensor_project(Project const& a, Project const& b) {
  if (!carrier_intersection(a.carrier(), b.carrier()).empty())
    throw CarrierError("tensor: carriers overlap");
  auto u = carrier_union(a.carrier(), b.carrier());
  DialectalOperator ad = extend(dagger(a.op, b.dialect(), b.trace()), u);
  DialectalOperator bd = extend(ddagger(b.op, a.dialect(), a.trace()), u);
  double w = wager_scale(b.trace().unit_value(), a.wager) +
             wager_scale(a.trace().unit_value(), b.wager);
  return Project{w, add(ad, bd)};
}

Project plug_project(Project const& f, Project const& a) {
  Measure m = meas_mat(f.op, a.op);
  if (m.is_indeterminate())
    throw IndeterminateError("plug: " + m.note);
  if (m.is_infinite())
    throw NotOrthogonalError("plug: the measurement is infinite");
  DialectalOperator op = plug_dialectal(f.op, a.op);
  double w = wager_scale(a.trace().unit_value(), f.wager) +
             wager_scale(f.trace().unit_value(), a.wager) + m.value;
  return Project{w, std::move(op)};
}

Project sum_lambda(Project const& a, double lambda, Project const& b) {
  return superpose(a, 1.0, b, lambda);
}

Project extend_carrier(Project const& a, std::vector<std::uint64_t> const& q) {
  if (!carrier_intersection(a.carrier(), q).empty())
    throw CarrierError("extend: new locations overlap the carrier");
  return Project{a.wager, extend(a.op, carrier_union(a.carrier(), q))};
}

Project with_bar(Project const& f, Project const& g) {
  auto u = carrier_union(f.carrier(), g.carrier());
  Project fe{f.wager, extend(f.op, u)};
  Project ge{g.wager, extend(g.op, u)};
  return superpose(fe, 0.5, ge, 0.5);
}

Project with_bar(Project const& f, Project const& g, Delocation const& theta1,
                 Delocation const& theta2) {
  return with_bar(relocate(f, theta1), relocate(g, theta2));
}

Project build_with_project(Delocation const& theta1, Delocation const& theta2,
                           Delocation const& theta3, Delocation const& phi) {
  if (theta1.source() != phi.source())
    throw CarrierError("With: theta1 and phi must share their source");
  std::vector<std::vector<std::uint64_t>> parts{
      theta1.source(), theta2.source(), theta3.source(), theta1.target(),
      phi.target(),    theta2.target(), theta3.target()};
  std::vector<std::uint64_t> carrier;
  for (auto const& p : parts) {
    if (!carrier_intersection(carrier, p).empty())
      throw CarrierError("With: carriers overlap");
    carrier = carrier_union(carrier, p);
  }
  std::map<Index, Arrow> g;
  auto link = [&](std::uint64_t x, std::uint64_t y, std::uint64_t slot) {
    g[Index{x, slot}] = Arrow{Index{y, slot}, 1.0};
    g[Index{y, slot}] = Arrow{Index{x, slot}, 1.0};
  };
  for (auto const& [s, t] : theta1.map())
    link(s, t, 0);
  for (auto const& [s, t] : theta2.map())
    link(s, t, 0);
  for (auto const& [s, t] : theta1.map())
    link(phi(s), t, 1);
  for (auto const& [s, t] : theta3.map())
    link(s, t, 1);
  PseudoTrace kappa;
  kappa.weights = {0.5, 0.5};
  DialectalOperator op{carrier, Dialect({1, 1}), kappa,
                       PartialInjectionOp::table(std::move(g))};
  return Project{0.0, std::move(op)};
}

std::optional<FactorEmbedding> factor_embedding(PseudoTrace const& trace,
                                                Dialect const& dialect,
                                                std::size_t max_multiplicity) {
  auto const& k = dialect.blocks();
  if (trace.weights.size() != k.size() || !trace.faithful())
    return std::nullopt;
  std::vector<double> r;
  for (std::size_t i = 0; i < k.size(); ++i)
    r.push_back(trace.weights[i] / static_cast<double>(k[i]));
  for (std::size_t m0 = 1; m0 <= max_multiplicity; ++m0) {
    double unit = r[0] / static_cast<double>(m0);
    FactorEmbedding e;
    bool ok = true;
    for (std::size_t i = 0; i < k.size() && ok; ++i) {
      double m = r[i] / unit;
      double mr = std::round(m);
      if (mr < 1.0 || mr > static_cast<double>(max_multiplicity) ||
          std::abs(m - mr) > 1e-9 * std::max(1.0, m))
        ok = false;
      else
        e.multiplicities.push_back(static_cast<std::size_t>(mr));
    }
    if (!ok)
      continue;
    for (std::size_t i = 0; i < k.size(); ++i)
      e.size += e.multiplicities[i] * k[i];
    e.scale = trace.unit_value();
    return e;
  }
  return std::nullopt;
}

PromisingReport is_promising(Project const& a) {
  PromisingReport rep;
  auto fail = [&](std::string const& why) {
    if (rep.detail.empty())
      rep.detail = why;
  };
  auto const& op = a.op;

  if (auto e = factor_embedding(op.trace, op.dialect)) {
    rep.dialect = true;
    rep.embedding = *e;
  } else {
    fail("dialect: no factor embedding matches the pseudo-trace");
  }

  rep.pseudo_trace = op.trace.faithful() &&
                     std::abs(op.trace.unit_value() - 1.0) <= tau_num();
  if (!rep.pseudo_trace)
    fail("pseudo-trace: not faithful or not normalized");

  rep.wager = std::isfinite(a.wager) && std::abs(a.wager) <= tau_num();
  if (!rep.wager)
    fail("wager: nonzero");

  Dialect const& d = op.dialect;
  if (op.symbolic()) {
    auto const& t = op.table();
    bool blocks = t.kind() == PartialInjectionOp::Kind::table;
    bool diag_free = blocks;
    if (blocks)
      for (auto const& [s, arrow] : t.graph()) {
        if (s.slot >= d.total() || arrow.target.slot >= d.total() ||
            d.block_of(s.slot) != d.block_of(arrow.target.slot))
          blocks = false;
        if (s.value == arrow.target.value)
          diag_free = false;
      }
    rep.symmetry = blocks && t.approx_equal(adjoint(t), tau_num());
    rep.traces = diag_free;
  } else {
    DenseOperator m = op.dense();
    std::size_t n = d.total();
    bool blocks = true, diag_free = true;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (std::abs(m(i, j)) <= tau_num())
          continue;
        if (d.block_of(i % n) != d.block_of(j % n))
          blocks = false;
        if (i / n == j / n)
          diag_free = false;
      }
    rep.symmetry = blocks && is_hermitian(m) && is_weighted_partial_permutation(m);
    rep.traces = diag_free;
  }
  if (!rep.symmetry)
    fail("symmetry: not a partial symmetry of the groupoid");
  if (!rep.traces)
    fail("traces: a diagonal dialect block is nonzero");
  return rep;
}

void validate(ConductWitnessSet const& s) {
  for (auto const& m : s.members)
    if (m.carrier() != s.carrier)
      throw CarrierError("witness set: member on a different carrier");
}

bool obs_equiv(Project const& a, Project const& a2, ConductWitnessSet const& w) {
  if (a.carrier() != a2.carrier())
    return false;
  for (auto const& t : w.members)
    if (!(measure_distance(sca_mat(a, t), sca_mat(a2, t)) <= tau_num()))
      return false;
  return true;
}

std::vector<WitnessRow> orthogonal_witness_suite(Project const& a,
                                                 ConductWitnessSet const& s) {
  std::vector<WitnessRow> rows;
  for (std::size_t i = 0; i < s.members.size(); ++i) {
    auto v = orthogonality(a, s.members[i]);
    rows.push_back(WitnessRow{i, v.value, v.orthogonal, v.suspicious});
  }
  return rows;
}

} // namespace goi
