#include "goi/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace goi {

Measure operator+(Measure const& a, Measure const& b) {
  if (a.is_indeterminate())
    return a;
  if (b.is_indeterminate())
    return b;
  if (a.is_infinite())
    return a;
  if (b.is_infinite())
    return b;
  return Measure::finite(a.value + b.value,
                         a.note.empty() ? b.note : a.note);
}

Measure operator*(double s, Measure const& m) {
  if (m.is_indeterminate())
    return m;
  if (m.is_infinite())
    return s == 0.0 ? Measure::finite(0.0) : m;
  return Measure::finite(s * m.value, m.note);
}

std::string to_string(Measure const& m) {
  switch (m.kind) {
  case Measure::Kind::infinite:
    return "inf";
  case Measure::Kind::indeterminate:
    return "indeterminate";
  case Measure::Kind::finite:
    break;
  }
  std::ostringstream os;
  os.precision(17);
  os << m.value;
  return os.str();
}

cplx pseudo_trace_eval(PseudoTrace const& alpha, Dialect const& dialect,
                       DenseOperator const& m) {
  if (m.size() != dialect.total() ||
      alpha.weights.size() != dialect.block_count())
    throw CarrierError("pseudo-trace evaluation: shape mismatch");
  cplx s = 0.0;
  for (std::size_t b = 0; b < dialect.block_count(); ++b) {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dialect.blocks()[b]; ++i)
      t += m(dialect.offset(b) + i, dialect.offset(b) + i);
    s += alpha.weights[b] * t / static_cast<double>(dialect.blocks()[b]);
  }
  return s;
}

namespace {

cplx weighted_trace(DenseOperator const& m, std::vector<double> const& w) {
  cplx s = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    s += w[i] * m(i, i);
  return s;
}

// Raw product of two matrices sharing one carrier order.
DenseOperator raw_mul(DenseOperator const& a, DenseOperator const& b) {
  std::size_t n = a.size();
  DenseOperator c(a.carrier());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      cplx x = a(i, k);
      if (x == cplx(0.0))
        continue;
      for (std::size_t j = 0; j < n; ++j)
        c(i, j) += x * b(k, j);
    }
  return c;
}

Measure symbolic_ldet(PartialInjectionOp const& t) {
  auto r = nilpotency(t);
  if (auto const* n = std::get_if<Nilpotent>(&r))
    return Measure::finite(0.0, "nilpotent of degree " + std::to_string(n->degree));
  if (auto const* c = std::get_if<Cyclic>(&r))
    return Measure::infinite("cycle through " + to_string(c->witness));
  return Measure::indeterminate("orbit budget exceeded");
}

} // namespace

SeriesValue ldet_series(DialectalOperator const& m, double target,
                        unsigned max_terms) {
  DenseOperator d = m.dense();
  auto w = m.weights();
  double wsum = 0.0;
  for (double x : w)
    wsum += std::abs(x);
  SeriesValue out{0.0, kInfinity, 0};
  if (d.size() == 0) {
    out.remainder_bound = 0.0;
    return out;
  }
  // Find s with ||M^s||_F < 1 and c = max_{r<s} ||M^r||_F to bound the tail.
  std::vector<double> norms{frobenius_norm(DenseOperator::identity(d.carrier()))};
  DenseOperator p = d;
  for (unsigned k = 1; k <= max_terms; ++k) {
    out.value += weighted_trace(p, w) / static_cast<double>(k);
    out.terms = k;
    double nk = frobenius_norm(p);
    norms.push_back(nk);
    if (nk == 0.0) {
      out.remainder_bound = 0.0;
      return out;
    }
    // Tail bound using the smallest power s <= k with ||M^s|| < 1.
    for (unsigned s = 1; s <= k; ++s) {
      double q = norms[s];
      if (q >= 1.0)
        continue;
      double c = *std::max_element(norms.begin(), norms.begin() + s);
      c = std::max(c, 1.0);
      double e = std::floor(static_cast<double>(k + 1) / s);
      double bound =
          wsum * c * s * std::pow(q, e) / ((k + 1) * (1.0 - q));
      out.remainder_bound = std::min(out.remainder_bound, bound);
      break;
    }
    if (out.remainder_bound <= target)
      return out;
    p = raw_mul(p, d);
  }
  return out;
}

Measure ldet(DialectalOperator const& m) {
  if (m.symbolic() && m.table().kind() == PartialInjectionOp::Kind::table)
    return symbolic_ldet(m.table());
  DenseOperator d = m.dense();
  if (d.size() == 0 || d.is_zero())
    return Measure::finite(0.0);
  SpectralReport rep = spectral_radius(d, 1e-12, 1.0 - 2.0 * tau_num());
  switch (rep.gate()) {
  case UnitGate::straddle:
    return Measure::indeterminate("spectral bounds [" + std::to_string(rep.lower) +
                                  ", " + std::to_string(rep.upper) +
                                  "] straddle 1");
  case UnitGate::at_least:
    return Measure::infinite("spectral radius >= 1");
  case UnitGate::below:
    break;
  }
  if (rep.exact_zero)
    return Measure::finite(0.0, "nilpotent");

  std::size_t dt = m.dialect.total();
  std::size_t nb = m.dialect.block_count();
  std::vector<std::vector<std::size_t>> blocks(nb);
  for (std::size_t i = 0; i < d.size(); ++i)
    blocks[m.dialect.block_of(i % dt)].push_back(i);
  double scale = std::max(1.0, frobenius_norm(d));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (m.dialect.block_of(i % dt) != m.dialect.block_of(j % dt) &&
          std::abs(d(i, j)) > 1e-12 * scale)
        throw NumericError("ldet: operator mixes dialect blocks");

  double value = 0.0, phase = 0.0;
  for (std::size_t b = 0; b < nb; ++b) {
    if (blocks[b].empty())
      continue;
    std::vector<Index> sub;
    for (auto i : blocks[b])
      sub.push_back(d.carrier()[i]);
    cplx det = plain_det(one_minus(d.restricted(sub)));
    double wb = m.trace.weights[b] / static_cast<double>(m.dialect.blocks()[b]);
    if (det == cplx(0.0))
      return Measure::infinite("1 - M is singular");
    value -= wb * std::log(std::abs(det));
    phase -= wb * std::arg(det);
  }
  std::string note;
  if (std::abs(phase) > 1e-9)
    note = "imaginary part " + std::to_string(phase) + " dropped";
  if (rep.norm < 0.9 && d.size() <= 64) {
    SeriesValue s = ldet_series(m);
    if (std::abs(s.value.real() - value) > s.remainder_bound + 1e-9)
      note += (note.empty() ? "" : "; ") + std::string("series cross-check off by ") +
              std::to_string(std::abs(s.value.real() - value));
  }
  return Measure::finite(value, note);
}

DialectalOperator extended_product(DialectalOperator const& a,
                                   DialectalOperator const& b) {
  auto u = carrier_union(a.carrier, b.carrier);
  DialectalOperator ad = dagger(extend(a, u), b.dialect, b.trace);
  DialectalOperator bd = ddagger(extend(b, u), a.dialect, a.trace);
  return multiply(ad, bd);
}

Measure meas_mat(DialectalOperator const& a, DialectalOperator const& b) {
  return ldet(extended_product(a, b));
}

Measure meas_hyp(DialectalOperator const& a, DialectalOperator const& b) {
  DialectalOperator m = extended_product(a, b);
  if (m.carrier.empty())
    return Measure::finite(0.0);
  double d = fk_det(one_minus(m.dense()), m.weights());
  if (d == 0.0)
    return Measure::infinite("1 - A B is singular");
  return Measure::finite(-std::log(d));
}

Measure meas_hyp(DenseOperator const& u, DenseOperator const& v) {
  std::vector<Index> all = u.carrier();
  all.insert(all.end(), v.carrier().begin(), v.carrier().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  if (all.empty())
    return Measure::finite(0.0);
  DenseOperator x = one_minus(mat_mul(u.extended(all), v.extended(all)));
  double d = fk_det(x, std::vector<double>(all.size(), 1.0));
  if (d == 0.0)
    return Measure::infinite("1 - uv is singular");
  return Measure::finite(-std::log(d));
}

namespace {

void require_equal_carriers(Project const& a, Project const& b) {
  if (a.carrier() != b.carrier())
    throw CarrierError("measurement between projects of different carriers");
}

} // namespace

Measure sca_mat(Project const& a, Project const& b) {
  require_equal_carriers(a, b);
  return a.trace().unit_value() * Measure::from_wager(b.wager) +
         b.trace().unit_value() * Measure::from_wager(a.wager) +
         meas_mat(a.op, b.op);
}

Measure sca_hyp(Project const& a, Project const& b) {
  require_equal_carriers(a, b);
  return b.trace().unit_value() * Measure::from_wager(a.wager) +
         a.trace().unit_value() * Measure::from_wager(b.wager) +
         meas_hyp(a.op, b.op);
}

Measure sca(Project const& a, Project const& b, Model model) {
  return model == Model::matricial ? sca_mat(a, b) : sca_hyp(a, b);
}

OrthogonalityVerdict orthogonality(Project const& a, Project const& b,
                                   Model model) {
  OrthogonalityVerdict v;
  v.value = sca(a, b, model);
  if (!v.value.is_finite())
    return v;
  double x = std::abs(v.value.value);
  v.orthogonal = x > tau_num();
  v.suspicious = v.orthogonal && x <= 10.0 * tau_num();
  return v;
}

bool orthogonal_mat(Project const& a, Project const& b) {
  return orthogonality(a, b, Model::matricial).orthogonal;
}

bool orthogonal_hyp(Project const& a, Project const& b) {
  return orthogonality(a, b, Model::hyperfinite).orthogonal;
}

DialectIso DialectIso::identity(Dialect const& d) {
  DialectIso iso;
  for (std::size_t b = 0; b < d.block_count(); ++b) {
    iso.perm.push_back(b);
    iso.unitaries.push_back(
        DenseOperator::identity(natural_carrier(d.blocks()[b])));
  }
  return iso;
}

Dialect DialectIso::target(Dialect const& source) const {
  std::vector<std::size_t> blocks;
  for (auto p : perm)
    blocks.push_back(source.blocks()[p]);
  return Dialect(blocks);
}

void validate(DialectIso const& iso, Dialect const& d) {
  if (iso.perm.size() != d.block_count() ||
      iso.unitaries.size() != d.block_count())
    throw Error("dialect isomorphism has the wrong number of blocks");
  std::vector<std::size_t> sorted = iso.perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i)
      throw Error("dialect isomorphism does not permute the blocks");
  for (std::size_t i = 0; i < iso.perm.size(); ++i) {
    auto const& u = iso.unitaries[i];
    if (u.size() != d.blocks()[iso.perm[i]])
      throw Error("block unitary has the wrong dimension");
    if (max_abs_diff(mat_mul(adjoint(u), u), DenseOperator::identity(u.carrier())) >
        tau_num())
      throw Error("block map is not unitary");
  }
}

namespace {

// Dialect-level matrix V with V e_old = sum_new V[new, old] e_new.
std::vector<cplx> dialect_matrix(DialectIso const& iso, Dialect const& src,
                                 Dialect const& dst) {
  std::size_t n = src.total();
  std::vector<cplx> v(n * n, 0.0);
  for (std::size_t i = 0; i < iso.perm.size(); ++i) {
    std::size_t ob = iso.perm[i];
    auto const& u = iso.unitaries[i];
    for (std::size_t r = 0; r < u.size(); ++r)
      for (std::size_t c = 0; c < u.size(); ++c)
        v[(dst.offset(i) + r) * n + src.offset(ob) + c] = u(r, c);
  }
  return v;
}

} // namespace

DialectalOperator apply_variant(DialectalOperator const& a, DialectIso const& iso) {
  validate(iso, a.dialect);
  Dialect dst = iso.target(a.dialect);
  PseudoTrace trace;
  trace.weights.clear();
  for (auto p : iso.perm)
    trace.weights.push_back(a.trace.weights[p]);
  DialectalOperator r{a.carrier, dst, trace, {}};
  std::size_t n = a.dialect.total();
  auto v = dialect_matrix(iso, a.dialect, dst);

  bool permutation = std::all_of(iso.unitaries.begin(), iso.unitaries.end(),
                                 [](DenseOperator const& u) {
                                   return is_weighted_partial_permutation(u) &&
                                          max_abs_diff(mat_mul(adjoint(u), u),
                                                       DenseOperator::identity(
                                                           u.carrier())) <= tau_num();
                                 });
  if (a.symbolic() && permutation) {
    // old coordinate c -> (new coordinate, weight)
    std::vector<std::pair<std::size_t, cplx>> image(n);
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t row = 0; row < n; ++row)
        if (std::abs(v[row * n + c]) > 0.5)
          image[c] = {row, v[row * n + c]};
    std::map<Index, Arrow> g;
    for (auto const& [s, arrow] : a.table().graph()) {
      auto [xs, ws] = image[s.slot];
      auto [xt, wt] = image[arrow.target.slot];
      g[Index{s.value, xs}] = Arrow{Index{arrow.target.value, xt},
                                    arrow.weight * wt * std::conj(ws)};
    }
    r.op = PartialInjectionOp::table(std::move(g));
    return r;
  }
  auto window = r.window();
  DenseOperator old(window, a.dense().entries());
  DenseOperator big(window);
  for (std::size_t l = 0; l < a.carrier.size(); ++l)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        big(l * n + x, l * n + y) = v[x * n + y];
  r.op = mat_mul(mat_mul(big, old), adjoint(big));
  return r;
}

Project apply_variant(Project const& a, DialectIso const& iso) {
  return Project{a.wager, apply_variant(a.op, iso)};
}

double measure_distance(Measure const& a, Measure const& b) {
  if (a.is_indeterminate() || b.is_indeterminate())
    return kInfinity;
  if (a.is_infinite() && b.is_infinite())
    return 0.0;
  if (a.is_infinite() || b.is_infinite())
    return kInfinity;
  return std::abs(a.value - b.value);
}

double variant_invariance_residual(Project const& a, DialectIso const& iso,
                                   Project const& probe, Model model) {
  return measure_distance(sca(a, probe, model),
                          sca(apply_variant(a, iso), probe, model));
}

} // namespace goi
