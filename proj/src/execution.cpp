#include "goi/execution.hpp"

#include <algorithm>
#include <set>

namespace goi {

PartialInjectionOp ex_goi1(PartialInjectionOp const& u,
                           PartialInjectionOp const& v,
                           PartialInjectionOp const& cut_proj) {
  auto r = nilpotency(compose(u, v));
  if (auto const* c = std::get_if<Cyclic>(&r))
    throw NotNilpotentError(c->witness);
  if (std::holds_alternative<Exceeded>(r))
    throw IndeterminateError("execution: nilpotency budget exceeded");
  std::uint64_t degree = std::get<Nilpotent>(r).degree;

  PartialInjectionOp vu = compose(v, u);
  PartialInjectionOp term = u;
  PartialInjectionOp result = restrict_outside(u, cut_proj);
  for (std::uint64_t k = 1; k <= degree + 1; ++k) {
    term = compose(term, vu);
    if (term.is_zero())
      break;
    result = sum_disjoint(result, restrict_outside(term, cut_proj));
  }
  return result.kind() == PartialInjectionOp::Kind::address ? result.reduced()
                                                             : result;
}

namespace {

std::vector<Index> sorted_union(std::vector<Index> a, std::vector<Index> const& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

DenseOperator projection_on(std::vector<Index> const& full,
                            std::vector<Index> const& part) {
  std::set<Index> s(part.begin(), part.end());
  DenseOperator p(full);
  for (std::size_t i = 0; i < full.size(); ++i)
    if (s.count(full[i]))
      p(i, i) = 1.0;
  return p;
}

std::vector<Index> minus(std::vector<Index> const& a, std::vector<Index> const& cut) {
  std::set<Index> c(cut.begin(), cut.end());
  std::vector<Index> r;
  for (auto const& i : a)
    if (!c.count(i))
      r.push_back(i);
  return r;
}

struct FeedbackParts {
  std::vector<Index> full;
  DenseOperator u, v, p, pp;
};

FeedbackParts feedback_parts(DenseOperator const& u, DenseOperator const& v,
                             InterfaceSplit const& split) {
  FeedbackParts f;
  f.full = sorted_union(u.carrier(), v.carrier());
  auto check = sorted_union(split.kept, split.cut);
  if (check != f.full || sorted_union(split.kept, {}).size() + split.cut.size() !=
                             f.full.size())
    throw CarrierError("feedback: kept and cut must partition the carrier");
  f.u = u.extended(f.full);
  f.v = v.extended(f.full);
  f.p = projection_on(f.full, minus(u.carrier(), split.cut));
  f.pp = projection_on(f.full, minus(v.carrier(), split.cut));
  return f;
}

} // namespace

DenseOperator feedback_dense(DenseOperator const& u, DenseOperator const& v,
                             InterfaceSplit const& split) {
  FeedbackParts f = feedback_parts(u, v, split);
  DenseOperator lhs = one_minus(mat_mul(f.u, f.v));
  DenseOperator rhs = add(mat_mul(f.u, f.p), f.pp);
  auto x = solve(lhs, rhs);
  if (!x)
    throw FeedbackSingularError("feedback: 1 - uv is singular");
  DenseOperator left = add(f.p, mat_mul(f.pp, f.v));
  return mat_mul(left, *x).restricted(split.kept);
}

DenseOperator feedback_series(DenseOperator const& u, DenseOperator const& v,
                              InterfaceSplit const& split, unsigned terms) {
  FeedbackParts f = feedback_parts(u, v, split);
  DenseOperator uv = mat_mul(f.u, f.v);
  DenseOperator sum(f.full);
  DenseOperator p = DenseOperator::identity(f.full);
  for (unsigned i = 0; i < terms; ++i) {
    sum = add(sum, p);
    p = mat_mul(p, uv);
  }
  DenseOperator left = add(f.p, mat_mul(f.pp, f.v));
  DenseOperator right = add(mat_mul(f.u, f.p), f.pp);
  return mat_mul(mat_mul(left, sum), right).restricted(split.kept);
}

namespace {

bool has(std::vector<std::uint64_t> const& sorted, std::uint64_t x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

PartialInjectionOp path_sum(PartialInjectionOp const& ad,
                            PartialInjectionOp const& bd,
                            std::vector<std::uint64_t> const& p,
                            std::vector<std::uint64_t> const& q,
                            std::vector<Index> const& starts,
                            std::uint64_t budget) {
  std::map<Index, Arrow> g;
  for (auto const& s : starts) {
    Index y = s;
    cplx w = 1.0;
    if (has(q, s.value)) {
      auto b = bd.apply(s);
      if (!b)
        continue;
      y = b->target;
      w = b->weight;
    }
    for (std::uint64_t step = 0;; ++step) {
      if (step > budget)
        throw IndeterminateError("plug: path summation budget exceeded");
      if (has(q, y.value)) {
        g[s] = Arrow{y, w};
        break;
      }
      auto a = ad.apply(y);
      if (!a)
        break;
      if (has(p, a->target.value)) {
        g[s] = Arrow{a->target, w * a->weight};
        break;
      }
      auto b = bd.apply(a->target);
      if (!b)
        break;
      y = b->target;
      w *= a->weight * b->weight;
    }
  }
  return PartialInjectionOp::table(std::move(g));
}

} // namespace

DialectalOperator plug_dialectal(DialectalOperator const& a,
                                 DialectalOperator const& b) {
  auto shared = carrier_intersection(a.carrier, b.carrier);
  auto p = carrier_difference(a.carrier, shared);
  auto q = carrier_difference(b.carrier, shared);
  auto out_carrier = carrier_union(p, q);
  DialectalOperator ad = dagger(a, b.dialect, b.trace);
  DialectalOperator bd = ddagger(b, a.dialect, a.trace);
  DialectalOperator out{out_carrier, ad.dialect, ad.trace, {}};

  if (shared.empty()) {
    auto u = carrier_union(a.carrier, b.carrier);
    return add(extend(ad, u), extend(bd, u));
  }

  auto u = carrier_union(a.carrier, b.carrier);
  DialectalOperator m = multiply(extend(ad, u), extend(bd, u));
  bool tables = ad.symbolic() && bd.symbolic() &&
                ad.table().kind() == PartialInjectionOp::Kind::table &&
                bd.table().kind() == PartialInjectionOp::Kind::table;
  if (tables) {
    auto r = nilpotency(m.table());
    if (auto const* c = std::get_if<Cyclic>(&r))
      throw NotOrthogonalError("plug: product has a cycle through " +
                               to_string(c->witness));
    if (std::holds_alternative<Exceeded>(r))
      throw IndeterminateError("plug: nilpotency budget exceeded");
    std::uint64_t budget = 2 * std::get<Nilpotent>(r).degree + 2;
    out.op = path_sum(ad.table(), bd.table(), p, q, out.window(), budget);
    return out;
  }

  SpectralReport rep = spectral_radius(m.dense(), 1e-12, 1.0 - 2.0 * tau_num());
  switch (rep.gate()) {
  case UnitGate::at_least:
    throw NotOrthogonalError("plug: spectral radius of the product is >= 1");
  case UnitGate::straddle:
    throw IndeterminateError("plug: spectral bounds straddle 1");
  case UnitGate::below:
    break;
  }
  DialectalOperator cut_view{shared, ad.dialect, ad.trace, {}};
  InterfaceSplit split{out.window(), cut_view.window()};
  DenseOperator r = feedback_dense(bd.dense(), ad.dense(), split);
  out.op = r.aligned_to(out.window());
  return out;
}

double adjunction_residual_hyp(DenseOperator const& u, DenseOperator const& v,
                               DenseOperator const& w,
                               InterfaceSplit const& split) {
  auto full = sorted_union(split.kept, split.cut);
  DenseOperator vw = add(v.extended(full), w.extended(full));
  Measure lhs = meas_hyp(u, vw);
  Measure rhs = meas_hyp(u, v) + meas_hyp(feedback_dense(u, v, split), w);
  return measure_distance(lhs, rhs);
}

double adjunction_residual_mat(DialectalOperator const& f,
                               DialectalOperator const& g,
                               DialectalOperator const& h) {
  if (!carrier_intersection(g.carrier, h.carrier).empty())
    throw CarrierError("adjunction: G and H must have disjoint carriers");
  Measure lhs = meas_mat(f, plug_dialectal(g, h));
  Measure rhs = h.trace.unit_value() * meas_mat(f, g) +
                meas_mat(h, plug_dialectal(f, g));
  return measure_distance(lhs, rhs);
}

double associativity_residual(DialectalOperator const& a,
                              DialectalOperator const& f,
                              DialectalOperator const& b) {
  auto left = plug_dialectal(plug_dialectal(a, f), b);
  auto right = plug_dialectal(a, plug_dialectal(f, b));
  if (left.carrier != right.carrier || !(left.dialect == right.dialect))
    return kInfinity;
  return max_abs_diff(left.dense(), right.dense());
}

bool associativity_exact(DialectalOperator const& a, DialectalOperator const& f,
                         DialectalOperator const& b) {
  auto left = plug_dialectal(plug_dialectal(a, f), b);
  auto right = plug_dialectal(a, plug_dialectal(f, b));
  return left.symbolic() && right.symbolic() && same_operator(left, right);
}

} // namespace goi
