#include "goi/witness.hpp"

#include <algorithm>

namespace goi {

namespace {

std::vector<std::uint64_t> flatten(std::vector<std::vector<std::uint64_t>> const& leaves) {
  std::vector<std::uint64_t> r;
  for (auto const& l : leaves)
    r.insert(r.end(), l.begin(), l.end());
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<Project> tensors(std::vector<Project> const& xs,
                             std::vector<Project> const& ys,
                             WitnessLimits const& limits) {
  std::vector<Project> r;
  for (auto const& x : xs)
    for (auto const& y : ys) {
      if (r.size() >= limits.max_members)
        return r;
      if (x.dialect().total() * y.dialect().total() > limits.max_dialect)
        continue;
      r.push_back(tensor_project(x, y));
    }
  return r;
}

} // namespace

std::vector<Project> formula_witnesses(
    Formula const& f, std::vector<std::vector<std::uint64_t>> const& leaves,
    InterpretationBasis const& basis, WitnessLimits const& limits) {
  using K = Formula::Kind;
  std::size_t nl = f.left ? atoms(*f.left).size() : 0;
  auto left_leaves = [&] {
    return std::vector<std::vector<std::uint64_t>>(leaves.begin(),
                                                   leaves.begin() + nl);
  };
  auto right_leaves = [&] {
    return std::vector<std::vector<std::uint64_t>>(leaves.begin() + nl,
                                                   leaves.end());
  };
  switch (f.kind) {
  case K::var:
  case K::dual: {
    auto it = basis.variables.find(f.name);
    if (it == basis.variables.end())
      throw MissingVariableError(f.name);
    auto const& src = f.kind == K::var ? it->second.primal : it->second.dual;
    std::vector<std::uint64_t> abstract(it->second.size);
    for (std::size_t i = 0; i < abstract.size(); ++i)
      abstract[i] = i;
    Delocation d = make_delocation(abstract, leaves.at(0));
    std::vector<Project> r;
    for (auto const& w : src)
      if (r.size() < limits.max_members)
        r.push_back(relocate(w, d));
    return r;
  }
  case K::tensor:
    return tensors(formula_witnesses(*f.left, left_leaves(), basis, limits),
                   formula_witnesses(*f.right, right_leaves(), basis, limits),
                   limits);
  case K::par: {
    auto candidates =
        tensors(formula_witnesses(*f.left, left_leaves(), basis, limits),
                formula_witnesses(*f.right, right_leaves(), basis, limits),
                limits);
    FormulaPtr dual = f_tensor(negate(f.left), negate(f.right));
    auto tests = formula_witnesses(*dual, leaves, basis, limits);
    std::vector<Project> r;
    for (auto const& c : candidates)
      if (std::all_of(tests.begin(), tests.end(), [&](Project const& t) {
            return orthogonality(c, t).orthogonal;
          }))
        r.push_back(c);
    return r;
  }
  case K::plus: {
    auto lc = flatten(left_leaves()), rc = flatten(right_leaves());
    std::vector<Project> r;
    for (auto const& a : formula_witnesses(*f.left, left_leaves(), basis, limits))
      r.push_back(extend_carrier(a, rc));
    for (auto const& b : formula_witnesses(*f.right, right_leaves(), basis, limits))
      r.push_back(extend_carrier(b, lc));
    if (r.size() > limits.max_members)
      r.resize(limits.max_members);
    return r;
  }
  case K::with: {
    auto lc = flatten(left_leaves()), rc = flatten(right_leaves());
    std::vector<Project> r;
    for (auto const& a : formula_witnesses(*f.left, left_leaves(), basis, limits))
      for (auto const& b :
           formula_witnesses(*f.right, right_leaves(), basis, limits)) {
        if (r.size() >= limits.max_members)
          return r;
        if (a.dialect().total() + b.dialect().total() > limits.max_dialect)
          continue;
        r.push_back(sum_lambda(extend_carrier(a, rc), 1.0, extend_carrier(b, lc)));
      }
    return r;
  }
  case K::top:
    return {Project{1.0, zero_operator({})}};
  case K::zero:
    return {};
  }
  return {};
}

ConductWitnessSet sequent_dual_witnesses(Sequent const& conclusion,
                                         LocationPlan const& plan,
                                         InterpretationBasis const& basis,
                                         WitnessLimits const& limits) {
  ConductWitnessSet s;
  s.polarity = Polarity::dual;
  std::vector<Project> acc;
  bool first = true;
  for (auto const& o : conclusion) {
    auto leaves = leaf_locations(plan, o);
    auto ws = formula_witnesses(*negate(o.formula), leaves, basis, limits);
    s.carrier = carrier_union(s.carrier, flatten(leaves));
    if (first) {
      acc = ws;
      first = false;
    } else {
      acc = tensors(acc, ws, limits);
    }
  }
  s.members = std::move(acc);
  return s;
}

} // namespace goi
