#include "goi/interpret.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "goi/execution.hpp"
#include "goi/random.hpp"

namespace goi {

namespace {

PartialInjectionOp zero_address() { return PartialInjectionOp::address({}); }

std::size_t leaf_count(Occurrence const& o) { return atoms(*o.formula).size(); }

Occurrence const& occurrence(Sequent const& s, int id) {
  return s[position_of(s, id)];
}

// Moves the leaves of occurrences a then b (b may be -1) to occurrence t.
template <typename Map>
void merge_leaves(Map& m, Sequent const& premise_a, int a,
                  Sequent const& premise_b, int b, int t) {
  std::size_t k = 0;
  auto move = [&](Sequent const& s, int id) {
    std::size_t n = leaf_count(occurrence(s, id));
    for (std::size_t i = 0; i < n; ++i) {
      auto node = m.extract(AtomKey{id, i});
      node.key() = AtomKey{t, k++};
      m.insert(std::move(node));
    }
  };
  move(premise_a, a);
  if (b >= 0)
    move(premise_b, b);
}

template <typename Map>
Map under(Map const& m, char letter) {
  Map r;
  AddressWord p(std::string(1, letter));
  for (auto const& [k, w] : m)
    r[k] = w.under(p);
  return r;
}

Goi1Interpretation goi1(Proof const& p) {
  Goi1Interpretation r;
  switch (p.rule) {
  case Rule::ax:
    r.pi = sum_disjoint(tta(), adjoint(tta()));
    r.sigma = zero_address();
    r.cut_projection = zero_address();
    r.address[{p.a, 0}] = AddressWord("R");
    r.address[{p.b, 0}] = AddressWord("L");
    return r;
  case Rule::par: {
    r = goi1(*p.premises[0]);
    auto const& s = p.premises[0]->conclusion;
    merge_leaves(r.address, s, p.a, s, p.b, p.introduced);
    return r;
  }
  case Rule::tensor:
  case Rule::cut: {
    auto x = goi1(*p.premises[0]);
    auto y = goi1(*p.premises[1]);
    r.pi = odot(x.pi, y.pi);
    r.sigma = sum_disjoint(conjugate(x.sigma, AddressWord("R")),
                           conjugate(y.sigma, AddressWord("L")));
    r.cut_projection = sum_disjoint(conjugate(x.cut_projection, AddressWord("R")),
                                    conjugate(y.cut_projection, AddressWord("L")));
    r.address = under(x.address, 'R');
    for (auto const& [k, w] : under(y.address, 'L'))
      r.address[k] = w;
    auto const& s0 = p.premises[0]->conclusion;
    auto const& s1 = p.premises[1]->conclusion;
    if (p.rule == Rule::tensor) {
      merge_leaves(r.address, s0, p.a, s1, p.b, p.introduced);
      return r;
    }
    std::size_t n = leaf_count(occurrence(s0, p.a));
    std::vector<WordTerm> links, proj;
    for (std::size_t k = 0; k < n; ++k) {
      AddressWord x_k = r.address.at({p.a, k});
      AddressWord y_k = r.address.at({p.b, k});
      links.push_back({x_k, y_k, 1.0});
      links.push_back({y_k, x_k, 1.0});
      proj.push_back({x_k, x_k, 1.0});
      proj.push_back({y_k, y_k, 1.0});
      r.address.erase({p.a, k});
      r.address.erase({p.b, k});
    }
    r.sigma = sum_disjoint(r.sigma, PartialInjectionOp::address(links));
    r.cut_projection =
        sum_disjoint(r.cut_projection, PartialInjectionOp::address(proj));
    return r;
  }
  default:
    throw UnsupportedRuleError("GoI1 interprets MLL proofs only, found " +
                               to_string(p.rule));
  }
}

void links_of(Proof const& p, std::vector<std::pair<AtomKey, AtomKey>>& out);

} // namespace

Goi1Interpretation interpret_mll_goi1(Proof const& p) {
  if (!is_mll(p))
    throw UnsupportedRuleError("GoI1 interprets MLL proofs only");
  return goi1(p);
}

std::vector<std::pair<AtomKey, AtomKey>> axiom_links(Proof const& p) {
  if (!is_cut_free(p) || !is_mll(p))
    throw UnsupportedRuleError("axiom links need a cut-free MLL proof");
  std::vector<std::pair<AtomKey, AtomKey>> out;
  links_of(p, out);
  return out;
}

namespace {

// Links keyed by the conclusion of p.
void links_of(Proof const& p, std::vector<std::pair<AtomKey, AtomKey>>& out) {
  if (p.rule == Rule::ax) {
    out.push_back({{p.a, 0}, {p.b, 0}});
    return;
  }
  std::vector<std::pair<AtomKey, AtomKey>> inner;
  for (auto const& q : p.premises)
    links_of(*q, inner);
  std::map<AtomKey, AtomKey> rename;
  std::size_t k = 0;
  auto map_leaves = [&](Sequent const& s, int id) {
    std::size_t n = leaf_count(occurrence(s, id));
    for (std::size_t i = 0; i < n; ++i)
      rename[{id, i}] = {p.introduced, k++};
  };
  if (p.rule == Rule::par) {
    map_leaves(p.premises[0]->conclusion, p.a);
    map_leaves(p.premises[0]->conclusion, p.b);
  } else {
    map_leaves(p.premises[0]->conclusion, p.a);
    map_leaves(p.premises[1]->conclusion, p.b);
  }
  auto f = [&](AtomKey x) {
    auto it = rename.find(x);
    return it == rename.end() ? x : it->second;
  };
  for (auto const& [x, y] : inner)
    out.push_back({f(x), f(y)});
}

} // namespace

SoundnessResult soundness_check_mll(ProofPtr const& p) {
  SoundnessResult r;
  auto in = interpret_mll_goi1(*p);
  auto deg = nilpotency(compose(in.pi, in.sigma));
  if (auto const* n = std::get_if<Nilpotent>(&deg))
    r.nilpotency_degree = n->degree;
  r.executed = ex_goi1(in.pi, in.sigma, in.cut_projection);
  std::vector<WordTerm> terms;
  for (auto const& [x, y] : axiom_links(*normalize_mll(p))) {
    AddressWord ax = in.address.at(x), ay = in.address.at(y);
    terms.push_back({ax, ay, 1.0});
    terms.push_back({ay, ax, 1.0});
  }
  r.expected = PartialInjectionOp::address(terms).reduced();
  r.equal = r.executed == r.expected;
  return r;
}

namespace {

std::vector<std::vector<cplx>> read_matrix(nlohmann::json const& j) {
  std::vector<std::vector<cplx>> rows;
  for (auto const& row : j) {
    std::vector<cplx> r;
    for (auto const& v : row)
      r.push_back(v.get<double>());
    rows.push_back(r);
  }
  return rows;
}

Project read_witness(nlohmann::json const& j, std::size_t size,
                     std::string const& where) {
  std::vector<std::size_t> blocks = j.value("dialect", std::vector<std::size_t>{1});
  PseudoTrace trace;
  trace.weights = j.value("trace", std::vector<double>(blocks.size(), 1.0));
  Dialect d(blocks);
  std::vector<std::uint64_t> carrier(size);
  for (std::size_t i = 0; i < size; ++i)
    carrier[i] = i;
  double wager = j.value("wager", 0.0);
  auto const& op = j.at("op");
  std::string kind = op.at("kind").get<std::string>();
  DialectalOperator a{carrier, d, trace, {}};
  std::size_t n = size * d.total();
  if (kind == "random") {
    Rng rng(op.at("seed").get<std::uint64_t>());
    a = random_dialectal(carrier, d, trace, op.value("norm", 0.3), rng);
  } else if (kind == "dense") {
    auto re = read_matrix(op.at("re"));
    auto im = op.contains("im") ? read_matrix(op.at("im"))
                                : std::vector<std::vector<cplx>>(n, std::vector<cplx>(n));
    if (re.size() != n || im.size() != n)
      throw Error(where + ": dense operator must be " + std::to_string(n) + "x" +
                  std::to_string(n));
    DenseOperator m(a.window());
    for (std::size_t i = 0; i < n; ++i) {
      if (re[i].size() != n || im[i].size() != n)
        throw Error(where + ": ragged dense operator");
      for (std::size_t k = 0; k < n; ++k)
        m(i, k) = cplx(re[i][k].real(), im[i][k].real());
    }
    a.op = m;
  } else if (kind == "diagonal") {
    auto vals = op.at("values").get<std::vector<double>>();
    if (vals.size() != n)
      throw Error(where + ": diagonal needs " + std::to_string(n) + " values");
    DenseOperator m(a.window());
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = vals[i];
    a.op = m;
  } else if (kind == "zero") {
    a.op = PartialInjectionOp();
  } else {
    throw Error(where + ": unknown operator kind '" + kind + "'");
  }
  try {
    validate(a);
  } catch (Error const& e) {
    throw Error(where + ": " + e.what());
  }
  return Project{wager, a};
}

} // namespace

InterpretationBasis load_basis(std::string const& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (nlohmann::json::exception const& e) {
    throw Error(std::string("basis: ") + e.what());
  }
  InterpretationBasis basis;
  try {
    for (auto const& [name, entry] : j.at("variables").items()) {
      BasisEntry b;
      b.size = entry.value("size", std::size_t{1});
      if (b.size == 0)
        throw Error("basis: variable " + name + " has size 0");
      std::size_t i = 0;
      for (auto const& w : entry.at("primal"))
        b.primal.push_back(
            read_witness(w, b.size, name + ".primal[" + std::to_string(i++) + "]"));
      i = 0;
      for (auto const& w : entry.at("dual"))
        b.dual.push_back(
            read_witness(w, b.size, name + ".dual[" + std::to_string(i++) + "]"));
      basis.variables[name] = std::move(b);
    }
  } catch (nlohmann::json::exception const& e) {
    throw Error(std::string("basis: ") + e.what());
  }
  return basis;
}

InterpretationBasis load_basis_file(std::string const& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read basis file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_basis(ss.str());
}

std::vector<std::string> basis_defects(InterpretationBasis const& basis) {
  std::vector<std::string> out;
  for (auto const& [name, e] : basis.variables)
    for (std::size_t i = 0; i < e.primal.size(); ++i)
      for (std::size_t k = 0; k < e.dual.size(); ++k)
        if (!orthogonality(e.primal[i], e.dual[k]).orthogonal)
          out.push_back(name + ": primal " + std::to_string(i) + " and dual " +
                        std::to_string(k) + " are not orthogonal");
  return out;
}

namespace {

struct Node {
  Project project;
  std::map<AtomKey, std::vector<std::uint64_t>> atoms;
};

class Interpreter {
public:
  Interpreter(InterpretationBasis const& basis, bool build)
      : basis_(basis), build_(build) {}

  LocationPlan plan;
  std::vector<CutRecord> cuts;

  Node run(Proof const& p) {
    switch (p.rule) {
    case Rule::ax:
      return axiom(p);
    case Rule::par: {
      Node n = run(*p.premises[0]);
      auto const& s = p.premises[0]->conclusion;
      merge_leaves(n.atoms, s, p.a, s, p.b, p.introduced);
      return n;
    }
    case Rule::tensor: {
      Node x = run(*p.premises[0]);
      Node y = run(*p.premises[1]);
      Node n;
      if (build_)
        n.project = tensor_project(x.project, y.project);
      n.atoms = std::move(x.atoms);
      n.atoms.merge(y.atoms);
      merge_leaves(n.atoms, p.premises[0]->conclusion, p.a,
                   p.premises[1]->conclusion, p.b, p.introduced);
      return n;
    }
    case Rule::cut:
      return cut(p);
    case Rule::plusl:
    case Rule::plusr:
      return plus(p);
    case Rule::with:
      return with(p);
    case Rule::top:
      return top(p);
    }
    throw UnsupportedRuleError("unknown rule");
  }

private:
  InterpretationBasis const& basis_;
  bool build_;

  BasisEntry const& entry(std::string const& var) {
    auto it = basis_.variables.find(var);
    if (it == basis_.variables.end())
      throw MissingVariableError(var);
    return it->second;
  }

  std::vector<std::uint64_t> fresh(std::size_t n) {
    std::vector<std::uint64_t> r(n);
    for (auto& x : r)
      x = plan.next_location++;
    return r;
  }

  // Fresh blocks for every leaf of f, keyed by (id, leaf).
  void fresh_leaves(Formula const& f, int id,
                    std::map<AtomKey, std::vector<std::uint64_t>>& out,
                    std::size_t first_leaf = 0) {
    std::size_t k = first_leaf;
    for (auto const& a : atoms(f))
      out[{id, k++}] = fresh(entry(a.name).size);
  }

  Node axiom(Proof const& p) {
    std::size_t n = entry(p.var).size;
    Node r;
    auto qd = fresh(n), qv = fresh(n);
    r.atoms[{p.a, 0}] = qd;
    r.atoms[{p.b, 0}] = qv;
    if (build_) {
      std::vector<std::uint64_t> src(n);
      for (std::size_t i = 0; i < n; ++i)
        src[i] = i;
      r.project = build_fax(make_delocation(src, qd), make_delocation(src, qv));
    }
    return r;
  }

  // Location-wise map sending the leaves of `from` onto those of `to`.
  static Delocation leaf_map(std::map<AtomKey, std::vector<std::uint64_t>> const& m,
                             std::vector<std::pair<int, int>> const& pairs,
                             Sequent const& s_from) {
    std::map<std::uint64_t, std::uint64_t> d;
    for (auto const& [from, to] : pairs) {
      std::size_t n = leaf_count(occurrence(s_from, from));
      for (std::size_t k = 0; k < n; ++k) {
        auto const& a = m.at({from, k});
        auto const& b = m.at({to, k});
        for (std::size_t i = 0; i < a.size(); ++i)
          d[a[i]] = b[i];
      }
    }
    return Delocation(std::move(d));
  }

  Node cut(Proof const& p) {
    Node x = run(*p.premises[0]);
    Node y = run(*p.premises[1]);
    auto const& s1 = p.premises[1]->conclusion;
    std::map<AtomKey, std::vector<std::uint64_t>> both = x.atoms;
    for (auto const& [k, v] : y.atoms)
      both[k] = v;
    Delocation d = leaf_map(both, {{p.b, p.a}}, s1);
    plan.delocations.emplace_back("cut " + std::to_string(p.a), d);
    Node r;
    if (build_) {
      Project moved = relocate(y.project, d);
      r.project = plug_project(x.project, moved);
      cuts.push_back(CutRecord{x.project, std::move(moved), r.project});
    }
    std::size_t n = leaf_count(occurrence(p.premises[0]->conclusion, p.a));
    for (std::size_t k = 0; k < n; ++k) {
      x.atoms.erase({p.a, k});
      y.atoms.erase({p.b, k});
    }
    r.atoms = std::move(x.atoms);
    r.atoms.merge(y.atoms);
    return r;
  }

  Node plus(Proof const& p) {
    Node r = run(*p.premises[0]);
    auto const& s = p.premises[0]->conclusion;
    std::size_t kept = leaf_count(occurrence(s, p.a));
    std::size_t added = atoms(*p.side).size();
    std::map<AtomKey, std::vector<std::uint64_t>> extra;
    bool left = p.rule == Rule::plusl;
    fresh_leaves(*p.side, p.introduced, extra, left ? kept : 0);
    std::vector<std::uint64_t> q;
    for (auto const& [k, v] : extra)
      q.insert(q.end(), v.begin(), v.end());
    std::sort(q.begin(), q.end());
    if (build_)
      r.project = extend_carrier(r.project, q);
    for (std::size_t k = 0; k < kept; ++k) {
      auto node = r.atoms.extract(AtomKey{p.a, k});
      node.key() = AtomKey{p.introduced, left ? k : added + k};
      r.atoms.insert(std::move(node));
    }
    r.atoms.merge(extra);
    return r;
  }

  Node with(Proof const& p) {
    Node x = run(*p.premises[0]);
    Node y = run(*p.premises[1]);
    auto const& s1 = p.premises[1]->conclusion;
    std::map<AtomKey, std::vector<std::uint64_t>> both = x.atoms;
    for (auto const& [k, v] : y.atoms)
      both[k] = v;
    Delocation d = leaf_map(both, p.context_map, s1);
    plan.delocations.emplace_back("with " + std::to_string(p.introduced), d);
    Node r;
    if (build_)
      r.project = with_bar(x.project, relocate(y.project, d));
    std::size_t na = leaf_count(occurrence(p.premises[0]->conclusion, p.a));
    std::size_t nb = leaf_count(occurrence(s1, p.b));
    r.atoms = x.atoms;
    for (std::size_t k = 0; k < na; ++k) {
      auto node = r.atoms.extract(AtomKey{p.a, k});
      node.key() = AtomKey{p.introduced, k};
      r.atoms.insert(std::move(node));
    }
    for (std::size_t k = 0; k < nb; ++k)
      r.atoms[{p.introduced, na + k}] = y.atoms.at({p.b, k});
    return r;
  }

  Node top(Proof const& p) {
    Node r;
    std::vector<std::uint64_t> carrier;
    for (auto const& o : p.conclusion) {
      if (o.id == p.introduced)
        continue;
      fresh_leaves(*o.formula, o.id, r.atoms);
    }
    for (auto const& [k, v] : r.atoms)
      carrier.insert(carrier.end(), v.begin(), v.end());
    std::sort(carrier.begin(), carrier.end());
    if (build_)
      r.project = zero_project(carrier);
    return r;
  }
};

} // namespace

LocationPlan allocate_locations(Proof const& p, InterpretationBasis const& basis) {
  Interpreter in(basis, false);
  Node n = in.run(p);
  in.plan.atoms = std::move(n.atoms);
  return in.plan;
}

MatricialInterpretation interpret_mall_matricial(Proof const& p,
                                                 InterpretationBasis const& basis) {
  Interpreter in(basis, true);
  Node n = in.run(p);
  in.plan.atoms = std::move(n.atoms);
  return MatricialInterpretation{std::move(n.project), std::move(in.plan),
                                 std::move(in.cuts)};
}

std::vector<std::vector<std::uint64_t>> leaf_locations(LocationPlan const& plan,
                                                       Occurrence const& o) {
  std::vector<std::vector<std::uint64_t>> r;
  std::size_t n = leaf_count(o);
  for (std::size_t k = 0; k < n; ++k)
    r.push_back(plan.atoms.at({o.id, k}));
  return r;
}

} // namespace goi
