#include "doctest.h"

#include "goi/interpret.hpp"
#include "goi/random.hpp"
#include "goi/suites.hpp"
#include "goi/witness.hpp"

using namespace goi;

namespace {

std::string corpus(std::string const& rel) {
  return std::string(GOI_CORPUS_DIR) + "/" + rel;
}

InterpretationBasis basis() { return load_basis_file(corpus("basis.json")); }

FormulaPtr random_formula(Rng& rng, int depth) {
  static char const* names[] = {"X", "Y", "Z"};
  if (depth == 0 || rng.index(0, 3) == 0) {
    std::string n = names[rng.index(0, 2)];
    return rng.coin() ? f_var(n) : f_dual(n);
  }
  auto a = random_formula(rng, depth - 1), b = random_formula(rng, depth - 1);
  switch (rng.index(0, 3)) {
  case 0:
    return f_tensor(a, b);
  case 1:
    return f_par(a, b);
  case 2:
    return f_with(a, b);
  default:
    return f_plus(a, b);
  }
}

} // namespace

TEST_SUITE("logic") {

TEST_CASE("formula parsing and printing") {
  auto f = parse_formula("(tensor X (par (dual Y) Z))");
  CHECK(equal(f, f_tensor(f_var("X"), f_par(f_dual("Y"), f_var("Z")))));
  CHECK(is_mll(*f));
  CHECK_FALSE(is_mll(*parse_formula("(with X Y)")));
  CHECK(equal(parse_formula(to_string(*f)), f));
  CHECK(atoms(*f) == std::vector<Atom>{{"X", false}, {"Y", true}, {"Z", false}});
  CHECK_THROWS_AS(parse_formula("(tensor X)"), ParseError);
  CHECK_THROWS_AS(parse_formula("(tensor X Y"), ParseError);
}

TEST_CASE("negation is an involution that keeps the leaf order") {
  Rng rng(61);
  for (int t = 0; t < 200; ++t) {
    auto f = random_formula(rng, 4);
    auto n = negate(f);
    CHECK(equal(negate(n), f));
    auto a = atoms(*f), b = atoms(*n);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].name == b[i].name);
      CHECK(a[i].dual != b[i].dual);
    }
  }
  CHECK(equal(negate(f_top()), f_zero()));
  CHECK(equal(negate(f_with(f_var("X"), f_var("Y"))),
              f_plus(f_dual("X"), f_dual("Y"))));
}

TEST_CASE("proof parsing") {
  auto p = parse_proof("(ax X)");
  CHECK(p->rule == Rule::ax);
  CHECK(sequent_string(p->conclusion) == "|- " + to_string(*f_dual("X")) + ", X");
  auto c = parse_proof("(cut X (ax X) (ax X))");
  CHECK(cut_count(*c) == 1);
  CHECK(depth(*c) == 2);
  CHECK_FALSE(is_cut_free(*c));
  CHECK(c->conclusion.size() == 2);
  auto t = parse_proof("(top (dual X) (tensor Y Z))");
  CHECK(t->rule == Rule::top);
  CHECK(t->conclusion.size() == 3);
  CHECK_FALSE(is_mll(*t));
  auto comment = parse_proof("; axiom\n(ax X) ; trailing\n");
  CHECK(comment->rule == Rule::ax);
}

TEST_CASE("ill-formed proofs") {
  SUBCASE("syntax errors carry a position") {
    try {
      parse_proof("(ax X)\n(ax Y)");
      FAIL("expected a ParseError");
    } catch (ParseError const& e) {
      CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_proof(read_text(corpus("bad/syntax_unclosed.pf"))), ParseError);
    CHECK_THROWS_AS(parse_proof(read_text(corpus("bad/syntax_unknown_rule.pf"))),
                    ParseError);
  }
  SUBCASE("rule errors carry a path") {
    for (auto name : {"rule_cut_formula", "rule_par_same", "rule_tensor_position",
                      "rule_with_context"}) {
      CAPTURE(name);
      CHECK_THROWS_AS(parse_proof(read_text(corpus(std::string("bad/") + name + ".pf"))),
                      RuleError);
    }
    try {
      parse_proof("(par 0 1 (tensor (ax X) (par 0 0 (ax Y))))");
      FAIL("expected a RuleError");
    } catch (RuleError const& e) {
      CHECK(e.rule == "par");
      CHECK(e.path == "root/0/1");
    }
  }
}

TEST_CASE("cut elimination") {
  for (auto const& path : corpus_files(corpus("mll"))) {
    CAPTURE(path);
    auto p = parse_proof(read_text(path));
    auto n = normalize_mll(p);
    CHECK(is_cut_free(*n));
    REQUIRE(n->conclusion.size() == p->conclusion.size());
    for (auto const& o : p->conclusion) {
      auto i = position_of(n->conclusion, o.id);
      REQUIRE(i != std::size_t(-1));
      CHECK(equal(n->conclusion[i].formula, o.formula));
    }
  }
}

TEST_CASE("execution computes the normal form") {
  std::size_t with_cuts = 0;
  for (auto const& path : corpus_files(corpus("mll"))) {
    CAPTURE(path);
    auto p = parse_proof(read_text(path));
    auto s = soundness_check_mll(p);
    CHECK(s.equal);
    CHECK(is_partial_symmetry(s.executed));
    with_cuts += cut_count(*p) > 0;
  }
  CHECK(with_cuts >= 8);
  CHECK_THROWS_AS(interpret_mll_goi1(*parse_proof("(with (ax X) (ax X))")),
                  UnsupportedRuleError);
}

TEST_CASE("goi1 addresses") {
  auto g = interpret_mll_goi1(*parse_proof("(ax X)"));
  REQUIRE(g.address.size() == 2);
  std::set<std::string> words;
  for (auto const& [k, w] : g.address)
    words.insert(w.letters());
  CHECK(words == std::set<std::string>{"R", "L"});
  CHECK(g.sigma.is_zero());
  auto links = axiom_links(*parse_proof("(tensor (ax X) (ax Y))"));
  CHECK(links.size() == 2);
}

TEST_CASE("location allocation") {
  auto b = basis();
  auto p = parse_proof(read_text(corpus("mall/12_tensor_with.pf")));
  auto plan = allocate_locations(*p, b);
  auto again = allocate_locations(*p, b);
  CHECK(plan.atoms == again.atoms);
  CHECK(plan.next_location == again.next_location);
  std::set<std::uint64_t> seen;
  for (auto const& [k, locs] : plan.atoms)
    for (auto l : locs) {
      CHECK(seen.insert(l).second);
      CHECK(l < plan.next_location);
    }
  InterpretationBasis partial = b;
  partial.variables.erase("X");
  try {
    allocate_locations(*p, partial);
    FAIL("expected a MissingVariableError");
  } catch (MissingVariableError const& e) {
    CHECK(e.variable == "X");
  }
}

TEST_CASE("basis loading") {
  auto b = basis();
  CHECK(b.variables.count("X") == 1);
  CHECK(b.variables.at("Y").size == 2);
  CHECK(basis_defects(b).empty());
  CHECK_THROWS_AS(load_basis("{\"variables\": {\"X\": {\"size\": 0}}}"), Error);
  CHECK_THROWS_AS(load_basis("[]"), Error);
}

TEST_CASE("MALL proofs are promising and pass their witnesses") {
  auto b = basis();
  for (auto const& path : corpus_files(corpus("mall"))) {
    CAPTURE(path);
    auto p = parse_proof(read_text(path));
    auto m = interpret_mall_matricial(*p, b);
    CHECK(is_promising(m.project).all());
    CHECK(m.cuts.size() == cut_count(*p));
    auto dual = sequent_dual_witnesses(p->conclusion, m.plan, b);
    CHECK_NOTHROW(validate(dual));
    for (auto const& row : orthogonal_witness_suite(m.project, dual))
      CHECK(row.orthogonal);
  }
}

TEST_CASE("top is interpreted by the zero project on its context") {
  auto b = basis();
  auto p = parse_proof("(top (dual X) (tensor Y Z))");
  auto m = interpret_mall_matricial(*p, b);
  CHECK(m.project.op.is_zero());
  CHECK(m.project.wager == 0.0);
  CHECK(m.project.carrier().size() == 1 + 2 + b.variables.at("Z").size);
}

TEST_CASE("witnesses of a tensor are tensors of witnesses") {
  auto b = basis();
  auto f = parse_formula("(tensor X Y)");
  std::vector<std::vector<std::uint64_t>> leaves{{0}, {1, 2}};
  auto w = formula_witnesses(*f, leaves, b);
  auto nx = b.variables.at("X").primal.size(), ny = b.variables.at("Y").primal.size();
  CHECK(w.size() == std::min<std::size_t>(nx * ny, WitnessLimits{}.max_members));
  for (auto const& t : w)
    CHECK(t.carrier() == std::vector<std::uint64_t>{0, 1, 2});
  // An axiom on X and its dual is orthogonal to every X (x) X^perp witness.
  auto fax = build_fax(make_delocation({0}, {0}), make_delocation({0}, {1}));
  auto dual = formula_witnesses(*parse_formula("(tensor X (dual X))"), {{0}, {1}}, b);
  REQUIRE_FALSE(dual.empty());
  for (auto const& t : dual)
    CHECK(orthogonal_mat(fax, t));
}

}
