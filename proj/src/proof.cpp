#include "goi/proof.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace goi {

std::string to_string(Rule r) {
  switch (r) {
  case Rule::ax:
    return "ax";
  case Rule::cut:
    return "cut";
  case Rule::tensor:
    return "tensor";
  case Rule::par:
    return "par";
  case Rule::plusl:
    return "plusl";
  case Rule::plusr:
    return "plusr";
  case Rule::with:
    return "with";
  case Rule::top:
    return "top";
  }
  return "?";
}

std::size_t position_of(Sequent const& s, int id) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i].id == id)
      return i;
  return std::string::npos;
}

std::string sequent_string(Sequent const& s) {
  std::string r = "|-";
  for (std::size_t i = 0; i < s.size(); ++i)
    r += (i ? ", " : " ") + to_string(*s[i].formula);
  return r;
}

namespace {

Occurrence const& find(Sequent const& s, int id, Rule rule,
                       std::string const& path) {
  auto i = position_of(s, id);
  if (i == std::string::npos)
    throw RuleError(to_string(rule), path,
                    "occurrence " + std::to_string(id) + " is not in the premise");
  return s[i];
}

Sequent without(Sequent const& s, std::initializer_list<int> ids) {
  Sequent r;
  for (auto const& o : s)
    if (std::find(ids.begin(), ids.end(), o.id) == ids.end())
      r.push_back(o);
  return r;
}

std::shared_ptr<Proof> node(Rule r) {
  auto p = std::make_shared<Proof>();
  p->rule = r;
  return p;
}

} // namespace

ProofPtr make_ax(std::string const& var, int dual_id, int var_id) {
  auto p = node(Rule::ax);
  p->var = var;
  p->a = dual_id;
  p->b = var_id;
  p->conclusion = {{dual_id, f_dual(var)}, {var_id, f_var(var)}};
  return p;
}

ProofPtr make_cut(ProofPtr p, int a, ProofPtr q, int b, std::string const& path) {
  auto const& fa = find(p->conclusion, a, Rule::cut, path);
  auto const& fb = find(q->conclusion, b, Rule::cut, path);
  if (!equal(negate(fa.formula), fb.formula))
    throw RuleError("cut", path,
                    "cut formulas " + to_string(*fa.formula) + " and " +
                        to_string(*fb.formula) + " are not dual");
  auto n = node(Rule::cut);
  n->a = a;
  n->b = b;
  n->conclusion = without(p->conclusion, {a});
  auto rest = without(q->conclusion, {b});
  n->conclusion.insert(n->conclusion.end(), rest.begin(), rest.end());
  n->premises = {std::move(p), std::move(q)};
  return n;
}

ProofPtr make_tensor(ProofPtr p, int a, ProofPtr q, int b, int introduced,
                     std::string const& path) {
  auto fa = find(p->conclusion, a, Rule::tensor, path).formula;
  auto fb = find(q->conclusion, b, Rule::tensor, path).formula;
  auto n = node(Rule::tensor);
  n->a = a;
  n->b = b;
  n->introduced = introduced;
  n->conclusion = without(p->conclusion, {a});
  auto rest = without(q->conclusion, {b});
  n->conclusion.insert(n->conclusion.end(), rest.begin(), rest.end());
  n->conclusion.push_back({introduced, f_tensor(fa, fb)});
  n->premises = {std::move(p), std::move(q)};
  return n;
}

ProofPtr make_par(ProofPtr p, int a, int b, int introduced,
                  std::string const& path) {
  if (a == b)
    throw RuleError("par", path, "both components are the same occurrence");
  auto fa = find(p->conclusion, a, Rule::par, path).formula;
  auto fb = find(p->conclusion, b, Rule::par, path).formula;
  auto n = node(Rule::par);
  n->a = a;
  n->b = b;
  n->introduced = introduced;
  n->conclusion = without(p->conclusion, {a, b});
  n->conclusion.push_back({introduced, f_par(fa, fb)});
  n->premises = {std::move(p)};
  return n;
}

ProofPtr make_plus(Rule side, ProofPtr p, int a, FormulaPtr other,
                   int introduced, std::string const& path) {
  auto fa = find(p->conclusion, a, side, path).formula;
  auto n = node(side);
  n->a = a;
  n->introduced = introduced;
  n->side = other;
  n->conclusion = without(p->conclusion, {a});
  n->conclusion.push_back(
      {introduced, side == Rule::plusl ? f_plus(fa, other) : f_plus(other, fa)});
  n->premises = {std::move(p)};
  return n;
}

ProofPtr make_with(ProofPtr p, int a, ProofPtr q, int b, int introduced,
                   std::string const& path) {
  auto fa = find(p->conclusion, a, Rule::with, path).formula;
  auto fb = find(q->conclusion, b, Rule::with, path).formula;
  auto left = without(p->conclusion, {a});
  auto right = without(q->conclusion, {b});
  if (left.size() != right.size())
    throw RuleError("with", path, "the premises have different contexts");
  auto n = node(Rule::with);
  std::vector<bool> used(left.size(), false);
  for (auto const& o : right) {
    bool matched = false;
    for (std::size_t i = 0; i < left.size() && !matched; ++i)
      if (!used[i] && equal(left[i].formula, o.formula)) {
        used[i] = true;
        matched = true;
        n->context_map.emplace_back(o.id, left[i].id);
      }
    if (!matched)
      throw RuleError("with", path,
                      "context formula " + to_string(*o.formula) +
                          " of the second premise has no match");
  }
  n->a = a;
  n->b = b;
  n->introduced = introduced;
  n->conclusion = left;
  n->conclusion.push_back({introduced, f_with(fa, fb)});
  n->premises = {std::move(p), std::move(q)};
  return n;
}

ProofPtr make_top(Sequent context, int introduced) {
  auto n = node(Rule::top);
  n->introduced = introduced;
  n->conclusion = std::move(context);
  n->conclusion.push_back({introduced, f_top()});
  return n;
}

namespace {

bool is_index(SExpr const& e) {
  return e.is_atom && !e.atom.empty() &&
         std::all_of(e.atom.begin(), e.atom.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::size_t index_of(SExpr const& e) {
  if (!is_index(e))
    throw ParseError("expected a position, got '" + e.atom + "'", e.line, e.column);
  return std::stoul(e.atom);
}

class Checker {
public:
  ProofPtr check(SExpr const& e, std::string const& path) {
    if (e.is_atom || e.items.empty() || !e.items[0].is_atom)
      throw ParseError("expected a rule application", e.line, e.column);
    std::string const& head = e.items[0].atom;
    auto const& it = e.items;
    auto arity = [&](std::initializer_list<std::size_t> allowed) {
      if (std::find(allowed.begin(), allowed.end(), it.size() - 1) == allowed.end())
        throw ParseError("wrong number of arguments for " + head, e.line, e.column);
    };
    auto sub = [&](std::size_t k, std::size_t which) {
      return check(it[k], path + "/" + std::to_string(which));
    };

    if (head == "ax") {
      arity({1});
      auto f = parse_formula(it[1]);
      if (f->kind != Formula::Kind::var)
        throw ParseError("ax takes a variable", it[1].line, it[1].column);
      int n = ids_.fresh();
      int p = ids_.fresh();
      return make_ax(f->name, n, p);
    }
    if (head == "cut") {
      arity({3});
      auto f = parse_formula(it[1]);
      auto p = sub(2, 0);
      auto q = sub(3, 1);
      int a = first(p->conclusion, f);
      int b = first(q->conclusion, negate(f));
      if (a < 0)
        throw RuleError("cut", path, to_string(*f) + " is not in the left premise");
      if (b < 0)
        throw RuleError("cut", path,
                        to_string(*negate(f)) + " is not in the right premise");
      return make_cut(p, a, q, b, path);
    }
    if (head == "tensor" || head == "with") {
      arity({2, 4});
      bool explicit_pos = it.size() == 5;
      std::size_t off = explicit_pos ? 3 : 1;
      auto p = sub(off, 0);
      auto q = sub(off + 1, 1);
      int a = pick(p->conclusion, explicit_pos ? &it[1] : nullptr, head, path);
      int b = pick(q->conclusion, explicit_pos ? &it[2] : nullptr, head, path);
      if (head == "tensor")
        return make_tensor(p, a, q, b, ids_.fresh(), path);
      return make_with(p, a, q, b, ids_.fresh(), path);
    }
    if (head == "par") {
      arity({3});
      std::size_t i = index_of(it[1]), j = index_of(it[2]);
      auto p = sub(3, 0);
      if (i == j)
        throw RuleError("par", path, "positions must differ");
      int a = pick(p->conclusion, &it[1], head, path);
      int b = pick(p->conclusion, &it[2], head, path);
      return make_par(p, a, b, ids_.fresh(), path);
    }
    if (head == "plusl" || head == "plusr") {
      arity({2, 3});
      auto other = parse_formula(it[1]);
      bool explicit_pos = it.size() == 4;
      auto p = sub(explicit_pos ? 3 : 2, 0);
      int a = pick(p->conclusion, explicit_pos ? &it[2] : nullptr, head, path);
      return make_plus(head == "plusl" ? Rule::plusl : Rule::plusr, p, a, other,
                       ids_.fresh(), path);
    }
    if (head == "top") {
      Sequent ctx;
      for (std::size_t k = 1; k < it.size(); ++k)
        ctx.push_back({ids_.fresh(), parse_formula(it[k])});
      return make_top(std::move(ctx), ids_.fresh());
    }
    throw ParseError("unknown rule '" + head + "'", it[0].line, it[0].column);
  }

private:
  IdSource ids_;

  static int first(Sequent const& s, FormulaPtr const& f) {
    for (auto const& o : s)
      if (equal(o.formula, f))
        return o.id;
    return -1;
  }

  static int pick(Sequent const& s, SExpr const* pos, std::string const& rule,
                  std::string const& path) {
    if (s.empty())
      throw RuleError(rule, path, "premise has an empty conclusion");
    if (!pos)
      return s.back().id;
    std::size_t i = index_of(*pos);
    if (i >= s.size())
      throw RuleError(rule, path,
                      "position " + std::to_string(i) + " is out of range for " +
                          sequent_string(s));
    return s[i].id;
  }
};

} // namespace

ProofPtr parse_proof(std::string const& text) {
  Checker c;
  return c.check(read_sexpr(text), "root");
}

bool is_mll(Proof const& p) {
  if (p.rule != Rule::ax && p.rule != Rule::cut && p.rule != Rule::tensor &&
      p.rule != Rule::par)
    return false;
  return std::all_of(p.premises.begin(), p.premises.end(),
                     [](ProofPtr const& q) { return is_mll(*q); });
}

bool is_cut_free(Proof const& p) {
  return p.rule != Rule::cut &&
         std::all_of(p.premises.begin(), p.premises.end(),
                     [](ProofPtr const& q) { return is_cut_free(*q); });
}

std::size_t cut_count(Proof const& p) {
  std::size_t n = p.rule == Rule::cut ? 1 : 0;
  for (auto const& q : p.premises)
    n += cut_count(*q);
  return n;
}

std::size_t depth(Proof const& p) {
  std::size_t d = 0;
  for (auto const& q : p.premises)
    d = std::max(d, depth(*q));
  return d + 1;
}

namespace {

ProofPtr rename(ProofPtr const& p, int from, int to) {
  auto r = std::make_shared<Proof>(*p);
  auto sw = [&](int& x) {
    if (x == from)
      x = to;
  };
  for (auto& o : r->conclusion)
    sw(o.id);
  sw(r->a);
  sw(r->b);
  sw(r->introduced);
  for (auto& [x, y] : r->context_map) {
    sw(x);
    sw(y);
  }
  for (auto& q : r->premises)
    if (position_of(q->conclusion, from) != std::string::npos)
      q = rename(q, from, to);
  return r;
}

// Same rule and rule data over new premises.
ProofPtr rebuild(Proof const& n, std::vector<ProofPtr> premises) {
  switch (n.rule) {
  case Rule::tensor:
    return make_tensor(premises[0], n.a, premises[1], n.b, n.introduced);
  case Rule::par:
    return make_par(premises[0], n.a, n.b, n.introduced);
  case Rule::cut:
    return make_cut(premises[0], n.a, premises[1], n.b);
  default:
    throw UnsupportedRuleError("normalization handles MLL proofs only");
  }
}

// Cut-free proof of (p minus a) + (q minus b) for cut-free p and q.
ProofPtr eliminate(ProofPtr const& p, int a, ProofPtr const& q, int b) {
  if (p->rule == Rule::ax)
    return rename(q, b, p->a == a ? p->b : p->a);
  if (q->rule == Rule::ax)
    return rename(p, a, q->a == b ? q->b : q->a);
  if (p->introduced != a) {
    auto prem = p->premises;
    for (auto& r : prem)
      if (position_of(r->conclusion, a) != std::string::npos) {
        r = eliminate(r, a, q, b);
        return rebuild(*p, prem);
      }
    throw Error("normalization: lost occurrence " + std::to_string(a));
  }
  if (q->introduced != b) {
    auto prem = q->premises;
    for (auto& r : prem)
      if (position_of(r->conclusion, b) != std::string::npos) {
        r = eliminate(p, a, r, b);
        return rebuild(*q, prem);
      }
    throw Error("normalization: lost occurrence " + std::to_string(b));
  }
  // Principal on both sides: one tensor, one par.
  ProofPtr t = p, s = q;
  if (p->rule == Rule::par)
    std::swap(t, s);
  if (t->rule != Rule::tensor || s->rule != Rule::par)
    throw UnsupportedRuleError("normalization: unexpected principal pair");
  auto const& left = t->premises[0];
  auto const& right = t->premises[1];
  auto const& body = s->premises[0];
  ProofPtr first = eliminate(left, t->a, body, s->a);
  return eliminate(right, t->b, first, s->b);
}

} // namespace

ProofPtr normalize_mll(ProofPtr const& p) {
  if (!is_mll(*p))
    throw UnsupportedRuleError("normalization handles MLL proofs only");
  if (p->premises.empty())
    return p;
  std::vector<ProofPtr> prem;
  for (auto const& q : p->premises)
    prem.push_back(normalize_mll(q));
  if (p->rule == Rule::cut)
    return eliminate(prem[0], p->a, prem[1], p->b);
  return rebuild(*p, prem);
}

} // namespace goi
