#include "goi/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace goi {

namespace {

constexpr std::uint64_t kTopBit = std::uint64_t{1} << 63;

void check_weight(cplx w) {
  if (std::abs(std::abs(w) - 1.0) > tau_num())
    throw WeightError("weight of modulus " + std::to_string(std::abs(w)) +
                      " is not unimodular");
}

// Cylinders of two words intersect iff one word is a prefix of the other.
bool overlaps(AddressWord const& a, AddressWord const& b) {
  return a.is_prefix_of(b) || b.is_prefix_of(a);
}

void check_terms(std::vector<WordTerm> const& terms) {
  for (auto const& t : terms)
    check_weight(t.weight);
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      if (overlaps(terms[i].source, terms[j].source)) {
        AddressWord const& longer =
            terms[i].source.length() >= terms[j].source.length()
                ? terms[i].source
                : terms[j].source;
        throw DisjointnessError(Index{longer.apply(0), 0},
                                "address terms share a source");
      }
      if (overlaps(terms[i].target, terms[j].target)) {
        AddressWord const& longer =
            terms[i].target.length() >= terms[j].target.length()
                ? terms[i].target
                : terms[j].target;
        throw DisjointnessError(Index{longer.apply(0), 0},
                                "address terms share a target");
      }
    }
}

std::vector<WordTerm> merge_siblings(std::vector<WordTerm> terms) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(terms.begin(), terms.end());
    for (std::size_t i = 0; i < terms.size() && !changed; ++i) {
      auto const& a = terms[i];
      if (a.target.empty() || a.source.empty())
        continue;
      auto const& ta = a.target.letters();
      auto const& sa = a.source.letters();
      if (ta.back() != 'R' || sa.back() != 'R')
        continue;
      std::string tstem = ta.substr(0, ta.size() - 1);
      std::string sstem = sa.substr(0, sa.size() - 1);
      WordTerm sibling{AddressWord(tstem + "L"), AddressWord(sstem + "L"),
                       a.weight};
      for (std::size_t j = 0; j < terms.size(); ++j) {
        if (j == i || !(terms[j] == sibling))
          continue;
        WordTerm merged{AddressWord(tstem), AddressWord(sstem), a.weight};
        std::size_t hi = std::max(i, j), lo = std::min(i, j);
        terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(hi));
        terms.erase(terms.begin() + static_cast<std::ptrdiff_t>(lo));
        terms.push_back(merged);
        changed = true;
        break;
      }
    }
  }
  std::sort(terms.begin(), terms.end());
  return terms;
}

// Points of cylinder(t s^*) kept by (1-c) on both sides, as refined terms.
void refine_outside(WordTerm const& term, std::vector<AddressWord> const& cut,
                    std::vector<WordTerm>& out) {
  bool split = false;
  for (auto const& c : cut) {
    if (c.is_prefix_of(term.source) || c.is_prefix_of(term.target))
      return;
    if (term.source.is_prefix_of(c) || term.target.is_prefix_of(c))
      split = true;
  }
  if (!split) {
    out.push_back(term);
    return;
  }
  for (char x : {'R', 'L'}) {
    std::string s(1, x);
    refine_outside(WordTerm{term.target.then(AddressWord(s)),
                            term.source.then(AddressWord(s)), term.weight},
                   cut, out);
  }
}

} // namespace

AddressWord::AddressWord(std::string letters) : letters_(std::move(letters)) {
  for (char c : letters_)
    if (c != 'L' && c != 'R')
      throw Error("address words use only the letters L and R");
}

std::uint64_t AddressWord::apply(std::uint64_t n) const {
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    if (n & kTopBit)
      throw NumericError("address word application overflows");
    n = 2 * n + (*it == 'L' ? 1 : 0);
  }
  return n;
}

std::optional<std::uint64_t> AddressWord::strip(std::uint64_t n) const {
  for (char c : letters_) {
    std::uint64_t bit = (c == 'L') ? 1 : 0;
    if ((n & 1u) != bit)
      return std::nullopt;
    n >>= 1u;
  }
  return n;
}

bool AddressWord::is_prefix_of(AddressWord const& other) const {
  return other.letters_.compare(0, letters_.size(), letters_) == 0 &&
         letters_.size() <= other.letters_.size();
}

PartialInjectionOp PartialInjectionOp::table(std::map<Index, Arrow> graph) {
  PartialInjectionOp u;
  u.kind_ = Kind::table;
  for (auto const& [src, arrow] : graph) {
    check_weight(arrow.weight);
    auto [it, fresh] = u.inverse_graph_.emplace(
        arrow.target, Arrow{src, std::conj(arrow.weight)});
    if (!fresh)
      throw DisjointnessError(arrow.target, "two sources share a target");
  }
  u.graph_ = std::move(graph);
  return u;
}

PartialInjectionOp PartialInjectionOp::table(
    std::vector<std::pair<std::uint64_t, std::uint64_t>> const& arrows) {
  std::map<Index, Arrow> g;
  for (auto [s, t] : arrows) {
    if (!g.emplace(Index{s, 0}, Arrow{Index{t, 0}, 1.0}).second)
      throw DisjointnessError(Index{s, 0}, "repeated source");
  }
  return table(std::move(g));
}

PartialInjectionOp PartialInjectionOp::address(std::vector<WordTerm> terms) {
  check_terms(terms);
  PartialInjectionOp u;
  u.kind_ = Kind::address;
  std::sort(terms.begin(), terms.end());
  u.terms_ = std::move(terms);
  return u;
}

PartialInjectionOp PartialInjectionOp::rule(std::string name, RuleFn forward,
                                            RuleFn inverse) {
  PartialInjectionOp u;
  u.kind_ = Kind::rule;
  u.rule_ = std::make_shared<RuleImpl const>(
      RuleImpl{std::move(name), std::move(forward), std::move(inverse)});
  return u;
}

PartialInjectionOp PartialInjectionOp::projection(
    std::vector<Index> const& support) {
  std::map<Index, Arrow> g;
  for (auto const& i : support)
    g[i] = Arrow{i, 1.0};
  return table(std::move(g));
}

std::string const& PartialInjectionOp::name() const {
  static std::string const table_name = "table", address_name = "address";
  if (kind_ == Kind::rule)
    return rule_->name;
  return kind_ == Kind::table ? table_name : address_name;
}

std::optional<Arrow> PartialInjectionOp::apply(Index i) const {
  switch (kind_) {
  case Kind::table: {
    auto it = graph_.find(i);
    if (it == graph_.end())
      return std::nullopt;
    return it->second;
  }
  case Kind::address:
    for (auto const& t : terms_)
      if (auto rest = t.source.strip(i.value))
        return Arrow{Index{t.target.apply(*rest), i.slot}, t.weight};
    return std::nullopt;
  case Kind::rule:
    return rule_->forward(i);
  }
  return std::nullopt;
}

std::optional<Arrow> PartialInjectionOp::apply_inverse(Index i) const {
  switch (kind_) {
  case Kind::table: {
    auto it = inverse_graph_.find(i);
    if (it == inverse_graph_.end())
      return std::nullopt;
    return it->second;
  }
  case Kind::address:
    for (auto const& t : terms_)
      if (auto rest = t.target.strip(i.value))
        return Arrow{Index{t.source.apply(*rest), i.slot}, std::conj(t.weight)};
    return std::nullopt;
  case Kind::rule:
    return rule_->inverse(i);
  }
  return std::nullopt;
}

bool PartialInjectionOp::is_zero() const {
  switch (kind_) {
  case Kind::table:
    return graph_.empty();
  case Kind::address:
    return terms_.empty();
  case Kind::rule:
    return false;
  }
  return false;
}

std::size_t PartialInjectionOp::support_size() const {
  return kind_ == Kind::table ? graph_.size() : terms_.size();
}

std::vector<Index> PartialInjectionOp::domain() const {
  if (kind_ != Kind::table)
    throw UnsupportedRuleError("domain is only enumerable for tables");
  std::vector<Index> d;
  for (auto const& [s, a] : graph_)
    d.push_back(s);
  return d;
}

std::vector<Index> PartialInjectionOp::codomain() const {
  if (kind_ != Kind::table)
    throw UnsupportedRuleError("codomain is only enumerable for tables");
  std::vector<Index> d;
  for (auto const& [t, a] : inverse_graph_)
    d.push_back(t);
  return d;
}

PartialInjectionOp PartialInjectionOp::reduced() const {
  if (kind_ != Kind::address)
    return *this;
  PartialInjectionOp u;
  u.kind_ = Kind::address;
  u.terms_ = merge_siblings(terms_);
  return u;
}

bool PartialInjectionOp::operator==(PartialInjectionOp const& other) const {
  if (kind_ == Kind::rule || other.kind_ == Kind::rule)
    return rule_ == other.rule_ && kind_ == other.kind_;
  if (is_zero() && other.is_zero())
    return true;
  if (kind_ != other.kind_)
    return false;
  if (kind_ == Kind::table)
    return graph_ == other.graph_;
  return merge_siblings(terms_) == merge_siblings(other.terms_);
}

bool PartialInjectionOp::approx_equal(PartialInjectionOp const& other,
                                      double tol) const {
  if (kind_ != Kind::table || other.kind_ != Kind::table)
    return *this == other;
  if (graph_.size() != other.graph_.size())
    return false;
  for (auto const& [s, a] : graph_) {
    auto it = other.graph_.find(s);
    if (it == other.graph_.end() || it->second.target != a.target ||
        std::abs(it->second.weight - a.weight) > tol)
      return false;
  }
  return true;
}

PartialInjectionOp r_isometry() {
  return PartialInjectionOp::address({WordTerm{AddressWord("R"), AddressWord(), 1.0}});
}

PartialInjectionOp l_isometry() {
  return PartialInjectionOp::address({WordTerm{AddressWord("L"), AddressWord(), 1.0}});
}

PartialInjectionOp identity_op() {
  return PartialInjectionOp::address({WordTerm{AddressWord(), AddressWord(), 1.0}});
}

PartialInjectionOp compose(PartialInjectionOp const& u,
                           PartialInjectionOp const& v) {
  using Kind = PartialInjectionOp::Kind;
  if (v.kind() == Kind::table) {
    std::map<Index, Arrow> g;
    for (auto const& [s, a] : v.graph())
      if (auto b = u.apply(a.target))
        g[s] = Arrow{b->target, b->weight * a.weight};
    return PartialInjectionOp::table(std::move(g));
  }
  if (u.kind() == Kind::table) {
    std::map<Index, Arrow> g;
    for (auto const& [s, a] : u.graph())
      if (auto pre = v.apply_inverse(s))
        g[pre->target] = Arrow{a.target, a.weight * std::conj(pre->weight)};
    return PartialInjectionOp::table(std::move(g));
  }
  if (u.kind() == Kind::address && v.kind() == Kind::address) {
    // (t1 s1*)(t2 s2*): s1*t2 is a word, an adjoint word, or zero.
    std::vector<WordTerm> out;
    for (auto const& b : v.terms())
      for (auto const& a : u.terms()) {
        cplx w = a.weight * b.weight;
        if (a.source.is_prefix_of(b.target)) {
          AddressWord rest(b.target.letters().substr(a.source.length()));
          out.push_back(WordTerm{a.target.then(rest), b.source, w});
        } else if (b.target.is_prefix_of(a.source)) {
          AddressWord rest(a.source.letters().substr(b.target.length()));
          out.push_back(WordTerm{a.target, b.source.then(rest), w});
        }
      }
    return PartialInjectionOp::address(std::move(out)).reduced();
  }
  auto fwd = [u, v](Index i) -> std::optional<Arrow> {
    auto a = v.apply(i);
    if (!a)
      return std::nullopt;
    auto b = u.apply(a->target);
    if (!b)
      return std::nullopt;
    return Arrow{b->target, a->weight * b->weight};
  };
  auto inv = [u, v](Index i) -> std::optional<Arrow> {
    auto a = u.apply_inverse(i);
    if (!a)
      return std::nullopt;
    auto b = v.apply_inverse(a->target);
    if (!b)
      return std::nullopt;
    return Arrow{b->target, a->weight * b->weight};
  };
  return PartialInjectionOp::rule("(" + u.name() + " . " + v.name() + ")", fwd,
                                  inv);
}

PartialInjectionOp adjoint(PartialInjectionOp const& u) {
  using Kind = PartialInjectionOp::Kind;
  switch (u.kind()) {
  case Kind::table: {
    std::map<Index, Arrow> g;
    for (auto const& [s, a] : u.graph())
      g[a.target] = Arrow{s, std::conj(a.weight)};
    return PartialInjectionOp::table(std::move(g));
  }
  case Kind::address: {
    std::vector<WordTerm> out;
    for (auto const& t : u.terms())
      out.push_back(WordTerm{t.source, t.target, std::conj(t.weight)});
    return PartialInjectionOp::address(std::move(out));
  }
  case Kind::rule:
    break;
  }
  auto fwd = [u](Index i) { return u.apply_inverse(i); };
  auto inv = [u](Index i) { return u.apply(i); };
  return PartialInjectionOp::rule(u.name() + "*", fwd, inv);
}

PartialInjectionOp sum_disjoint(PartialInjectionOp const& u,
                                PartialInjectionOp const& v) {
  using Kind = PartialInjectionOp::Kind;
  if (u.is_zero())
    return v;
  if (v.is_zero())
    return u;
  if (u.kind() == Kind::table && v.kind() == Kind::table) {
    std::map<Index, Arrow> g = u.graph();
    for (auto const& [s, a] : v.graph())
      if (!g.emplace(s, a).second)
        throw DisjointnessError(s, "summands share a domain point");
    return PartialInjectionOp::table(std::move(g));
  }
  if (u.kind() == Kind::address && v.kind() == Kind::address) {
    std::vector<WordTerm> terms = u.terms();
    terms.insert(terms.end(), v.terms().begin(), v.terms().end());
    return PartialInjectionOp::address(std::move(terms));
  }
  // Mixed sums: disjointness is checked on the finite side when there is one.
  for (auto const* side : {&u, &v}) {
    PartialInjectionOp const& other = side == &u ? v : u;
    if (side->kind() != Kind::table)
      continue;
    for (auto const& [s, a] : side->graph()) {
      if (other.apply(s))
        throw DisjointnessError(s, "summands share a domain point");
      if (other.apply_inverse(a.target))
        throw DisjointnessError(a.target, "summands share a codomain point");
    }
  }
  auto fwd = [u, v](Index i) {
    auto a = u.apply(i);
    return a ? a : v.apply(i);
  };
  auto inv = [u, v](Index i) {
    auto a = u.apply_inverse(i);
    return a ? a : v.apply_inverse(i);
  };
  return PartialInjectionOp::rule("(" + u.name() + " + " + v.name() + ")", fwd,
                                  inv);
}

PartialInjectionOp conjugate(PartialInjectionOp const& u, AddressWord const& p) {
  using Kind = PartialInjectionOp::Kind;
  switch (u.kind()) {
  case Kind::table: {
    std::map<Index, Arrow> g;
    for (auto const& [s, a] : u.graph())
      g[Index{p.apply(s.value), s.slot}] =
          Arrow{Index{p.apply(a.target.value), a.target.slot}, a.weight};
    return PartialInjectionOp::table(std::move(g));
  }
  case Kind::address: {
    std::vector<WordTerm> out;
    for (auto const& t : u.terms())
      out.push_back(WordTerm{t.target.under(p), t.source.under(p), t.weight});
    return PartialInjectionOp::address(std::move(out));
  }
  case Kind::rule:
    break;
  }
  auto through = [p](PartialInjectionOp const& op, bool forward) {
    return [p, op, forward](Index i) -> std::optional<Arrow> {
      auto rest = p.strip(i.value);
      if (!rest)
        return std::nullopt;
      auto a = forward ? op.apply(Index{*rest, i.slot})
                       : op.apply_inverse(Index{*rest, i.slot});
      if (!a)
        return std::nullopt;
      return Arrow{Index{p.apply(a->target.value), a->target.slot}, a->weight};
    };
  };
  return PartialInjectionOp::rule(p.letters() + "(" + u.name() + ")",
                                  through(u, true), through(u, false));
}

PartialInjectionOp odot(PartialInjectionOp const& u,
                        PartialInjectionOp const& v) {
  return sum_disjoint(conjugate(u, AddressWord("R")),
                      conjugate(v, AddressWord("L")));
}

PartialInjectionOp tta() {
  return PartialInjectionOp::address(
      {WordTerm{AddressWord("L"), AddressWord("R"), 1.0}});
}

PartialInjectionOp restrict_outside(PartialInjectionOp const& u,
                                    PartialInjectionOp const& c) {
  using Kind = PartialInjectionOp::Kind;
  if (c.is_zero())
    return u;
  if (u.kind() == Kind::table) {
    std::map<Index, Arrow> g;
    for (auto const& [s, a] : u.graph())
      if (!c.apply(s) && !c.apply(a.target))
        g[s] = a;
    return PartialInjectionOp::table(std::move(g));
  }
  if (u.kind() == Kind::address && c.kind() == Kind::address) {
    std::vector<AddressWord> cut;
    for (auto const& t : c.terms()) {
      if (t.source != t.target)
        throw Error("restrict_outside: cut operator is not a projection");
      cut.push_back(t.source);
    }
    std::vector<WordTerm> out;
    for (auto const& t : u.terms())
      refine_outside(t, cut, out);
    return PartialInjectionOp::address(std::move(out)).reduced();
  }
  if (u.kind() == Kind::address && c.kind() == Kind::table)
    throw UnsupportedRuleError(
        "restrict_outside: finite cut of an address operator has no address form");
  auto fwd = [u, c](Index i) -> std::optional<Arrow> {
    if (c.apply(i))
      return std::nullopt;
    auto a = u.apply(i);
    if (!a || c.apply(a->target))
      return std::nullopt;
    return a;
  };
  auto inv = [u, c](Index i) -> std::optional<Arrow> {
    if (c.apply(i))
      return std::nullopt;
    auto a = u.apply_inverse(i);
    if (!a || c.apply(a->target))
      return std::nullopt;
    return a;
  };
  return PartialInjectionOp::rule("(1-c)" + u.name() + "(1-c)", fwd, inv);
}

bool is_partial_symmetry(PartialInjectionOp const& u, std::uint64_t budget) {
  if (u.kind() != PartialInjectionOp::Kind::rule) {
    return u == adjoint(u) && compose(u, compose(u, u)) == u;
  }
  for (std::uint64_t n = 0; n <= budget; ++n) {
    Index i{n, 0};
    auto a = u.apply(i);
    auto b = u.apply_inverse(i);
    if (a.has_value() != b.has_value())
      return false;
    if (a && (a->target != b->target || std::abs(a->weight - b->weight) > tau_num()))
      return false;
  }
  return true;
}

namespace {

NilpotencyResult explore_orbits(PartialInjectionOp const& u,
                                std::vector<Index> const& seeds,
                                std::uint64_t budget) {
  // steps[i]: number of successful applications starting from i.
  std::map<Index, std::uint64_t> steps;
  std::uint64_t degree = 1;
  for (auto const& seed : seeds) {
    if (auto it = steps.find(seed); it != steps.end()) {
      degree = std::max(degree, it->second + 1);
      continue;
    }
    std::vector<Index> path{seed};
    std::set<Index> on_path{seed};
    std::uint64_t tail = 0;
    while (true) {
      auto next = u.apply(path.back());
      if (!next) {
        tail = 0;
        break;
      }
      Index t = next->target;
      if (auto it = steps.find(t); it != steps.end()) {
        tail = it->second + 1;
        break;
      }
      if (on_path.count(t))
        return Cyclic{t};
      if (path.size() > budget)
        return Exceeded{};
      path.push_back(t);
      on_path.insert(t);
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      steps[*it] = tail++;
    degree = std::max(degree, steps[seed] + 1);
  }
  return Nilpotent{degree};
}

} // namespace

NilpotencyResult nilpotency(PartialInjectionOp const& u,
                            std::optional<std::vector<Index>> seeds,
                            std::uint64_t budget) {
  using Kind = PartialInjectionOp::Kind;
  switch (u.kind()) {
  case Kind::table:
    return explore_orbits(u, seeds ? *seeds : u.domain(), budget);
  case Kind::rule:
    if (!seeds)
      throw Error("nilpotency of a rule operator needs seeds");
    return explore_orbits(u, *seeds, budget);
  case Kind::address:
    break;
  }
  std::vector<PartialInjectionOp> seen;
  PartialInjectionOp p = u.reduced();
  for (std::uint64_t k = 1; k <= budget; ++k) {
    if (p.is_zero())
      return Nilpotent{k};
    for (auto const& q : seen)
      if (q == p) {
        std::vector<Index> starts = seeds ? *seeds : std::vector<Index>{};
        for (auto const& t : u.terms())
          starts.push_back(Index{t.source.apply(0), 0});
        auto r = explore_orbits(u, starts, budget);
        if (std::holds_alternative<Cyclic>(r))
          return r;
        return Exceeded{};
      }
    if (p.support_size() > 100000)
      return Exceeded{};
    seen.push_back(p);
    p = compose(p, u);
  }
  return Exceeded{};
}

std::uint64_t beta_encode(std::uint64_t n, std::uint64_t m) {
  if (m >= (std::uint64_t{1} << 62) || n >= 63)
    throw NumericError("beta_encode overflow");
  std::uint64_t odd = 2 * m + 1;
  if (n > 0 && (odd >> (64 - n)) != 0)
    throw NumericError("beta_encode overflow");
  return (odd << n) - 1;
}

std::pair<std::uint64_t, std::uint64_t> beta_decode(std::uint64_t k) {
  if (k == std::numeric_limits<std::uint64_t>::max())
    return {64, 0};
  std::uint64_t v = k + 1;
  std::uint64_t n = 0;
  while ((v & 1u) == 0) {
    v >>= 1u;
    ++n;
  }
  return {n, (v - 1) / 2};
}

PartialInjectionOp internal_tensor(PartialInjectionOp const& u,
                                   PartialInjectionOp const& v) {
  using Kind = PartialInjectionOp::Kind;
  if (u.kind() == Kind::table && v.kind() == Kind::table) {
    std::map<Index, Arrow> g;
    for (auto const& [su, au] : u.graph())
      for (auto const& [sv, av] : v.graph())
        g[Index{beta_encode(su.value, sv.value), 0}] =
            Arrow{Index{beta_encode(au.target.value, av.target.value), 0},
                  au.weight * av.weight};
    return PartialInjectionOp::table(std::move(g));
  }
  auto through = [u, v](bool forward) {
    return [u, v, forward](Index i) -> std::optional<Arrow> {
      auto [n, m] = beta_decode(i.value);
      auto a = forward ? u.apply(Index{n, 0}) : u.apply_inverse(Index{n, 0});
      if (!a)
        return std::nullopt;
      auto b = forward ? v.apply(Index{m, 0}) : v.apply_inverse(Index{m, 0});
      if (!b)
        return std::nullopt;
      return Arrow{Index{beta_encode(a->target.value, b->target.value), i.slot},
                   a->weight * b->weight};
    };
  };
  return PartialInjectionOp::rule("(" + u.name() + " tensor " + v.name() + ")",
                                  through(true), through(false));
}

PartialInjectionOp bang(PartialInjectionOp const& u) {
  return internal_tensor(identity_op(), u);
}

PartialInjectionOp gamma_assoc() {
  auto fwd = [](Index i) -> std::optional<Arrow> {
    auto [a, r] = beta_decode(i.value);
    auto [p, q] = beta_decode(a);
    return Arrow{Index{beta_encode(p, beta_encode(q, r)), i.slot}, 1.0};
  };
  auto inv = [](Index i) -> std::optional<Arrow> {
    auto [p, b] = beta_decode(i.value);
    auto [q, r] = beta_decode(b);
    return Arrow{Index{beta_encode(beta_encode(p, q), r), i.slot}, 1.0};
  };
  return PartialInjectionOp::rule("gamma", fwd, inv);
}

PartialInjectionOp shift_rule() {
  auto fwd = [](Index i) -> std::optional<Arrow> {
    return Arrow{Index{i.value + 1, i.slot}, 1.0};
  };
  auto inv = [](Index i) -> std::optional<Arrow> {
    if (i.value == 0)
      return std::nullopt;
    return Arrow{Index{i.value - 1, i.slot}, 1.0};
  };
  return PartialInjectionOp::rule("shift", fwd, inv);
}

DenseOperator to_dense(PartialInjectionOp const& u,
                       std::vector<Index> const& window) {
  DenseOperator m(window);
  std::map<Index, std::size_t> pos;
  for (std::size_t i = 0; i < window.size(); ++i)
    pos[window[i]] = i;
  for (std::size_t j = 0; j < window.size(); ++j) {
    auto a = u.apply(window[j]);
    if (!a)
      continue;
    auto it = pos.find(a->target);
    if (it == pos.end())
      throw WindowError(a->target);
    m(it->second, j) = a->weight;
  }
  return m;
}

GroupElement g_identity() { return {}; }

GroupElement g_a() {
  GroupElement g;
  g.x[0] = 1;
  return g;
}

GroupElement g_b() {
  GroupElement g;
  g.p = 1;
  return g;
}

GroupElement g_compose(GroupElement const& g, GroupElement const& h) {
  GroupElement r;
  r.p = g.p + h.p;
  for (auto const& [n, v] : g.x)
    r.x[n + h.p] += v;
  for (auto const& [n, v] : h.x)
    r.x[n] += v;
  std::erase_if(r.x, [](auto const& e) { return e.second == 0; });
  return r;
}

GroupElement g_inverse(GroupElement const& g) {
  GroupElement r;
  r.p = -g.p;
  for (auto const& [n, v] : g.x)
    r.x[n - g.p] = -v;
  return r;
}

GroupElement monoid_word_eval(MonoidWord const& word) {
  GroupElement r = g_identity();
  for (auto const& [letter, exponent] : word) {
    GroupElement gen;
    if (letter == 'a')
      gen = g_a();
    else if (letter == 'b')
      gen = g_b();
    else
      throw Error(std::string("unknown monoid letter ") + letter);
    for (unsigned k = 0; k < exponent; ++k)
      r = g_compose(r, gen);
  }
  return r;
}

} // namespace goi
