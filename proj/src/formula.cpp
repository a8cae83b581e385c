#include "goi/formula.hpp"

#include <cctype>

namespace goi {

namespace {

class Reader {
public:
  explicit Reader(std::string const& text) : text_(text) {}

  SExpr read_top() {
    skip();
    if (at_end())
      throw ParseError("empty input", line_, col_);
    SExpr e = read();
    skip();
    if (!at_end())
      throw ParseError("trailing input after expression", line_, col_);
    return e;
  }

private:
  std::string const& text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (peek() == ';') {
        while (!at_end() && peek() != '\n')
          advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    if (peek() == ')')
      throw ParseError("unexpected ')'", line_, col_);
    if (peek() == '(') {
      advance();
      for (;;) {
        skip();
        if (at_end())
          throw ParseError("unclosed '(' opened here", e.line, e.column);
        if (peek() == ')') {
          advance();
          return e;
        }
        e.items.push_back(read());
      }
    }
    e.is_atom = true;
    while (!at_end() && peek() != '(' && peek() != ')' && peek() != ';' &&
           !std::isspace(static_cast<unsigned char>(peek()))) {
      e.atom += peek();
      advance();
    }
    return e;
  }
};

FormulaPtr make(Formula::Kind k, std::string name, FormulaPtr l = nullptr,
                FormulaPtr r = nullptr) {
  return std::make_shared<Formula const>(
      Formula{k, std::move(name), std::move(l), std::move(r)});
}

bool is_identifier(std::string const& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''))
      return false;
  return s != "top" && s != "zero";
}

void collect(Formula const& f, std::vector<Atom>& out) {
  switch (f.kind) {
  case Formula::Kind::var:
    out.push_back({f.name, false});
    return;
  case Formula::Kind::dual:
    out.push_back({f.name, true});
    return;
  case Formula::Kind::top:
  case Formula::Kind::zero:
    return;
  default:
    collect(*f.left, out);
    collect(*f.right, out);
  }
}

} // namespace

SExpr read_sexpr(std::string const& text) { return Reader(text).read_top(); }

FormulaPtr f_var(std::string name) { return make(Formula::Kind::var, std::move(name)); }
FormulaPtr f_dual(std::string name) {
  return make(Formula::Kind::dual, std::move(name));
}
FormulaPtr f_tensor(FormulaPtr a, FormulaPtr b) {
  return make(Formula::Kind::tensor, {}, std::move(a), std::move(b));
}
FormulaPtr f_par(FormulaPtr a, FormulaPtr b) {
  return make(Formula::Kind::par, {}, std::move(a), std::move(b));
}
FormulaPtr f_with(FormulaPtr a, FormulaPtr b) {
  return make(Formula::Kind::with, {}, std::move(a), std::move(b));
}
FormulaPtr f_plus(FormulaPtr a, FormulaPtr b) {
  return make(Formula::Kind::plus, {}, std::move(a), std::move(b));
}
FormulaPtr f_top() { return make(Formula::Kind::top, {}); }
FormulaPtr f_zero() { return make(Formula::Kind::zero, {}); }

FormulaPtr negate(FormulaPtr const& f) {
  using K = Formula::Kind;
  switch (f->kind) {
  case K::var:
    return f_dual(f->name);
  case K::dual:
    return f_var(f->name);
  case K::tensor:
    return f_par(negate(f->left), negate(f->right));
  case K::par:
    return f_tensor(negate(f->left), negate(f->right));
  case K::with:
    return f_plus(negate(f->left), negate(f->right));
  case K::plus:
    return f_with(negate(f->left), negate(f->right));
  case K::top:
    return f_zero();
  case K::zero:
    return f_top();
  }
  return f;
}

bool equal(Formula const& a, Formula const& b) {
  if (a.kind != b.kind || a.name != b.name)
    return false;
  if (!a.left)
    return true;
  return equal(*a.left, *b.left) && equal(*a.right, *b.right);
}

bool is_mll(Formula const& f) {
  using K = Formula::Kind;
  switch (f.kind) {
  case K::var:
  case K::dual:
    return true;
  case K::tensor:
  case K::par:
    return is_mll(*f.left) && is_mll(*f.right);
  default:
    return false;
  }
}

std::vector<Atom> atoms(Formula const& f) {
  std::vector<Atom> out;
  collect(f, out);
  return out;
}

std::string to_string(Formula const& f) {
  using K = Formula::Kind;
  switch (f.kind) {
  case K::var:
    return f.name;
  case K::dual:
    return "(dual " + f.name + ")";
  case K::tensor:
    return "(tensor " + to_string(*f.left) + " " + to_string(*f.right) + ")";
  case K::par:
    return "(par " + to_string(*f.left) + " " + to_string(*f.right) + ")";
  case K::with:
    return "(with " + to_string(*f.left) + " " + to_string(*f.right) + ")";
  case K::plus:
    return "(plus " + to_string(*f.left) + " " + to_string(*f.right) + ")";
  case K::top:
    return "top";
  case K::zero:
    return "zero";
  }
  return {};
}

FormulaPtr parse_formula(SExpr const& e) {
  if (e.is_atom) {
    if (e.atom == "top")
      return f_top();
    if (e.atom == "zero")
      return f_zero();
    if (!is_identifier(e.atom))
      throw ParseError("expected a variable, got '" + e.atom + "'", e.line,
                       e.column);
    return f_var(e.atom);
  }
  if (e.items.empty() || !e.items[0].is_atom)
    throw ParseError("expected a connective", e.line, e.column);
  std::string const& head = e.items[0].atom;
  if (head == "dual") {
    if (e.items.size() != 2 || !e.items[1].is_atom || !is_identifier(e.items[1].atom))
      throw ParseError("dual takes one variable", e.line, e.column);
    return f_dual(e.items[1].atom);
  }
  if (head == "tensor" || head == "par" || head == "with" || head == "plus") {
    if (e.items.size() != 3)
      throw ParseError(head + " takes two formulas", e.line, e.column);
    auto a = parse_formula(e.items[1]);
    auto b = parse_formula(e.items[2]);
    if (head == "tensor")
      return f_tensor(a, b);
    if (head == "par")
      return f_par(a, b);
    if (head == "with")
      return f_with(a, b);
    return f_plus(a, b);
  }
  throw ParseError("unknown connective '" + head + "'", e.items[0].line,
                   e.items[0].column);
}

FormulaPtr parse_formula(std::string const& text) {
  return parse_formula(read_sexpr(text));
}

} // namespace goi
