#ifndef GOI_FORMULA_HPP
#define GOI_FORMULA_HPP

#include <memory>
#include <string>
#include <vector>

#include "goi/core.hpp"

namespace goi {

class ParseError : public Error {
public:
  ParseError(std::string const& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

/// An ill-formed rule application. `path` lists premise positions from the
/// root, e.g. "root/1/0".
class RuleError : public Error {
public:
  RuleError(std::string const& rule, std::string const& path,
            std::string const& what)
      : Error(rule + " at " + path + ": " + what), rule(rule), path(path) {}
  std::string rule;
  std::string path;
};

/// A parsed s-expression with its source position.
struct SExpr {
  bool is_atom = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Reads exactly one s-expression; `;` starts a comment.
SExpr read_sexpr(std::string const& text);

struct Formula;
using FormulaPtr = std::shared_ptr<Formula const>;

/// Negation normal form: duals only on variables.
struct Formula {
  enum class Kind { var, dual, tensor, par, with, plus, top, zero };

  Kind kind;
  std::string name;      // var, dual
  FormulaPtr left, right; // binary connectives
};

FormulaPtr f_var(std::string name);
FormulaPtr f_dual(std::string name);
FormulaPtr f_tensor(FormulaPtr a, FormulaPtr b);
FormulaPtr f_par(FormulaPtr a, FormulaPtr b);
FormulaPtr f_with(FormulaPtr a, FormulaPtr b);
FormulaPtr f_plus(FormulaPtr a, FormulaPtr b);
FormulaPtr f_top();
FormulaPtr f_zero();

/// Linear negation by De Morgan; the order of leaves is preserved.
FormulaPtr negate(FormulaPtr const& f);
bool equal(Formula const& a, Formula const& b);
inline bool equal(FormulaPtr const& a, FormulaPtr const& b) {
  return equal(*a, *b);
}

/// Multiplicative fragment: variables, duals, tensor, par.
bool is_mll(Formula const& f);

/// A leaf of a formula: variable name and whether it is a dual.
struct Atom {
  std::string name;
  bool dual = false;
  bool operator==(Atom const&) const = default;
};
/// Atoms left to right.
std::vector<Atom> atoms(Formula const& f);

std::string to_string(Formula const& f);

FormulaPtr parse_formula(SExpr const& e);
FormulaPtr parse_formula(std::string const& text);

} // namespace goi

#endif
