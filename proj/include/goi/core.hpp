#ifndef GOI_CORE_HPP
#define GOI_CORE_HPP

#include <complex>
#include <cstdint>
#include <compare>
#include <ostream>
#include <stdexcept>
#include <string>

namespace goi {

using cplx = std::complex<double>;

/// A basis vector of l2(N) tensored with a dialect coordinate.
///
/// `value` is the base location, `slot` the dialect copy. Dense operators use
/// the same type as their (opaque, totally ordered) carrier labels.
struct Index {
  std::uint64_t value = 0;
  std::uint64_t slot = 0;

  auto operator<=>(Index const&) const = default;
};

inline std::ostream& operator<<(std::ostream& os, Index const& i) {
  os << i.value;
  if (i.slot != 0)
    os << '.' << i.slot;
  return os;
}

std::string to_string(Index const& i);

/// Structural tolerance, 1e-9 unless overridden by the GOI_TOL environment
/// variable (read once).
double tau_num();

/// Tolerance for determinant identities.
inline constexpr double kDetTol = 1e-8;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CarrierError : public Error {
public:
  using Error::Error;
};

class NumericError : public Error {
public:
  using Error::Error;
};

class WeightError : public Error {
public:
  using Error::Error;
};

class DisjointnessError : public Error {
public:
  DisjointnessError(Index clash, std::string const& what)
      : Error(what + " at index " + to_string(clash)), clash(clash) {}
  Index clash;
};

class WindowError : public Error {
public:
  explicit WindowError(Index escaping)
      : Error("operator escapes window at index " + to_string(escaping)),
        escaping(escaping) {}
  Index escaping;
};

class NotNilpotentError : public Error {
public:
  explicit NotNilpotentError(Index witness)
      : Error("product is not nilpotent, cycle through index " +
              to_string(witness)),
        witness(witness) {}
  Index witness;
};

class FeedbackSingularError : public Error {
public:
  using Error::Error;
};

class NotOrthogonalError : public Error {
public:
  using Error::Error;
};

class IndeterminateError : public Error {
public:
  using Error::Error;
};

class UnsupportedRuleError : public Error {
public:
  using Error::Error;
};

class MissingVariableError : public Error {
public:
  explicit MissingVariableError(std::string var)
      : Error("basis has no entry for variable " + var), variable(std::move(var)) {}
  std::string variable;
};

} // namespace goi

#endif
