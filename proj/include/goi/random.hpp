#ifndef GOI_RANDOM_HPP
#define GOI_RANDOM_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "goi/dialect.hpp"
#include "goi/measurement.hpp"

namespace goi {

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Seeded generator shared by the test suites.
class Rng {
public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  cplx complex_uniform() { return {uniform(), uniform()}; }
  /// Uniform in [lo, hi].
  std::size_t index(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
  }
  bool coin() { return index(0, 1) == 1; }
  std::uint64_t next() { return engine_(); }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
};

/// Entries uniform in the unit square, times `scale`.
DenseOperator random_matrix(std::vector<Index> const& carrier, double scale,
                            Rng& rng);
/// Hermitian with operator norm `norm`.
DenseOperator random_hermitian(std::vector<Index> const& carrier, double norm,
                               Rng& rng);
/// Gram-Schmidt orthonormalization of a random complex matrix.
DenseOperator random_unitary(std::size_t n, Rng& rng);
/// U T U^* with T strictly upper triangular.
DenseOperator random_nilpotent(std::size_t n, double scale, Rng& rng);

/// Hermitian operator on carrier (x) dialect that does not mix dialect
/// blocks, scaled to operator norm `norm`.
DialectalOperator random_dialectal(std::vector<std::uint64_t> carrier,
                                   Dialect dialect, PseudoTrace trace,
                                   double norm, Rng& rng);

Project random_project(std::vector<std::uint64_t> carrier, Dialect dialect,
                       PseudoTrace trace, double wager, double norm, Rng& rng);

/// A random small dialect (1 to 2 blocks of size 1 to 2) with random
/// positive weights.
std::pair<Dialect, PseudoTrace> random_dialect(Rng& rng);

/// Random block permutation with random unitary blocks.
DialectIso random_iso(Dialect const& d, Rng& rng);

/// Random hermitian weighted partial permutation on carrier (x) C with no
/// fixed location: a matching with unimodular weights.
DialectalOperator random_matching(std::vector<std::uint64_t> const& carrier,
                                  Rng& rng);

} // namespace goi

#endif
