#include "goi/random.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace goi {

DenseOperator random_matrix(std::vector<Index> const& carrier, double scale,
                            Rng& rng) {
  DenseOperator m(carrier);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      m(i, j) = scale * rng.complex_uniform();
  return m;
}

DenseOperator random_hermitian(std::vector<Index> const& carrier, double norm,
                               Rng& rng) {
  DenseOperator m = random_matrix(carrier, 1.0, rng);
  DenseOperator h = scale(add(m, adjoint(m)), 0.5);
  double n = operator_norm(h);
  return n == 0.0 ? h : scale(h, norm / n);
}

DenseOperator random_unitary(std::size_t n, Rng& rng) {
  auto carrier = natural_carrier(n);
  DenseOperator m = random_matrix(carrier, 1.0, rng);
  // Columns are orthonormalized in place.
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      cplx dot = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        dot += std::conj(m(i, k)) * m(i, j);
      for (std::size_t i = 0; i < n; ++i)
        m(i, j) -= dot * m(i, k);
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      norm += std::norm(m(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i)
      m(i, j) /= norm;
  }
  return m;
}

DenseOperator random_nilpotent(std::size_t n, double scale_factor, Rng& rng) {
  auto carrier = natural_carrier(n);
  DenseOperator t(carrier);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      t(i, j) = scale_factor * rng.complex_uniform();
  DenseOperator u = random_unitary(n, rng);
  return mat_mul(mat_mul(u, t), adjoint(u));
}

DialectalOperator random_dialectal(std::vector<std::uint64_t> carrier,
                                   Dialect dialect, PseudoTrace trace,
                                   double norm, Rng& rng) {
  DialectalOperator r{std::move(carrier), std::move(dialect), std::move(trace), {}};
  auto w = r.window();
  DenseOperator m = random_matrix(w, 1.0, rng);
  std::size_t n = r.dialect.total();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (r.dialect.block_of(i % n) != r.dialect.block_of(j % n))
        m(i, j) = 0.0;
  DenseOperator h = scale(add(m, adjoint(m)), 0.5);
  double hn = w.empty() ? 0.0 : operator_norm(h);
  r.op = hn == 0.0 ? h : scale(h, norm / hn);
  return r;
}

Project random_project(std::vector<std::uint64_t> carrier, Dialect dialect,
                       PseudoTrace trace, double wager, double norm, Rng& rng) {
  return Project{wager, random_dialectal(std::move(carrier), std::move(dialect),
                                         std::move(trace), norm, rng)};
}

std::pair<Dialect, PseudoTrace> random_dialect(Rng& rng) {
  std::size_t blocks = rng.index(1, 2);
  std::vector<std::size_t> sizes;
  PseudoTrace t;
  t.weights.clear();
  for (std::size_t b = 0; b < blocks; ++b) {
    sizes.push_back(rng.index(1, 2));
    t.weights.push_back(rng.uniform(0.25, 1.0));
  }
  return {Dialect(sizes), t};
}

DialectIso random_iso(Dialect const& d, Rng& rng) {
  DialectIso iso;
  iso.perm.resize(d.block_count());
  std::iota(iso.perm.begin(), iso.perm.end(), std::size_t{0});
  std::shuffle(iso.perm.begin(), iso.perm.end(), rng.engine());
  for (auto old : iso.perm)
    iso.unitaries.push_back(random_unitary(d.blocks()[old], rng));
  return iso;
}

DialectalOperator random_matching(std::vector<std::uint64_t> const& carrier,
                                  Rng& rng) {
  std::vector<std::uint64_t> order = carrier;
  std::shuffle(order.begin(), order.end(), rng.engine());
  std::map<Index, Arrow> g;
  for (std::size_t i = 0; i + 1 < order.size(); i += 2) {
    if (rng.index(0, 3) == 0)
      continue;
    double angle = rng.uniform(0.0, 2.0 * M_PI);
    cplx w = std::polar(1.0, angle);
    g[Index{order[i], 0}] = Arrow{Index{order[i + 1], 0}, w};
    g[Index{order[i + 1], 0}] = Arrow{Index{order[i], 0}, std::conj(w)};
  }
  return DialectalOperator{carrier, Dialect(), PseudoTrace(),
                           PartialInjectionOp::table(std::move(g))};
}

} // namespace goi
