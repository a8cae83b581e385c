#include "doctest.h"

#include <cmath>

#include "goi/linalg.hpp"
#include "goi/random.hpp"

using namespace goi;

namespace {

DenseOperator schoolbook(DenseOperator const& a, DenseOperator const& b) {
  std::size_t n = a.size();
  DenseOperator c(a.carrier());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

// Cofactor expansion along the first row.
cplx laplace_det(DenseOperator const& a) {
  std::size_t n = a.size();
  if (n == 1)
    return a(0, 0);
  cplx d = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    DenseOperator minor(natural_carrier(n - 1));
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t c = 0, cc = 0; c < n; ++c)
        if (c != j)
          minor(r - 1, cc++) = a(r, c);
    d += (j % 2 == 0 ? 1.0 : -1.0) * a(0, j) * laplace_det(minor);
  }
  return d;
}

DenseOperator phase_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i)
    p[i] = i;
  std::shuffle(p.begin(), p.end(), rng.engine());
  DenseOperator m(natural_carrier(n));
  for (std::size_t i = 0; i < n; ++i)
    if (rng.index(0, 4) != 0)
      m(p[i], i) = std::polar(1.0, rng.uniform(0.0, 6.28));
  return m;
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("product matches the schoolbook oracle") {
  Rng rng;
  for (int t = 0; t < 20; ++t) {
    auto c = natural_carrier(4);
    auto a = random_matrix(c, 1.0, rng), b = random_matrix(c, 1.0, rng);
    CHECK(max_abs_diff(mat_mul(a, b), schoolbook(a, b)) <= 1e-12);
  }
}

TEST_CASE("operands are matched by label, not by position") {
  std::vector<Index> ab{{7, 0}, {3, 0}}, ba{{3, 0}, {7, 0}};
  DenseOperator a(ab, {1.0, 2.0, 3.0, 4.0});
  DenseOperator b = a.aligned_to(ba);
  CHECK(b(0, 0) == cplx(4.0));
  CHECK(b(0, 1) == cplx(3.0));
  CHECK(max_abs_diff(add(a, b), scale(a, 2.0)) == 0.0);
  CHECK(max_abs_diff(mat_mul(a, b), mat_mul(a, a)) == 0.0);
}

TEST_CASE("the 3x3 counterexample product is upper triangular") {
  double h = std::sqrt(0.5);
  auto u = DenseOperator::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
  auto v = DenseOperator::from_rows({{0, h, -h}, {h, 0, 0}, {-h, 0, 0}});
  auto expected = DenseOperator::from_rows({{h, 0, 0}, {0, h, -h}, {0, 0, 0}});
  auto uv = mat_mul(u, v);
  CHECK(max_abs_diff(uv, expected) <= 1e-15);
  CHECK(is_partial_isometry(u));
  CHECK(is_partial_isometry(v));
  CHECK_FALSE(is_partial_isometry(uv));
  CHECK(std::abs(plain_det(one_minus(uv)) - (1.0 - h) * (1.0 - h)) <= 1e-12);
}

TEST_CASE("the 2x2 counterexample has det(1 - uv) = 4") {
  auto u = DenseOperator::from_rows({{0, -1}, {-1, 0}});
  auto v = DenseOperator::from_rows({{0, 1}, {1, 0}});
  CHECK(std::abs(plain_det(one_minus(mat_mul(u, v))) - 4.0) <= 1e-12);
}

TEST_CASE("determinant matches cofactor expansion") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    auto a = random_matrix(natural_carrier(rng.index(1, 5)), 1.0, rng);
    cplx want = laplace_det(a);
    CHECK(std::abs(plain_det(a) - want) <= 1e-12 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("determinant is multiplicative") {
  Rng rng(8);
  for (int t = 0; t < 30; ++t) {
    auto c = natural_carrier(4);
    auto a = random_matrix(c, 1.0, rng), b = random_matrix(c, 1.0, rng);
    cplx l = plain_det(mat_mul(a, b)), r = plain_det(a) * plain_det(b);
    CHECK(std::abs(l - r) <= 1e-10 * std::max(1.0, std::abs(r)));
  }
}

TEST_CASE("Fuglede-Kadison determinant") {
  SUBCASE("normalized trace gives |det|^(1/n)") {
    auto a = DenseOperator::diagonal({2.0, 8.0});
    CHECK(fk_det(a) == doctest::Approx(4.0).epsilon(1e-14));
  }
  SUBCASE("weights act block by block") {
    auto a = DenseOperator::diagonal({2.0, 3.0, 5.0});
    double want = std::pow(2.0, 0.5) * std::pow(3.0, 0.25) * std::pow(5.0, 0.25);
    CHECK(fk_det(a, std::vector<double>{0.5, 0.25, 0.25}) ==
          doctest::Approx(want).epsilon(1e-14));
  }
  SUBCASE("singular input gives 0") {
    CHECK(fk_det(DenseOperator::diagonal({1.0, 0.0})) == 0.0);
  }
  SUBCASE("one plus a nilpotent has determinant 1") {
    Rng rng(9);
    for (int t = 0; t < 10; ++t) {
      auto n = random_nilpotent(5, 1.0, rng);
      CHECK(std::abs(fk_det(add(DenseOperator::identity(n.carrier()), n)) - 1.0) <= 1e-9);
    }
  }
  SUBCASE("bounded by the spectral radius") {
    Rng rng(10);
    for (int t = 0; t < 30; ++t) {
      auto a = random_matrix(natural_carrier(4), 1.0, rng);
      CHECK(fk_det(a) <= spectral_radius(a).spectral_radius + 1e-8);
    }
  }
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(DenseOperator::from_rows({{0, 1}, {1, 0}})) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(operator_norm(DenseOperator::diagonal({3.0, -1.0})) ==
        doctest::Approx(3.0).epsilon(1e-14));
  CHECK(operator_norm(DenseOperator(natural_carrier(3))) == 0.0);
  Rng rng(11);
  auto u = random_unitary(5, rng);
  CHECK(operator_norm(u) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs_diff(mat_mul(adjoint(u), u), DenseOperator::identity(u.carrier())) <=
        1e-12);
}

TEST_CASE("spectral radius certificate") {
  SUBCASE("nilpotent input is certified zero") {
    auto n = DenseOperator::from_rows({{0, 1, 2}, {0, 0, 3}, {0, 0, 0}});
    auto rep = spectral_radius(n);
    CHECK(rep.exact_zero);
    CHECK(rep.gate() == UnitGate::below);
  }
  SUBCASE("normal input has radius equal to its norm") {
    auto rep = spectral_radius(DenseOperator::diagonal({0.5, -0.25}));
    CHECK(rep.lower == doctest::Approx(0.5));
    CHECK(rep.upper == doctest::Approx(0.5));
    CHECK(rep.gate() == UnitGate::below);
  }
  SUBCASE("groupoid elements sit at 1") {
    auto rep = spectral_radius(DenseOperator::from_rows({{0, 1}, {1, 0}}));
    CHECK(rep.gate() == UnitGate::at_least);
  }
  SUBCASE("upper bounds decrease and enclose the eigenvalue") {
    auto a = DenseOperator::from_rows({{0.5, 10.0}, {0.0, 0.25}});
    auto rep = spectral_radius(a);
    CHECK(rep.lower <= 0.5 + 1e-12);
    CHECK(rep.upper >= 0.5 - 1e-12);
    CHECK(rep.upper - 0.5 <= 1e-6);
    for (std::size_t i = 1; i < rep.upper_sequence.size(); ++i)
      CHECK(rep.upper_sequence[i] <= rep.upper_sequence[i - 1]);
  }
  SUBCASE("settling stops at a certified bound") {
    auto a = DenseOperator::from_rows({{0.5, 10.0}, {0.0, 0.25}});
    auto rep = spectral_radius(a, 1e-12, 0.99);
    CHECK(rep.settled);
    CHECK(rep.upper < 0.99);
    CHECK(rep.gate() == UnitGate::below);
  }
}

TEST_CASE("predicates") {
  Rng rng(13);
  for (int t = 0; t < 20; ++t) {
    auto p = phase_permutation(5, rng);
    CHECK(is_weighted_partial_permutation(p));
    CHECK(is_partial_isometry(p));
  }
  auto proj = DenseOperator::from_rows({{0.5, 0.5}, {0.5, 0.5}});
  CHECK(is_projection(proj));
  CHECK(is_hermitian(proj));
  CHECK_FALSE(is_weighted_partial_permutation(proj));
  CHECK(is_normal(DenseOperator::from_rows({{0, 1}, {-1, 0}})));
  CHECK_FALSE(is_normal(DenseOperator::from_rows({{0, 1}, {0, 0}})));
}

TEST_CASE("direct sum and tensor product") {
  auto a = DenseOperator::from_rows({{1, 2}, {3, 4}});
  auto b = DenseOperator::from_rows({{0, 5}, {6, 7}});
  auto k = tensor(a, b);
  REQUIRE(k.size() == 4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 2; ++q)
          CHECK(k(i * 2 + p, j * 2 + q) == a(i, j) * b(p, q));
  std::vector<Index> shifted{{2, 0}, {3, 0}};
  DenseOperator b2(shifted, b.entries());
  auto s = direct_sum(a, b2);
  REQUIRE(s.size() == 4);
  CHECK(s(0, 2) == cplx(0.0));
  CHECK(s(3, 3) == cplx(7.0));
  CHECK(plain_det(s) == plain_det(a) * plain_det(b));
}

TEST_CASE("solve returns a solution or reports singularity") {
  Rng rng(14);
  auto a = random_matrix(natural_carrier(4), 1.0, rng);
  auto b = random_matrix(natural_carrier(4), 1.0, rng);
  auto x = solve(a, b);
  REQUIRE(x);
  CHECK(max_abs_diff(mat_mul(a, *x), b) <= 1e-10);
  CHECK_FALSE(solve(DenseOperator::diagonal({1.0, 0.0}), b.restricted(natural_carrier(2))));
}

TEST_CASE("restriction and extension are inverse on the subset") {
  Rng rng(15);
  auto a = random_matrix(natural_carrier(3), 1.0, rng);
  auto big = a.extended(natural_carrier(5));
  CHECK(big.size() == 5);
  CHECK(max_abs_diff(big.restricted(natural_carrier(3)), a) == 0.0);
  CHECK(big(4, 4) == cplx(0.0));
}

}
