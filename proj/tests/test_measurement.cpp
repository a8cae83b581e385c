#include "doctest.h"

#include <cmath>

#include "goi/measurement.hpp"
#include "goi/random.hpp"

using namespace goi;

namespace {

DialectalOperator plain(DenseOperator m) {
  std::vector<std::uint64_t> carrier;
  for (std::size_t i = 0; i < m.size(); ++i)
    carrier.push_back(i);
  return DialectalOperator{carrier, Dialect(), PseudoTrace(), std::move(m)};
}

DialectalOperator symbolic(std::vector<std::pair<std::uint64_t, std::uint64_t>> arrows,
                           std::vector<std::uint64_t> carrier) {
  return DialectalOperator{std::move(carrier), Dialect(), PseudoTrace(),
                           PartialInjectionOp::table(arrows)};
}

double h() { return std::sqrt(0.5); }

DenseOperator u3() { return DenseOperator::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}); }
DenseOperator v3() {
  return DenseOperator::from_rows({{0, h(), -h()}, {h(), 0, 0}, {-h(), 0, 0}});
}

} // namespace

TEST_SUITE("measurement") {

TEST_CASE("pseudo-trace evaluation") {
  Dialect d({1, 1});
  PseudoTrace k{{0.5, 0.5}};
  CHECK(k.unit_value() == doctest::Approx(1.0));
  CHECK(std::abs(pseudo_trace_eval(k, d, DenseOperator::identity(natural_carrier(2))) -
                 1.0) <= 1e-15);
  // Normalized block traces: tr of diag(2, 4) on one 2-block is 3.
  CHECK(std::abs(pseudo_trace_eval(PseudoTrace{}, Dialect({2}),
                                   DenseOperator::diagonal({2.0, 4.0})) -
                 3.0) <= 1e-15);
  CHECK(k.faithful());
  CHECK_FALSE(PseudoTrace{{1.0, 0.0}}.faithful());
}

TEST_CASE("measure arithmetic") {
  CHECK((0.0 * Measure::infinite()).is_finite());
  CHECK((0.0 * Measure::infinite()).value == 0.0);
  CHECK((2.0 * Measure::infinite()).is_infinite());
  CHECK((Measure::finite(1.0) + Measure::infinite()).is_infinite());
  CHECK((Measure::indeterminate("x") + Measure::infinite()).is_indeterminate());
  CHECK((Measure::finite(1.5) + Measure::finite(2.0)).value == 3.5);
  CHECK(Measure::from_wager(kInfinity).is_infinite());
  CHECK(measure_distance(Measure::infinite(), Measure::infinite()) == 0.0);
  CHECK(std::isinf(measure_distance(Measure::infinite(), Measure::finite(0.0))));
}

TEST_CASE("ldet of symbolic payloads") {
  CHECK(ldet(symbolic({{0, 1}, {1, 2}}, {0, 1, 2})).value == 0.0);
  CHECK(ldet(symbolic({{0, 1}, {1, 2}}, {0, 1, 2})).is_finite());
  CHECK(ldet(symbolic({{0, 1}, {1, 0}}, {0, 1})).is_infinite());
  CHECK(ldet(symbolic({}, {0})).value == 0.0);
}

TEST_CASE("ldet of dense payloads") {
  CHECK(ldet(plain(DenseOperator::diagonal({0.5}))).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(ldet(plain(DenseOperator::from_rows({{0, 1}, {1, 0}}))).is_infinite());
  auto nil = plain(DenseOperator::from_rows({{0, 0.7, 0.1}, {0, 0, 0.3}, {0, 0, 0}}));
  CHECK(ldet(nil).value == 0.0);
}

TEST_CASE("ldet agrees with its series below the unit ball") {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    auto m = plain(random_hermitian(natural_carrier(4), 0.6, rng));
    auto l = ldet(m);
    auto s = ldet_series(m);
    REQUIRE(l.is_finite());
    CHECK(std::abs(l.value - s.value.real()) <= s.remainder_bound + 1e-12);
  }
}

TEST_CASE("counterexample measurements") {
  CHECK(meas_hyp(u3(), v3()).value == doctest::Approx(2.4559).epsilon(1e-4));
  CHECK(meas_mat(plain(u3()), plain(v3())).value ==
        doctest::Approx(meas_hyp(u3(), v3()).value).epsilon(1e-12));
  auto u2 = DenseOperator::from_rows({{0, -1}, {-1, 0}});
  auto v2 = DenseOperator::from_rows({{0, 1}, {1, 0}});
  CHECK(meas_hyp(u2, v2).value == doctest::Approx(-std::log(4.0)).epsilon(1e-14));
  CHECK(meas_mat(plain(u2), plain(v2)).is_infinite());
}

TEST_CASE("dialect extension") {
  Rng rng(32);
  auto a = random_dialectal({0, 1}, Dialect({2}), PseudoTrace{}, 0.5, rng);
  auto same = dagger(a, Dialect(), PseudoTrace());
  CHECK(same.dialect == a.dialect);
  CHECK(same_operator(same, a, 1e-15));
  auto big = dagger(a, Dialect({1, 1}), PseudoTrace{{0.25, 0.75}});
  CHECK(big.dialect.total() == 4);
  CHECK(big.trace.weights.size() == 2);
  CHECK_NOTHROW(validate(big));
  auto b = random_dialectal({1, 2}, Dialect({1, 1}), PseudoTrace{{1.0, 1.0}}, 0.5, rng);
  auto p = extended_product(a, b);
  CHECK(p.carrier == std::vector<std::uint64_t>{0, 1, 2});
  CHECK(p.dialect.total() == 4);
}

TEST_CASE("matricial and hyperfinite measurements agree below the unit ball") {
  Rng rng(33);
  for (int t = 0; t < 20; ++t) {
    auto [da, ta] = random_dialect(rng);
    auto [db, tb] = random_dialect(rng);
    auto a = random_project({0, 1, 2}, da, ta, 0.0, 0.5, rng);
    auto b = random_project({0, 1, 2}, db, tb, 0.0, 0.5, rng);
    auto m = meas_mat(a.op, b.op), y = meas_hyp(a.op, b.op);
    REQUIRE(m.is_finite());
    CHECK(std::abs(m.value - y.value) <= 1e-9);
    CHECK(std::abs(sca_mat(a, b).value - sca_mat(b, a).value) <= 1e-9);
  }
}

TEST_CASE("sca adds the weighted wagers") {
  Rng rng(34);
  auto a = random_project({0, 1}, Dialect({1}), PseudoTrace{{2.0}}, 0.5, 0.5, rng);
  auto b = random_project({0, 1}, Dialect({1}), PseudoTrace{{3.0}}, 0.25, 0.5, rng);
  double want = 0.5 * 3.0 + 0.25 * 2.0 + meas_mat(a.op, b.op).value;
  CHECK(sca_mat(a, b).value == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("variants preserve measurements") {
  Rng rng(35);
  for (int t = 0; t < 20; ++t) {
    auto [d, tr] = random_dialect(rng);
    auto a = random_project({0, 1, 2}, d, tr, rng.uniform(0, 1), 0.5, rng);
    auto [dp, tp] = random_dialect(rng);
    auto probe = random_project({0, 1, 2}, dp, tp, rng.uniform(0, 1), 0.5, rng);
    auto iso = random_iso(d, rng);
    CHECK_NOTHROW(validate(iso, d));
    CHECK(variant_invariance_residual(a, iso, probe) <= 1e-9);
    CHECK(variant_invariance_residual(a, iso, probe, Model::hyperfinite) <= 1e-9);
  }
}

TEST_CASE("orthogonality verdicts") {
  auto zero = Project{0.0, zero_operator({0, 1})};
  CHECK_FALSE(orthogonal_mat(zero, zero));
  auto one = Project{1.0, zero_operator({0, 1})};
  auto ov = orthogonality(zero, one);
  CHECK(ov.orthogonal);
  CHECK(ov.value.value == doctest::Approx(1.0));
  CHECK_FALSE(ov.suspicious);
  auto cyc = Project{0.0, symbolic({{0, 1}, {1, 0}}, {0, 1})};
  CHECK(orthogonality(cyc, cyc).value.is_infinite());
  CHECK_FALSE(orthogonal_mat(cyc, cyc));
  auto tiny = Project{3.0 * tau_num(), zero_operator({0, 1})};
  auto tv = orthogonality(zero, tiny);
  CHECK(tv.orthogonal);
  CHECK(tv.suspicious);
}

}
