#include "doctest.h"

#include "goi/execution.hpp"
#include "goi/projects.hpp"
#include "goi/random.hpp"

using namespace goi;

namespace {

Index at(std::uint64_t n) { return Index{n, 0}; }

std::vector<Index> labels(std::vector<std::uint64_t> const& v) {
  std::vector<Index> out;
  for (auto x : v)
    out.push_back(at(x));
  return out;
}

DialectalOperator links(std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs,
                        std::vector<std::uint64_t> carrier) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> arrows;
  for (auto [a, b] : pairs) {
    arrows.emplace_back(a, b);
    arrows.emplace_back(b, a);
  }
  return DialectalOperator{std::move(carrier), Dialect(), PseudoTrace(),
                           PartialInjectionOp::table(arrows)};
}

Project fax_between(std::uint64_t x, std::uint64_t y) {
  return build_fax(make_delocation({100}, {x}), make_delocation({100}, {y}));
}

} // namespace

TEST_SUITE("execution") {

TEST_CASE("path summation links through a cut") {
  auto u = PartialInjectionOp::table({{0, 1}, {1, 0}, {2, 3}, {3, 2}});
  auto v = PartialInjectionOp::table({{1, 2}, {2, 1}});
  auto ex = ex_goi1(u, v, PartialInjectionOp::projection(labels({1, 2})));
  CHECK(ex == PartialInjectionOp::table({{0, 3}, {3, 0}}));
}

TEST_CASE("path summation rejects a loop") {
  auto u = PartialInjectionOp::table({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(ex_goi1(u, u, PartialInjectionOp::projection(labels({0, 1}))),
                  NotNilpotentError);
}

TEST_CASE("dense feedback matches its series") {
  Rng rng(41);
  auto kept = labels({0, 1, 4}), cut = labels({2, 3});
  auto full = labels({0, 1, 2, 3, 4});
  for (int t = 0; t < 20; ++t) {
    auto u = scale(random_hermitian(full, 1.0, rng), 0.5);
    auto v = scale(random_hermitian(cut, 1.0, rng), 0.5);
    auto d = feedback_dense(u, v, InterfaceSplit{kept, cut});
    auto s = feedback_series(u, v, InterfaceSplit{kept, cut}, 80);
    CHECK(max_abs_diff(d, s) <= 1e-12);
  }
}

TEST_CASE("dense feedback reports a singular interface") {
  auto u = DenseOperator(labels({0, 1}), {0, 0, 0, 1});
  auto v = DenseOperator(labels({1}), {1});
  CHECK_THROWS_AS(feedback_dense(u, v, InterfaceSplit{labels({0}), labels({1})}),
                  FeedbackSingularError);
}

TEST_CASE("an axiom plugged into an axiom is an axiom") {
  auto f = plug_project(fax_between(0, 1), fax_between(1, 2));
  CHECK(f.carrier() == std::vector<std::uint64_t>{0, 2});
  CHECK(f.wager == 0.0);
  CHECK(same_operator(f.op, fax_between(0, 2).op));
}

TEST_CASE("plugging is associative") {
  SUBCASE("tables") {
    auto a = links({{0, 1}}, {0, 1});
    auto f = links({{1, 2}, {3, 4}}, {1, 2, 3, 4});
    auto b = links({{2, 3}}, {2, 3});
    CHECK(associativity_exact(a, f, b));
  }
  SUBCASE("dense") {
    Rng rng(42);
    for (int t = 0; t < 20; ++t) {
      auto [da, ta] = random_dialect(rng);
      auto [df, tf] = random_dialect(rng);
      auto [db, tb] = random_dialect(rng);
      auto a = random_dialectal({0, 1}, da, ta, 0.6, rng);
      auto f = random_dialectal({1, 2, 3}, df, tf, 0.6, rng);
      auto b = random_dialectal({3, 4}, db, tb, 0.6, rng);
      CHECK(associativity_residual(a, f, b) <= 1e-9);
    }
  }
}

TEST_CASE("adjunction") {
  Rng rng(43);
  auto kept = labels({0, 1}), cut = labels({2, 3});
  auto full = labels({0, 1, 2, 3});
  for (int t = 0; t < 20; ++t) {
    auto u = random_hermitian(full, 0.7, rng);
    auto v = random_hermitian(cut, 0.7, rng);
    auto w = random_hermitian(kept, 0.7, rng);
    CHECK(adjunction_residual_hyp(u, v, w, InterfaceSplit{kept, cut}) <= 1e-9);
  }
  for (int t = 0; t < 10; ++t) {
    auto f = random_dialectal({0, 1, 2}, Dialect(), PseudoTrace(), 0.6, rng);
    auto [dg, tg] = random_dialect(rng);
    auto [dh, th] = random_dialect(rng);
    auto g = random_dialectal({0, 1}, dg, tg, 0.6, rng);
    auto h = random_dialectal({2}, dh, th, 0.6, rng);
    CHECK(adjunction_residual_mat(f, g, h) <= 1e-9);
  }
}

TEST_CASE("non-orthogonal plugging is rejected") {
  auto a = links({{0, 1}}, {0, 1});
  CHECK_THROWS_AS(plug_dialectal(a, a), NotOrthogonalError);
  DialectalOperator d{{0, 1}, Dialect(), PseudoTrace(),
                      DenseOperator(labels({0, 1}), {0, 1, 1, 0})};
  CHECK_THROWS_AS(plug_dialectal(d, d), NotOrthogonalError);
  CHECK_THROWS_AS(plug_project(Project{0.0, a}, Project{0.0, a}), NotOrthogonalError);
}

TEST_CASE("plugging on disjoint carriers is a tensor") {
  Rng rng(44);
  auto a = random_dialectal({0}, Dialect(), PseudoTrace(), 0.5, rng);
  auto b = random_dialectal({1}, Dialect(), PseudoTrace(), 0.5, rng);
  auto p = plug_dialectal(a, b);
  CHECK(p.carrier == std::vector<std::uint64_t>{0, 1});
  auto d = p.dense();
  CHECK(d(0, 0) == a.dense()(0, 0));
  CHECK(d(1, 1) == b.dense()(0, 0));
  CHECK(d(0, 1) == cplx(0.0));
}

}
