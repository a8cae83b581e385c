#include "doctest.h"

#include <cmath>

#include "goi/projects.hpp"
#include "goi/random.hpp"

using namespace goi;

namespace {

Project table_project(Dialect d, std::map<Index, Arrow> g) {
  return Project{0.0, DialectalOperator{{0, 1}, std::move(d), PseudoTrace(),
                                        PartialInjectionOp::table(std::move(g))}};
}

Project flipped(Project p) {
  auto g = p.op.table().graph();
  g.begin()->second.weight = -g.begin()->second.weight;
  p.op.op = PartialInjectionOp::table(std::move(g));
  return p;
}

Project sample_with() {
  return build_with_project(make_delocation({0}, {3}), make_delocation({1}, {5}),
                            make_delocation({2}, {6}), make_delocation({0}, {4}));
}

} // namespace

TEST_SUITE("projects") {

TEST_CASE("delocations") {
  auto t = make_delocation({5, 1}, {9, 7});
  CHECK(t(1) == 7);
  CHECK(t(5) == 9);
  CHECK(t.inverse()(9) == 5);
  CHECK(t.source() == std::vector<std::uint64_t>{1, 5});
  CHECK(t.target() == std::vector<std::uint64_t>{7, 9});
  CHECK_THROWS_AS(Delocation({{0, 1}, {2, 1}}), CarrierError);
}

TEST_CASE("relocation round trip") {
  Rng rng(51);
  for (int t = 0; t < 10; ++t) {
    auto [d, tr] = random_dialect(rng);
    auto a = random_project({0, 1, 2}, d, tr, 0.5, 0.8, rng);
    auto theta = make_delocation({0, 1, 2}, {10, 11, 12});
    auto moved = relocate(a, theta);
    CHECK(moved.carrier() == std::vector<std::uint64_t>{10, 11, 12});
    CHECK(moved.wager == a.wager);
    CHECK(same_operator(relocate(moved, theta.inverse()).op, a.op, 1e-15));
  }
}

TEST_CASE("the axiom project") {
  auto fax = build_fax(make_delocation({0}, {0}), make_delocation({0}, {1}));
  CHECK(fax.carrier() == std::vector<std::uint64_t>{0, 1});
  CHECK(fax.wager == 0.0);
  CHECK(fax.dialect() == Dialect::trivial());
  CHECK(fax.op.symbolic());
  auto pr = is_promising(fax);
  CHECK(pr.all());
  CHECK(pr.detail.empty());
  auto bad = is_promising(flipped(fax));
  CHECK_FALSE(bad.all());
  CHECK_FALSE(bad.detail.empty());
}

TEST_CASE("the With project") {
  auto with = sample_with();
  CHECK(with.dialect() == Dialect({1, 1}));
  CHECK(with.trace() == PseudoTrace{{0.5, 0.5}});
  CHECK(with.carrier() == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6});
  CHECK(is_promising(with).all());
  CHECK_FALSE(is_promising(flipped(with)).all());
  CHECK_THROWS_AS(build_with_project(make_delocation({0}, {3}), make_delocation({1}, {3}),
                                     make_delocation({2}, {6}), make_delocation({0}, {4})),
                  CarrierError);
}

TEST_CASE("superposition halves the trace and averages the wager") {
  Rng rng(52);
  auto f = random_project({0, 1}, Dialect(), PseudoTrace(), 1.0, 0.5, rng);
  auto g = random_project({0, 1}, Dialect(), PseudoTrace(), 3.0, 0.5, rng);
  auto w = with_bar(f, g);
  CHECK(w.wager == doctest::Approx(2.0));
  CHECK(w.dialect() == Dialect({1, 1}));
  CHECK(w.trace() == PseudoTrace{{0.5, 0.5}});
  auto emb = factor_embedding(w.trace(), w.dialect());
  REQUIRE(emb);
  CHECK(emb->size == 2);
}

TEST_CASE("tensor wager") {
  Rng rng(53);
  auto a = random_project({0}, Dialect(), PseudoTrace{{2.0}}, 0.5, 0.5, rng);
  auto b = random_project({1}, Dialect(), PseudoTrace{{3.0}}, 0.25, 0.5, rng);
  auto t = tensor_project(a, b);
  CHECK(t.wager == doctest::Approx(0.5 * 3.0 + 2.0 * 0.25));
  CHECK(t.trace().unit_value() == doctest::Approx(6.0));
  CHECK(t.carrier() == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("sum and extension") {
  Rng rng(54);
  auto a = random_project({0, 1}, Dialect(), PseudoTrace(), 0.5, 0.5, rng);
  auto b = random_project({0, 1}, Dialect({2}), PseudoTrace(), 0.25, 0.5, rng);
  auto s = sum_lambda(a, 2.0, b);
  CHECK(s.dialect() == Dialect({1, 2}));
  CHECK(s.trace() == PseudoTrace{{1.0, 2.0}});
  CHECK(s.wager == doctest::Approx(1.0));
  auto e = extend_carrier(a, {7});
  CHECK(e.carrier() == std::vector<std::uint64_t>{0, 1, 7});
  CHECK(same_operator(compress(e.op, {0, 1}), a.op));
  CHECK(zero_project({3}).op.is_zero());
}

TEST_CASE("factor embeddings") {
  auto one = factor_embedding(PseudoTrace(), Dialect());
  REQUIRE(one);
  CHECK(one->size == 1);
  auto uneven = factor_embedding(PseudoTrace{{1.0, 2.0}}, Dialect({1, 1}));
  REQUIRE(uneven);
  CHECK(uneven->multiplicities == std::vector<std::size_t>{1, 2});
  CHECK(uneven->size == 3);
  CHECK(uneven->scale == doctest::Approx(3.0));
  // A 2-block weighted like a 1-block needs twice the room.
  auto mixed = factor_embedding(PseudoTrace{{1.0, 1.0}}, Dialect({1, 2}));
  REQUIRE(mixed);
  CHECK(mixed->multiplicities == std::vector<std::size_t>{2, 1});
  CHECK_FALSE(factor_embedding(PseudoTrace{{1.0, std::sqrt(0.5)}}, Dialect({1, 1})));
}

TEST_CASE("fixed-point partial symmetries fail the trace condition") {
  std::map<Index, Arrow> id, diff, swap;
  for (std::uint64_t l : {0u, 1u}) {
    id[Index{l, 0}] = Arrow{Index{l, 0}, 1.0};
    diff[Index{l, 0}] = Arrow{Index{l, 0}, l == 0 ? 1.0 : -1.0};
    swap[Index{l, 0}] = Arrow{Index{l, 1}, 1.0};
    swap[Index{l, 1}] = Arrow{Index{l, 0}, 1.0};
  }
  for (auto const& p : {table_project(Dialect(), id), table_project(Dialect(), diff),
                        table_project(Dialect({2}), swap)}) {
    auto pr = is_promising(p);
    CHECK(pr.symmetry);
    CHECK_FALSE(pr.traces);
    CHECK_FALSE(pr.all());
  }
}

TEST_CASE("observational equivalence") {
  Rng rng(55);
  auto [d, tr] = random_dialect(rng);
  auto a = random_project({0, 1}, d, tr, 0.5, 0.6, rng);
  ConductWitnessSet w{{0, 1}, {}, Polarity::primal};
  for (int k = 0; k < 5; ++k)
    w.members.push_back(random_project({0, 1}, Dialect(), PseudoTrace(), 0.0, 0.6, rng));
  CHECK_NOTHROW(validate(w));
  CHECK(obs_equiv(a, apply_variant(a, random_iso(d, rng)), w));
  auto richer = a;
  richer.wager += 1.0;
  CHECK_FALSE(obs_equiv(a, richer, w));
  w.members.push_back(zero_project({0, 1, 2}));
  CHECK_THROWS_AS(validate(w), CarrierError);
}

TEST_CASE("witness suite rows") {
  auto fax = build_fax(make_delocation({0}, {0}), make_delocation({0}, {1}));
  ConductWitnessSet w{{0, 1}, {}, Polarity::dual};
  w.members.push_back(Project{1.0, zero_operator({0, 1})});
  w.members.push_back(zero_project({0, 1}));
  auto rows = orthogonal_witness_suite(fax, w);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].id == 0);
  CHECK(rows[0].orthogonal);
  CHECK_FALSE(rows[1].orthogonal);
}

}
