#include "doctest.h"

#include "goi/groupoid.hpp"
#include "goi/random.hpp"

using namespace goi;

namespace {

Index at(std::uint64_t n) { return Index{n, 0}; }

std::string random_letters(Rng& rng, std::size_t max_len) {
  std::string s;
  for (std::size_t k = rng.index(0, max_len); k > 0; --k)
    s += rng.coin() ? 'L' : 'R';
  return s;
}

// Random partial permutation of {0, ..., n-1} as a table.
PartialInjectionOp random_table(std::size_t n, Rng& rng) {
  std::vector<std::uint64_t> img(n);
  for (std::size_t i = 0; i < n; ++i)
    img[i] = i;
  std::shuffle(img.begin(), img.end(), rng.engine());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> arrows;
  for (std::size_t i = 0; i < n; ++i)
    if (rng.coin())
      arrows.emplace_back(i, img[i]);
  return PartialInjectionOp::table(arrows);
}

GroupElement random_element(Rng& rng) {
  GroupElement g;
  g.p = static_cast<std::int64_t>(rng.index(0, 8)) - 4;
  for (int k = 0; k < 3; ++k) {
    auto n = static_cast<std::int64_t>(rng.index(0, 10)) - 5;
    auto v = static_cast<std::int64_t>(rng.index(0, 6)) - 3;
    if (v != 0)
      g.x[n] = v;
  }
  return g;
}

} // namespace

TEST_SUITE("groupoid") {

TEST_CASE("address words act on integers") {
  CHECK(AddressWord("R").apply(5) == 10);
  CHECK(AddressWord("L").apply(5) == 11);
  // First letter is outermost: RL 3 = R(L 3) = R 7 = 14.
  CHECK(AddressWord("RL").apply(3) == 14);
  CHECK(AddressWord().apply(9) == 9);
  CHECK(AddressWord("RL").strip(14) == std::optional<std::uint64_t>(3));
  CHECK_FALSE(AddressWord("LR").strip(14));
  CHECK(AddressWord("R").is_prefix_of(AddressWord("RLL")));
  CHECK_FALSE(AddressWord("L").is_prefix_of(AddressWord("RLL")));
}

TEST_CASE("strip inverts apply") {
  Rng rng(21);
  for (int t = 0; t < 200; ++t) {
    AddressWord w(random_letters(rng, 8));
    std::uint64_t n = rng.index(0, 1000);
    CHECK(w.strip(w.apply(n)) == std::optional<std::uint64_t>(n));
  }
}

TEST_CASE("tables reject bad weights and shared targets") {
  std::map<Index, Arrow> g{{at(0), Arrow{at(1), cplx(0.5, 0.0)}}};
  CHECK_THROWS_AS(PartialInjectionOp::table(g), WeightError);
  CHECK_THROWS_AS(PartialInjectionOp::table({{0, 2}, {1, 2}}), DisjointnessError);
  CHECK_THROWS_AS(PartialInjectionOp::table({{0, 1}, {0, 2}}), DisjointnessError);
  std::map<Index, Arrow> phase{{at(0), Arrow{at(1), std::polar(1.0, 0.3)}}};
  CHECK_NOTHROW(PartialInjectionOp::table(phase));
}

TEST_CASE("isometry relations") {
  auto r = r_isometry(), l = l_isometry(), one = identity_op();
  CHECK(compose(adjoint(r), r) == one);
  CHECK(compose(adjoint(l), l) == one);
  CHECK(compose(adjoint(r), l).is_zero());
  CHECK(sum_disjoint(compose(r, adjoint(r)), compose(l, adjoint(l))) == one);
  CHECK(compose(l, adjoint(r)) == tta());
}

TEST_CASE("odot conjugates into the two halves") {
  auto u = tta();
  auto w = odot(u, identity_op());
  // R u R* sends 2(2n) to 2(2n+1).
  auto a = w.apply(at(4));
  REQUIRE(a);
  CHECK(a->target == at(6));
  CHECK(w.apply(at(5))->target == at(5));
  CHECK_FALSE(w.apply(at(2)));
}

TEST_CASE("swap of the two halves is a partial symmetry") {
  auto s = sum_disjoint(tta(), adjoint(tta()));
  CHECK(is_partial_symmetry(s));
  CHECK(compose(s, s) == identity_op());
  CHECK_FALSE(is_partial_symmetry(tta()));
}

TEST_CASE("composition of tables agrees with composition of functions") {
  Rng rng(22);
  for (int t = 0; t < 100; ++t) {
    auto u = random_table(6, rng), v = random_table(6, rng);
    auto uv = compose(u, v);
    for (std::uint64_t i = 0; i < 6; ++i) {
      auto vi = v.apply(at(i));
      auto want = vi ? u.apply(vi->target) : std::nullopt;
      auto got = uv.apply(at(i));
      REQUIRE(got.has_value() == want.has_value());
      if (got)
        CHECK(got->target == want->target);
    }
    CHECK(compose(compose(u, v), u) == compose(u, compose(v, u)));
    CHECK(adjoint(adjoint(u)) == u);
    CHECK(adjoint(uv) == compose(adjoint(v), adjoint(u)));
  }
}

TEST_CASE("dense window matches the table") {
  auto u = PartialInjectionOp::table({{0, 2}, {2, 1}});
  auto d = to_dense(u, natural_carrier(3));
  CHECK(d(2, 0) == cplx(1.0));
  CHECK(d(1, 2) == cplx(1.0));
  CHECK(d(0, 1) == cplx(0.0));
  CHECK(is_weighted_partial_permutation(d));
  CHECK_THROWS_AS(to_dense(u, natural_carrier(2)), WindowError);
}

TEST_CASE("nilpotency classification") {
  SUBCASE("a chain is nilpotent of its length") {
    auto u = PartialInjectionOp::table({{0, 1}, {1, 2}, {2, 3}});
    auto r = nilpotency(u);
    REQUIRE(std::holds_alternative<Nilpotent>(r));
    CHECK(std::get<Nilpotent>(r).degree == 4);
  }
  SUBCASE("a cycle is detected") {
    auto u = PartialInjectionOp::table({{0, 1}, {1, 0}, {2, 3}});
    CHECK(std::holds_alternative<Cyclic>(nilpotency(u)));
  }
  SUBCASE("the zero operator has degree 1") {
    auto r = nilpotency(PartialInjectionOp());
    REQUIRE(std::holds_alternative<Nilpotent>(r));
    CHECK(std::get<Nilpotent>(r).degree == 1);
  }
  SUBCASE("the shift exhausts its budget") {
    auto r = nilpotency(shift_rule(), std::vector<Index>{at(0)}, 10);
    CHECK(std::holds_alternative<Exceeded>(r));
  }
  SUBCASE("address operators are powered symbolically") {
    CHECK(std::holds_alternative<Nilpotent>(nilpotency(tta())));
    auto s = sum_disjoint(tta(), adjoint(tta()));
    CHECK(std::holds_alternative<Cyclic>(nilpotency(s, std::vector<Index>{at(0)})));
  }
}

TEST_CASE("pairing is a bijection") {
  CHECK(beta_encode(0, 0) == 0);
  CHECK(beta_encode(1, 0) == 1);
  CHECK(beta_encode(0, 1) == 2);
  std::set<std::uint64_t> seen;
  for (std::uint64_t n = 0; n < 12; ++n)
    for (std::uint64_t m = 0; m < 40; ++m) {
      auto k = beta_encode(n, m);
      CHECK(seen.insert(k).second);
      CHECK(beta_decode(k) == std::make_pair(n, m));
    }
  CHECK_THROWS_AS(beta_encode(63, 0), NumericError);
}

TEST_CASE("internal tensor and the associator") {
  auto u = PartialInjectionOp::table({{0, 1}, {1, 0}});
  auto w = internal_tensor(u, identity_op());
  CHECK(w.apply(at(beta_encode(0, 7)))->target == at(beta_encode(1, 7)));
  CHECK_FALSE(w.apply(at(beta_encode(3, 7))));
  auto g = gamma_assoc();
  for (std::uint64_t p = 0; p < 4; ++p)
    for (std::uint64_t q = 0; q < 4; ++q)
      for (std::uint64_t r = 0; r < 4; ++r) {
        auto a = g.apply(at(beta_encode(beta_encode(p, q), r)));
        REQUIRE(a);
        CHECK(a->target == at(beta_encode(p, beta_encode(q, r))));
        CHECK(g.apply_inverse(a->target)->target ==
              at(beta_encode(beta_encode(p, q), r)));
      }
  auto b = bang(u);
  CHECK(b.apply(at(beta_encode(5, 1)))->target == at(beta_encode(5, 0)));
}

TEST_CASE("semidirect product group laws") {
  Rng rng(23);
  for (int t = 0; t < 200; ++t) {
    auto g = random_element(rng), h = random_element(rng), k = random_element(rng);
    CHECK(g_compose(g_compose(g, h), k) == g_compose(g, g_compose(h, k)));
    CHECK(g_compose(g, g_identity()) == g);
    CHECK(g_compose(g_identity(), g) == g);
    CHECK(g_compose(g, g_inverse(g)) == g_identity());
    CHECK(g_compose(g_inverse(g), g) == g_identity());
    // The stated product formula, coordinate by coordinate.
    auto gh = g_compose(g, h);
    CHECK(gh.p == g.p + h.p);
    for (std::int64_t n = -12; n <= 12; ++n)
      CHECK(gh.at(n) == g.at(n - h.p) + h.at(n));
  }
}

TEST_CASE("monoid words evaluate letter by letter") {
  auto e = monoid_word_eval({{'a', 2}, {'b', 1}, {'a', 48}, {'b', 2}});
  GroupElement want;
  want.p = 3;
  want.x[2] = 48;
  want.x[3] = 2;
  CHECK(e == want);
  CHECK(monoid_word_eval({}) == g_identity());
  CHECK(monoid_word_eval({{'a', 1}, {'b', 1}}) !=
        monoid_word_eval({{'b', 1}, {'a', 1}}));
  CHECK_THROWS_AS(monoid_word_eval({{'c', 1}}), Error);
}

}
