#include "goi/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "goi/interpret.hpp"
#include "goi/report.hpp"
#include "goi/witness.hpp"

namespace goi {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

std::size_t samples(SuiteOptions const& o, std::size_t fallback) {
  return o.trials != 0 ? o.trials : fallback;
}

std::string hex(std::uint64_t x) {
  std::ostringstream s;
  s << "0x" << std::hex << std::uppercase << x;
  return s.str();
}

std::string seed_reproducer(SuiteOptions const& o, std::string const& suite) {
  std::string r = "goi verify --suite " + suite + " --seed " + hex(o.seed);
  if (o.trials != 0)
    r += " --trials " + std::to_string(o.trials);
  if (o.mutate_with)
    r += " --inject-mutation";
  return r;
}

// Each check draws from its own stream so that checks stay independent of
// the order they run in.
Rng stream(SuiteOptions const& o, std::uint64_t salt) {
  return Rng(o.seed ^ (salt * 0x9E3779B97F4A7C15ull));
}

CheckResult timed(std::string name, std::string const& suite,
                  SuiteOptions const& o, double limit,
                  std::function<void(CheckResult&)> const& body) {
  CheckResult r;
  r.name = std::move(name);
  auto t0 = Clock::now();
  try {
    body(r);
  } catch (std::exception const& e) {
    r.status = Status::fail;
    r.payload["exception"] = e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit > 0.0) {
    r.payload["time_limit_seconds"] = limit;
    if (r.seconds > limit) {
      r.status = Status::fail;
      r.payload["over_time"] = true;
    }
  }
  if (r.status == Status::fail && r.reproducer.empty())
    r.reproducer = seed_reproducer(o, suite);
  return r;
}

void require(CheckResult& r, bool ok, std::string const& what) {
  if (ok)
    return;
  r.status = Status::fail;
  r.payload["failures"].push_back(what);
}

DenseOperator scaled_to(DenseOperator const& m, double norm) {
  double n = operator_norm(m);
  return n == 0.0 ? m : scale(m, norm / n);
}

DialectalOperator with_payload(DialectalOperator const& shape, DenseOperator m) {
  return DialectalOperator{shape.carrier, shape.dialect, shape.trace, std::move(m)};
}

std::vector<std::uint64_t> range(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> r;
  for (auto x = lo; x < hi; ++x)
    r.push_back(x);
  return r;
}

void collect_rules(Proof const& p, std::set<Rule>& out) {
  out.insert(p.rule);
  for (auto const& q : p.premises)
    collect_rules(*q, out);
}

DialectalOperator flip_first_weight(DialectalOperator const& a) {
  auto g = a.table().graph();
  if (!g.empty())
    g.begin()->second.weight = -g.begin()->second.weight;
  return DialectalOperator{a.carrier, a.dialect, a.trace,
                           PartialInjectionOp::table(std::move(g))};
}

json promising_json(PromisingReport const& p) {
  return json{{"dialect", p.dialect},   {"pseudo_trace", p.pseudo_trace},
              {"wager", p.wager},       {"symmetry", p.symmetry},
              {"traces", p.traces},     {"detail", p.detail}};
}

// Dialect isomorphism sending (F (x) G) (x) (A (x) C) onto
// (F (x) A) (x) (G (x) C).
DialectIso regroup_iso(Dialect const& f, Dialect const& g, Dialect const& a,
                       Dialect const& c) {
  DialectProduct fg(f, g), ac(a, c), fa(f, a), gc(g, c);
  DialectProduct before(fg.product(), ac.product());
  DialectProduct after(fa.product(), gc.product());
  std::size_t n = before.product().total();
  std::vector<std::size_t> old_of(n);
  for (std::size_t i = 0; i < f.total(); ++i)
    for (std::size_t j = 0; j < g.total(); ++j)
      for (std::size_t k = 0; k < a.total(); ++k)
        for (std::size_t l = 0; l < c.total(); ++l)
          old_of[after.coord(fa.coord(i, k), gc.coord(j, l))] =
              before.coord(fg.coord(i, j), ac.coord(k, l));
  Dialect const& target = after.product();
  Dialect const& source = before.product();
  DialectIso iso;
  for (std::size_t b = 0; b < target.block_count(); ++b) {
    std::size_t first = target.offset(b);
    std::size_t ob = source.block_of(old_of[first]);
    iso.perm.push_back(ob);
    std::size_t k = target.blocks()[b];
    DenseOperator u(natural_carrier(k));
    for (std::size_t x = 0; x < k; ++x)
      u(x, old_of[first + x] - source.offset(ob)) = 1.0;
    iso.unitaries.push_back(std::move(u));
  }
  return iso;
}

// At most two coordinates, so that fourfold products stay small.
std::pair<Dialect, PseudoTrace> small_dialect(Rng& rng) {
  PseudoTrace t;
  switch (rng.index(0, 2)) {
  case 0:
    t.weights = {rng.uniform(0.25, 1.0)};
    return {Dialect({1}), t};
  case 1:
    t.weights = {rng.uniform(0.25, 1.0), rng.uniform(0.25, 1.0)};
    return {Dialect({1, 1}), t};
  default:
    t.weights = {rng.uniform(0.25, 1.0)};
    return {Dialect({2}), t};
  }
}

double trace_distance(PseudoTrace const& a, PseudoTrace const& b) {
  if (a.weights.size() != b.weights.size())
    return kInfinity;
  double d = 0.0;
  for (std::size_t i = 0; i < a.weights.size(); ++i)
    d = std::max(d, std::abs(a.weights[i] - b.weights[i]));
  return d;
}

struct CorpusItem {
  std::string path;
  ProofPtr proof;
};

std::vector<CorpusItem> load_corpus(std::string const& dir) {
  std::vector<CorpusItem> out;
  for (auto const& f : corpus_files(dir))
    out.push_back({f, parse_proof(read_text(f))});
  return out;
}

} // namespace

std::vector<std::string> corpus_files(std::string const& dir) {
  std::vector<std::string> out;
  for (auto const& e : std::filesystem::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".pf")
      out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string read_text(std::string const& path) {
  std::ifstream in(path);
  if (!in)
    throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

CheckResult check_counterexamples(SuiteOptions const& o) {
  return timed("counterexample matrices", "identities", o, 1e-3, [](CheckResult& r) {
    double h = std::sqrt(0.5);
    auto u2 = DenseOperator::from_rows({{0, -1}, {-1, 0}});
    auto v2 = DenseOperator::from_rows({{0, 1}, {1, 0}});
    auto u3 = DenseOperator::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 0}});
    auto v3 = DenseOperator::from_rows({{0, h, -h}, {h, 0, 0}, {-h, 0, 0}});
    cplx d2 = plain_det(one_minus(mat_mul(u2, v2)));
    cplx d3 = plain_det(one_minus(mat_mul(u3, v3)));
    double expected3 = (1.0 - h) * (1.0 - h);
    bool symmetries = is_hermitian(u3) && is_partial_isometry(u3) &&
                      is_hermitian(v3) && is_partial_isometry(v3);
    bool uv_isometry = is_partial_isometry(mat_mul(u3, v3));
    r.payload["det_2x2"] = d2.real();
    r.payload["det_3x3"] = d3.real();
    r.payload["uv_partial_isometry"] = uv_isometry;
    require(r, std::abs(d2 - cplx(4.0)) <= 1e-12, "det(1-uv) for the 2x2 pair is not 4");
    require(r, std::abs(d3 - cplx(expected3)) <= 1e-10,
            "det(1-uv) for the 3x3 pair is not (1-sqrt(1/2))^2");
    require(r, symmetries, "the 3x3 pair are not partial symmetries");
    require(r, !uv_isometry, "uv for the 3x3 pair is a partial isometry");
  });
}

CheckResult check_group_arithmetic(SuiteOptions const& o) {
  return timed("group arithmetic", "identities", o, 1.0, [](CheckResult& r) {
    GroupElement g = monoid_word_eval({{'a', 2}, {'b', 1}, {'a', 48}, {'b', 2}});
    GroupElement want;
    want.x = {{2, 48}, {3, 2}};
    want.p = 3;
    r.payload["p"] = g.p;
    r.payload["x2"] = g.at(2);
    r.payload["x3"] = g.at(3);
    require(r, g == want, "a^2 b a^48 b^2 does not evaluate to ((x), 3) with x2=48, x3=2");

    // Every word of length <= 6 over {a, b}, evaluated letter by letter.
    std::map<GroupElement, std::string> seen{{g_identity(), ""}};
    std::size_t words = 1;
    std::vector<std::pair<std::string, GroupElement>> level{{"", g_identity()}};
    for (int len = 1; len <= 6; ++len) {
      std::vector<std::pair<std::string, GroupElement>> next;
      for (auto const& [w, e] : level)
        for (char c : {'a', 'b'}) {
          std::string word = w + c;
          GroupElement v = g_compose(e, c == 'a' ? g_a() : g_b());
          MonoidWord mw;
          for (char l : word) {
            if (!mw.empty() && mw.back().first == l)
              ++mw.back().second;
            else
              mw.push_back({l, 1});
          }
          if (!(monoid_word_eval(mw) == v))
            require(r, false, "evaluation disagrees with composition for " + word);
          auto [it, fresh] = seen.emplace(v, word);
          if (!fresh)
            require(r, false, "words " + it->second + " and " + word + " collide");
          next.emplace_back(word, v);
          ++words;
        }
      level = std::move(next);
    }
    r.payload["words"] = words;
  });
}

CheckResult check_fk_determinant(SuiteOptions const& o) {
  return timed("Fuglede-Kadison determinant", "identities", o, 0.0, [&](CheckResult& r) {
    Rng rng = stream(o, 3);
    std::size_t n = samples(o, 100), nn = samples(o, 20);
    double worst_mult = 0.0, worst_nil = 0.0, worst_rho = -kInfinity;
    for (std::size_t t = 0; t < n; ++t) {
      auto c = natural_carrier(4);
      auto a = random_matrix(c, 1.0, rng), b = random_matrix(c, 1.0, rng);
      double fa = fk_det(a), fb = fk_det(b), fab = fk_det(mat_mul(a, b));
      double rel = std::abs(fab - fa * fb) / std::max(1e-300, std::abs(fa * fb));
      worst_mult = std::max(worst_mult, rel);
    }
    for (std::size_t t = 0; t < nn; ++t) {
      std::size_t k = rng.index(2, 6);
      auto nil = random_nilpotent(k, 1.0, rng);
      double d = fk_det(add(DenseOperator::identity(nil.carrier()), nil));
      worst_nil = std::max(worst_nil, std::abs(d - 1.0));
    }
    for (std::size_t t = 0; t < n; ++t) {
      std::size_t k = rng.index(2, 5);
      auto a = random_matrix(natural_carrier(k), rng.uniform(0.2, 2.0), rng);
      worst_rho = std::max(worst_rho, fk_det(a) - spectral_radius(a).spectral_radius);
    }
    r.payload["multiplicativity_rel"] = worst_mult;
    r.payload["unipotent_abs"] = worst_nil;
    r.payload["det_minus_rho_max"] = worst_rho;
    require(r, worst_mult <= 1e-8, "multiplicativity residual above 1e-8");
    require(r, worst_nil <= 1e-9, "det(1+N) differs from 1 by more than 1e-9");
    require(r, worst_rho <= 1e-8, "a determinant exceeds the spectral radius");
  });
}

CheckResult check_block_determinant(SuiteOptions const& o) {
  return timed("block determinant identity", "identities", o, 1.0, [&](CheckResult& r) {
    Rng rng = stream(o, 4);
    std::size_t n = samples(o, 100);
    auto full = natural_carrier(6);
    std::vector<Index> cut(full.begin(), full.begin() + 3),
        kept(full.begin() + 3, full.end());
    double worst = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      auto f = scaled_to(random_matrix(full, 1.0, rng), rng.uniform(0.3, 0.95));
      auto g = scaled_to(random_matrix(cut, 1.0, rng), rng.uniform(0.3, 0.95));
      auto h = scaled_to(random_matrix(kept, 1.0, rng), rng.uniform(0.3, 0.95));
      cplx lhs = plain_det(one_minus(mat_mul(f, direct_sum(g, h))));
      cplx first = plain_det(one_minus(mat_mul(f.restricted(cut), g)));
      auto ex = feedback_dense(f, g, InterfaceSplit{kept, cut});
      cplx second = plain_det(one_minus(mat_mul(ex, h)));
      worst = std::max(worst, std::abs(lhs - first * second) /
                                  std::max(1.0, std::abs(lhs)));
    }
    r.payload["samples"] = n;
    r.payload["max_residual"] = worst;
    require(r, worst <= 1e-8, "residual above 1e-8");
  });
}

CheckResult check_adjunction(SuiteOptions const& o) {
  return timed("adjunction", "identities", o, 0.0, [&](CheckResult& r) {
    Rng rng = stream(o, 5);
    std::size_t n = samples(o, 100);
    auto full = natural_carrier(4);
    std::vector<Index> cut(full.begin(), full.begin() + 2),
        kept(full.begin() + 2, full.end());
    double worst_hyp = 0.0, worst_mat = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      auto u = random_hermitian(full, rng.uniform(0.2, 0.9), rng);
      auto v = random_hermitian(cut, rng.uniform(0.2, 0.9), rng);
      auto w = random_hermitian(kept, rng.uniform(0.2, 0.9), rng);
      worst_hyp = std::max(worst_hyp,
                           adjunction_residual_hyp(u, v, w, InterfaceSplit{kept, cut}));
    }
    for (std::size_t t = 0; t < n; ++t) {
      auto [df, tf] = small_dialect(rng);
      auto [dg, tg] = small_dialect(rng);
      auto [dh, th] = small_dialect(rng);
      auto f = random_dialectal({0, 1, 2, 3}, df, tf, rng.uniform(0.2, 0.8), rng);
      auto g = random_dialectal({0, 1}, dg, tg, rng.uniform(0.2, 0.8), rng);
      auto h = random_dialectal({2, 3}, dh, th, rng.uniform(0.2, 0.8), rng);
      worst_mat = std::max(worst_mat, adjunction_residual_mat(f, g, h));
    }
    r.payload["samples"] = n;
    r.payload["hyperfinite_max_residual"] = number_json(worst_hyp);
    r.payload["matricial_max_residual"] = number_json(worst_mat);
    require(r, worst_hyp <= 1e-6, "hyperfinite adjunction residual above 1e-6");
    require(r, worst_mat <= 1e-6, "matricial adjunction residual above 1e-6");
  });
}

CheckResult check_ldet_lemmas(SuiteOptions const& o) {
  return timed("ldet lemmas", "identities", o, 0.0, [&](CheckResult& r) {
    Rng rng = stream(o, 6);
    std::size_t n_nil = samples(o, 50), n = samples(o, 50);

    std::size_t exact_zero = 0;
    for (std::size_t t = 0; t < n_nil; ++t) {
      std::size_t locs = rng.index(2, 8), k = rng.index(1, 2);
      std::vector<Index> nodes;
      for (std::uint64_t l = 0; l < locs; ++l)
        for (std::uint64_t s = 0; s < k; ++s)
          nodes.push_back(Index{l, s});
      std::shuffle(nodes.begin(), nodes.end(), rng.engine());
      // Chains along the shuffled order: every orbit dies.
      std::map<Index, Arrow> g;
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (rng.index(0, 3) != 0)
          g[nodes[i]] = Arrow{nodes[i + 1], std::polar(1.0, rng.uniform(0.0, 6.28))};
      DialectalOperator m{range(0, locs), Dialect({k}), PseudoTrace(),
                          PartialInjectionOp::table(std::move(g))};
      Measure v = ldet(m);
      if (v.is_finite() && v.value == 0.0)
        ++exact_zero;
    }
    r.payload["nilpotent_exact_zero"] = exact_zero;
    require(r, exact_zero == n_nil, "a nilpotent table has nonzero ldet");

    double worst_sum = 0.0, worst_out = 0.0, worst_series = 0.0;
    std::size_t series_used = 0;
    for (std::size_t t = 0; t < n; ++t) {
      auto [d, a] = random_dialect(rng);
      auto carrier = range(0, rng.index(1, 3));
      auto u = random_dialectal(carrier, d, a, rng.uniform(0.05, 0.3), rng);
      auto v = random_dialectal(carrier, d, a, rng.uniform(0.05, 0.3), rng);
      DenseOperator ud = u.dense(), vd = v.dense();
      auto w = with_payload(u, sub(add(ud, vd), mat_mul(ud, vd)));
      Measure lhs = ldet(w), rhs = ldet(u) + ldet(v);
      worst_sum = std::max(worst_sum, measure_distance(lhs, rhs));

      auto [db, b] = random_dialect(rng);
      Measure out = ldet(dagger(u, db, b));
      Measure in = b.unit_value() * ldet(u);
      worst_out = std::max(worst_out, measure_distance(out, in));

      // Hermitian and non-normal operators below the 0.9 radius.
      for (auto const& m :
           {random_dialectal(carrier, d, a, rng.uniform(0.05, 0.9), rng),
            with_payload(u, scale(mat_mul(ud, vd), 2.5))}) {
        SpectralReport rep = spectral_radius(m.dense());
        if (!(rep.upper <= 0.9))
          continue;
        ++series_used;
        Measure exact = ldet(m);
        SeriesValue s = ldet_series(m);
        double diff = exact.is_finite() ? std::abs(exact.value - s.value.real())
                                        : kInfinity;
        worst_series = std::max(worst_series, diff);
      }
    }
    r.payload["sum_max_residual"] = number_json(worst_sum);
    r.payload["dialect_out_max_residual"] = number_json(worst_out);
    r.payload["series_samples"] = series_used;
    r.payload["series_max_residual"] = number_json(worst_series);
    require(r, worst_sum <= 1e-9, "ldet(1-(u+v-uv)) differs from ldet(1-u)+ldet(1-v)");
    require(r, worst_out <= 1e-9, "ldet(1-u (x) 1) differs from beta(1) ldet(1-u)");
    require(r, worst_series <= 1e-8, "series and determinant disagree");
    require(r, series_used > 0, "no sample certified below 0.9");
  });
}

CheckResult check_mll_soundness(SuiteOptions const& o) {
  return timed("MLL soundness", "soundness", o, 1.0, [&](CheckResult& r) {
    auto corpus = load_corpus(o.corpus_dir + "/mll");
    std::size_t max_cuts = 0, max_depth = 0;
    json rows = json::array();
    for (auto const& [path, p] : corpus) {
      auto g = interpret_mll_goi1(*p);
      bool symmetric = is_partial_symmetry(g.pi) && is_partial_symmetry(g.sigma);
      SoundnessResult s = soundness_check_mll(p);
      max_cuts = std::max(max_cuts, cut_count(*p));
      max_depth = std::max(max_depth, depth(*p));
      rows.push_back({{"file", std::filesystem::path(path).filename().string()},
                      {"cuts", cut_count(*p)},
                      {"depth", depth(*p)},
                      {"nilpotency_degree", s.nilpotency_degree},
                      {"equal", s.equal}});
      if (!s.equal || !symmetric) {
        r.status = Status::fail;
        r.reproducer = "goi interpret " + path + " --backend goi1";
        r.payload["failures"].push_back(path);
      }
    }
    r.payload["proofs"] = rows;
    r.payload["max_cuts"] = max_cuts;
    r.payload["max_depth"] = max_depth;
    require(r, corpus.size() >= 12, "fewer than 12 proofs");
    require(r, max_cuts >= 4, "no proof with 4 cuts");
  });
}

CheckResult check_mall_soundness(SuiteOptions const& o) {
  return timed("MALL soundness", "soundness", o, 0.0, [&](CheckResult& r) {
    auto basis = load_basis_file(o.corpus_dir + "/basis.json");
    auto corpus = load_corpus(o.corpus_dir + "/mall");
    for (auto const& d : basis_defects(basis))
      require(r, false, "basis: " + d);
    std::set<Rule> rules;
    json rows = json::array();
    std::size_t witnesses = 0;
    for (auto const& [path, p] : corpus) {
      collect_rules(*p, rules);
      auto m = interpret_mall_matricial(*p, basis);
      PromisingReport pr = is_promising(m.project);
      auto dual = sequent_dual_witnesses(p->conclusion, m.plan, basis);
      auto table = orthogonal_witness_suite(m.project, dual);
      std::size_t orth = 0, suspicious = 0;
      for (auto const& w : table) {
        orth += w.orthogonal;
        suspicious += w.suspicious;
      }
      witnesses += table.size();
      rows.push_back({{"file", std::filesystem::path(path).filename().string()},
                      {"promising", promising_json(pr)},
                      {"witnesses", table.size()},
                      {"orthogonal", orth},
                      {"suspicious", suspicious}});
      if (!pr.all() || orth != table.size()) {
        r.status = Status::fail;
        r.reproducer = "goi interpret " + path + " " + o.corpus_dir +
                       "/basis.json --backend matricial";
        r.payload["failures"].push_back(path);
      }
    }
    r.payload["proofs"] = rows;
    r.payload["witnesses"] = witnesses;
    require(r, corpus.size() >= 10, "fewer than 10 proofs");
    for (Rule x : {Rule::ax, Rule::cut, Rule::tensor, Rule::par, Rule::with,
                   Rule::plusl, Rule::plusr, Rule::top})
      require(r, rules.count(x) != 0, "no proof uses " + to_string(x));

    // Fixed-point projects: hermitian partial symmetries that must still be
    // rejected by the trace condition.
    std::map<Index, Arrow> id, diff, swap;
    for (std::uint64_t l : {0u, 1u}) {
      id[Index{l, 0}] = Arrow{Index{l, 0}, 1.0};
      diff[Index{l, 0}] = Arrow{Index{l, 0}, l == 0 ? 1.0 : -1.0};
      swap[Index{l, 0}] = Arrow{Index{l, 1}, 1.0};
      swap[Index{l, 1}] = Arrow{Index{l, 0}, 1.0};
    }
    json rejected = json::object();
    auto probe = [&](std::string const& name, Dialect d, std::map<Index, Arrow> g) {
      Project x{0.0, DialectalOperator{{0, 1}, d, PseudoTrace(),
                                       PartialInjectionOp::table(std::move(g))}};
      PromisingReport pr = is_promising(x);
      rejected[name] = promising_json(pr);
      require(r, pr.symmetry && !pr.traces, name + " is not rejected by the trace condition");
    };
    probe("p+q", Dialect(), id);
    probe("p-q", Dialect(), diff);
    probe("slice swap", Dialect({2}), swap);
    r.payload["fixed_point_projects"] = rejected;
  });
}

CheckResult check_coherence(SuiteOptions const& o) {
  return timed("coherence and compositionality", "coherence", o, 0.0, [&](CheckResult& r) {
    Rng rng = stream(o, 9);
    auto basis = load_basis_file(o.corpus_dir + "/basis.json");
    std::size_t per_proof = samples(o, 8);
    std::size_t cut_pairs = 0, random_pairs = 0, finite_pairs = 0,
                compositions = 0, dense_checked = 0;
    for (std::string sub : {"/mll", "/mall"})
      for (auto const& [path, p] : load_corpus(o.corpus_dir + sub)) {
        auto m = interpret_mall_matricial(*p, basis);
        auto fail = [&](std::string const& what) {
          r.status = Status::fail;
          r.reproducer = path;
          r.payload["failures"].push_back(path + ": " + what);
        };
        for (auto const& c : m.cuts) {
          ++cut_pairs;
          if (!is_promising(c.left).all() || !is_promising(c.right).all())
            continue;
          Measure v = meas_mat(c.left.op, c.right.op);
          if (!(v.is_infinite() || (v.is_finite() && v.value == 0.0)))
            fail("cut pairing measures " + to_string(v));
          if (!is_promising(c.result).all())
            fail("cut composition is not promising");
        }
        Project const& a = m.project;
        if (!is_promising(a).all())
          continue;
        for (std::size_t t = 0; t < per_proof; ++t) {
          // A promising matching on part of the carrier plus fresh locations.
          std::vector<std::uint64_t> shared;
          for (auto x : a.carrier())
            if (rng.coin())
              shared.push_back(x);
          std::uint64_t top = a.carrier().empty() ? 0 : a.carrier().back() + 1;
          auto carrier = carrier_union(shared, range(top, top + rng.index(0, 3)));
          Project b{0.0, random_matching(carrier, rng)};
          if (!is_promising(b).all())
            fail("generated matching is not promising");
          ++random_pairs;
          Measure v = meas_mat(a.op, b.op);
          if (v.is_indeterminate() || (v.is_finite() && v.value != 0.0)) {
            fail("promising pairing measures " + to_string(v));
            continue;
          }
          if (!v.is_finite())
            continue;
          ++finite_pairs;
          // The same pairing on dense payloads.
          Measure dv = meas_mat(with_payload(a.op, a.op.dense()), b.op);
          if (dv.is_finite()) {
            ++dense_checked;
            if (std::abs(dv.value) > 1e-9)
              fail("dense evaluation of a promising pairing is " + to_string(dv));
          }
          ++compositions;
          if (!is_promising(plug_project(a, b)).all())
            fail("promising plug promising is not promising");
        }
      }
    r.payload["cut_pairings"] = cut_pairs;
    r.payload["random_pairings"] = random_pairs;
    r.payload["finite_pairings"] = finite_pairs;
    r.payload["dense_pairings"] = dense_checked;
    r.payload["compositions"] = compositions;

    // A fax with one weight flipped must be caught.
    Project fax = build_fax(make_delocation({0}, {0}), make_delocation({0}, {1}));
    Project bad{fax.wager, flip_first_weight(fax.op)};
    PromisingReport pr = is_promising(bad);
    r.payload["mutated_fax"] = promising_json(pr);
    require(r, is_promising(fax).all(), "fax is not promising");
    require(r, !pr.all(), "a fax with a flipped weight passes is_promising");

    auto with = build_with_project(make_delocation({0}, {3}), make_delocation({1}, {5}),
                                   make_delocation({2}, {6}), make_delocation({0}, {4}));
    if (o.mutate_with)
      with.op = flip_first_weight(with.op);
    PromisingReport wr = is_promising(with);
    r.payload["with_project"] = promising_json(wr);
    require(r, wr.all(), "the With project is not promising");
  });
}

CheckResult check_variant_laws(SuiteOptions const& o) {
  return timed("variant and tensor laws", "identities", o, 0.0, [&](CheckResult& r) {
    Rng rng = stream(o, 10);
    std::size_t n_iso = samples(o, 50), n_tensor = samples(o, 20);
    std::vector<std::uint64_t> carrier{0, 1, 2};
    std::size_t equivalent = 0;
    for (std::size_t t = 0; t < n_iso; ++t) {
      auto [d, a] = random_dialect(rng);
      Project x = random_project(carrier, d, a, rng.uniform(0.0, 1.0), 0.6, rng);
      DialectIso iso = random_iso(d, rng);
      ConductWitnessSet w;
      w.carrier = carrier;
      for (int k = 0; k < 6; ++k) {
        auto [db, b] = random_dialect(rng);
        w.members.push_back(
            random_project(carrier, db, b, rng.uniform(0.0, 1.0), 0.6, rng));
      }
      if (obs_equiv(x, apply_variant(x, iso), w))
        ++equivalent;
    }
    r.payload["isomorphisms"] = n_iso;
    r.payload["observationally_equivalent"] = equivalent;
    require(r, equivalent == n_iso, "a variant is not observationally equivalent");

    double worst_op = 0.0, worst_wager = 0.0, worst_trace = 0.0;
    std::size_t regrouped = 0;
    for (std::size_t t = 0; t < n_tensor; ++t) {
      auto [df, tf] = small_dialect(rng);
      auto [dg, tg] = small_dialect(rng);
      auto [da, ta] = small_dialect(rng);
      auto [dc, tc] = small_dialect(rng);
      // f : A -o B on {0,1} + {2}, g : C -o D on {3} + {4,5}.
      Project f = random_project({0, 1, 2}, df, tf, rng.uniform(0, 1), 0.6, rng);
      Project g = random_project({3, 4, 5}, dg, tg, rng.uniform(0, 1), 0.6, rng);
      Project a = random_project({0, 1}, da, ta, rng.uniform(0, 1), 0.6, rng);
      Project c = random_project({3}, dc, tc, rng.uniform(0, 1), 0.6, rng);
      Project lhs = plug_project(tensor_project(f, g), tensor_project(a, c));
      Project rhs = tensor_project(plug_project(f, a), plug_project(g, c));
      DialectIso iso = regroup_iso(df, dg, da, dc);
      Project moved = apply_variant(lhs, iso);
      if (!same_operator(moved.op, lhs.op, 1e-12))
        ++regrouped;
      if (moved.carrier() != rhs.carrier() || !(moved.dialect() == rhs.dialect())) {
        worst_op = kInfinity;
        continue;
      }
      worst_op = std::max(worst_op, max_abs_diff(moved.op.dense(), rhs.op.dense()));
      worst_wager = std::max(worst_wager, std::abs(lhs.wager - rhs.wager));
      worst_trace = std::max(worst_trace, trace_distance(moved.trace(), rhs.trace()));
    }
    r.payload["tensor_instances"] = n_tensor;
    r.payload["tensor_instances_moved_by_regrouping"] = regrouped;
    r.payload["tensor_operator_max_diff"] = number_json(worst_op);
    r.payload["tensor_wager_max_diff"] = number_json(worst_wager);
    r.payload["tensor_trace_max_diff"] = number_json(worst_trace);
    require(r, worst_op <= 1e-9, "(f (x) g) plug (a (x) c) operator differs");
    require(r, worst_wager <= 1e-9, "(f (x) g) plug (a (x) c) wager differs");
    require(r, worst_trace <= 1e-12, "(f (x) g) plug (a (x) c) trace differs");
  });
}

CheckResult check_with_distributivity(SuiteOptions const& o) {
  return timed("With distributivity", "coherence", o, 0.0, [&](CheckResult& r) {
    Rng rng = stream(o, 11);
    std::size_t n = samples(o, 10);
    // A = {0,1}, B = {2}, C = {3}; theta1(A) = {4,5}, phi(A) = {6,7},
    // theta2(B) = {8}, theta3(C) = {9}.
    Delocation t1 = make_delocation({0, 1}, {4, 5}), ph = make_delocation({0, 1}, {6, 7}),
               t2 = make_delocation({2}, {8}), t3 = make_delocation({3}, {9});
    Project with = build_with_project(t1, t2, t3, ph);
    if (o.mutate_with) {
      auto g = with.op.table().graph();
      g.at(Index{2, 0}).weight = -1.0;
      with.op.op = PartialInjectionOp::table(std::move(g));
    }
    double worst = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      auto [d1, a1] = random_dialect(rng);
      auto [d2, a2] = random_dialect(rng);
      auto [da, aa] = random_dialect(rng);
      Project f1 = random_project({0, 1, 2}, d1, a1, 0.0, 0.5, rng);
      Project f2 = random_project({3, 6, 7}, d2, a2, 0.0, 0.5, rng);
      Project a = random_project({0, 1}, da, aa, 0.0, 0.5, rng);
      Project f = sum_lambda(extend_carrier(f1, {3, 6, 7}), 1.0,
                             extend_carrier(f2, {0, 1, 2}));
      Project res = plug_project(plug_project(with, f), relocate(a, t1));
      Project e1 = relocate(plug_project(f1, a), t2);
      Project e2 = relocate(plug_project(f2, relocate(a, ph)), t3);

      // res lives on {8, 9} with dialect ((C + C) (x) (F1 + F2)) (x) A.
      DialectProduct outer(plug_project(with, f).dialect(), da);
      DialectProduct inner(Dialect({1, 1}), f.dialect());
      DialectProduct p1(d1, da), p2(d2, da);
      std::size_t nr = res.dialect().total();
      DenseOperator got = res.op.dense();
      DenseOperator want(got.carrier());
      DenseOperator x1 = e1.op.dense(), x2 = e2.op.dense();
      for (std::size_t ci = 0; ci < nr; ++ci)
        for (std::size_t cj = 0; cj < nr; ++cj) {
          auto [wi, ai] = outer.split(ci);
          auto [wj, aj] = outer.split(cj);
          auto [ki, fi] = inner.split(wi);
          auto [kj, fj] = inner.split(wj);
          bool one_i = fi < d1.total(), one_j = fj < d1.total();
          if (ki != kj || one_i != one_j)
            continue;
          if (ki == 0 && one_i) {
            // Location 8 comes first in res; e1 and e2 have one location.
            want(ci, cj) = x1(p1.coord(fi, ai), p1.coord(fj, aj));
          } else if (ki == 1 && !one_i) {
            std::size_t gi = fi - d1.total(), gj = fj - d1.total();
            want(nr + ci, nr + cj) = x2(p2.coord(gi, ai), p2.coord(gj, aj));
          }
        }
      worst = std::max(worst, max_abs_diff(got, want));
    }
    r.payload["instances"] = n;
    r.payload["max_diff"] = number_json(worst);
    require(r, worst <= 1e-9,
            "With plug f plug theta1(a) differs from theta2(f1 plug a) + theta3(f2 plug phi(a))");
    PromisingReport pr = is_promising(with);
    r.payload["with_promising"] = promising_json(pr);
    require(r, pr.all(), "the With project is not promising");
  });
}

std::vector<std::string> const& suite_names() {
  static std::vector<std::string> const names{"identities", "coherence", "soundness",
                                              "all"};
  return names;
}

std::vector<CheckResult> run_suite(std::string const& suite, SuiteOptions const& o) {
  using Check = CheckResult (*)(SuiteOptions const&);
  std::vector<Check> identities{check_counterexamples,   check_group_arithmetic,
                                check_fk_determinant,    check_block_determinant,
                                check_adjunction,        check_ldet_lemmas,
                                check_variant_laws};
  std::vector<Check> coherence{check_coherence, check_with_distributivity};
  std::vector<Check> soundness{check_mll_soundness, check_mall_soundness};
  std::vector<Check> chosen;
  if (suite == "identities")
    chosen = identities;
  else if (suite == "coherence")
    chosen = coherence;
  else if (suite == "soundness")
    chosen = soundness;
  else if (suite == "all")
    chosen = {check_counterexamples, check_group_arithmetic, check_fk_determinant,
              check_block_determinant, check_adjunction, check_ldet_lemmas,
              check_mll_soundness, check_mall_soundness, check_coherence,
              check_variant_laws, check_with_distributivity};
  else
    throw Error("unknown suite " + suite);
  std::vector<CheckResult> out;
  for (auto c : chosen)
    out.push_back(c(o));
  return out;
}

} // namespace goi
