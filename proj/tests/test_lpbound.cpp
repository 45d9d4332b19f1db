#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "netdual/errors.hpp"
#include "netdual/extensions.hpp"
#include "netdual/groupchar.hpp"
#include "netdual/inequalities.hpp"
#include "netdual/lp_bound.hpp"
#include "netdual/simplex.hpp"
#include "netdual/witness.hpp"
#include "oracles.hpp"

using namespace netdual;
using oracle::log2_times;

namespace {

LogScalar u(long k) { return log2_times(k); }

/// Function on numbered elements from values in units of log 2, indexed by mask.
SetFunction units(int n, const std::vector<long>& v) {
  SetFunction f(GroundSet::numbered(n));
  for (Subset s = 1; s <= f.full(); ++s) f.set(s, u(v.at(s)));
  return f;
}

Subset at(const SetFunction& f, std::initializer_list<const char*> labels) {
  Subset s = 0;
  for (const char* l : labels) s |= singleton(f.ground().require_index(l));
  return s;
}

Subset random_subset(int n, std::mt19937_64& rng) {
  return static_cast<Subset>(std::uniform_int_distribution<std::uint32_t>(0, full_set(n))(rng));
}

LinearConstraint row(std::vector<std::pair<int, Rational>> c, LogScalar b) { return {std::move(c), std::move(b)}; }

}  // namespace

TEST_CASE("functional extension examples") {
  const SetFunction f = units(2, {0, 1, 1, 2});
  const SetFunction constant = functional_extension(f, 0, "Y");
  CHECK(constant.size() == 3);
  CHECK(constant(at(constant, {"Y"})).is_zero());
  CHECK(constant(at(constant, {"Y", "1"})) == u(1));

  const SetFunction g = functional_extension(f, f.full(), "Y");
  CHECK(g(at(g, {"Y"})) == u(2));
  CHECK(g(at(g, {"Y", "1"})) == u(2));
  CHECK(g(at(g, {"Y", "1", "2"})) == u(2));
  CHECK(g.restricted(std::vector<std::string>{"1", "2"}) == f);
  CHECK(is_polymatroid(g));

  CHECK_THROWS_AS(functional_extension(f, 1, "2"), ArgumentError);
}

TEST_CASE("sum extension examples") {
  const SetFunction f = units(2, {0, 1, 1, 2});
  const SetFunction g = sum_extension(f, 0, 1, "Z");
  CHECK(g(at(g, {"Z"})) == u(1));
  CHECK(g(at(g, {"1", "Z"})) == u(2));
  CHECK(g(at(g, {"2", "Z"})) == u(2));
  CHECK(g(at(g, {"1", "2", "Z"})) == u(2));

  const SetFunction zero = sum_extension(SetFunction(GroundSet::numbered(2)), 0, 1, "Z");
  for (Subset s = 0; s <= zero.full(); ++s) CHECK(zero(s).is_zero());

  // a third independent element T
  const SetFunction t = independent_adhesion(f, [] {
    SetFunction s{GroundSet({"T"})};
    s.set(1, log2_times(3));
    return s;
  }());
  const SetFunction h = sum_extension(t, 0, 1, "Z");
  CHECK(h(at(h, {"Z", "T"})) == h(at(h, {"Z"})) + h(at(h, {"T"})));
  CHECK(is_polymatroid(h));

  CHECK_THROWS_AS(sum_extension(units(2, {0, 1, 2, 3}), 0, 1, "Z"), ArgumentError);  // unequal
  CHECK_THROWS_AS(sum_extension(units(2, {0, 1, 1, 1}), 0, 1, "Z"), ArgumentError);  // dependent
  CHECK_THROWS_AS(sum_extension(f, 0, 0, "Z"), ArgumentError);
  CHECK_THROWS_AS(sum_extension(f, 0, 1, "1"), ArgumentError);
}

TEST_CASE("sw extension examples") {
  const SetFunction f = units(2, {0, 1, 1, 2});
  const Subset x = singleton(0), y = singleton(1);

  const SetFunction copy = sw_extension(f, x, 0, "Z");
  CHECK(copy(at(copy, {"Z"})) == u(1));
  CHECK(copy(at(copy, {"1", "Z"})) == u(1));

  const SetFunction inside = sw_extension(f, x, x | y, "Z");
  CHECK(inside(at(inside, {"Z"})).is_zero());

  const SetFunction g = sw_extension(f, x, y, "Z");
  CHECK(g(at(g, {"Z"})) == u(1));
  CHECK(g(at(g, {"Z", "2"})) == u(2));
  CHECK(g(at(g, {"1", "Z"})) == u(1));
  CHECK(is_function_of(g, at(g, {"1"}), at(g, {"Z", "2"})));
  CHECK(is_function_of(g, at(g, {"Z"}), at(g, {"1"})));

  CHECK_THROWS_AS(sw_extension(f, x, y, "1"), ArgumentError);
}

TEST_CASE("independent adhesion examples") {
  SetFunction a{GroundSet({"a"})}, b{GroundSet({"b"})};
  a.set(1, u(2));
  b.set(1, LogScalar::log(std::uint64_t{3}));
  const SetFunction ab = independent_adhesion(a, b);
  CHECK(ab(3) == u(2) + LogScalar::log(std::uint64_t{3}));

  const SetFunction f = units(2, {0, 1, 1, 2});
  const SetFunction z = independent_adhesion(f, SetFunction(GroundSet({"c"})));
  CHECK(z.size() == 3);
  CHECK(z.restricted(std::vector<std::string>{"1", "2"}) == f);
  CHECK(z(at(z, {"c"})).is_zero());

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const SetFunction p = oracle::random_polymatroid(2, 3, rng);
    SetFunction q(GroundSet({"3", "4"}), oracle::random_polymatroid(2, 3, rng).values());
    const SetFunction g = independent_adhesion(p, q);
    const Subset parts[] = {at(g, {"1", "2"}), at(g, {"3", "4"})};
    CHECK(is_independent(g, parts));
    CHECK(is_polymatroid(g));
  }
  CHECK_THROWS_AS(independent_adhesion(f, f), ArgumentError);
}

TEST_CASE("extension outputs are polymatroids satisfying their defining equalities") {
  std::mt19937_64 rng(2024);
  int sums = 0;
  for (int trial = 0; trial < 240; ++trial) {
    const int n = 1 + trial % 4;
    const SetFunction f = oracle::random_polymatroid(n, 3, rng);
    const int y_new = n;  // the appended element

    const Subset a = random_subset(n, rng);
    const SetFunction fe = functional_extension(f, a, "Y");
    REQUIRE(oracle::full_axioms(fe));
    const Subset y = singleton(y_new);
    CHECK(fe(y) == fe(a));
    CHECK(fe(y | a) == fe(a));
    for (Subset b = 0; b <= f.full(); ++b) CHECK(fe(y | b) == f(b | a));

    const Subset sx = random_subset(n, rng), sy = random_subset(n, rng);
    const SetFunction sw = sw_extension(f, sx, sy, "Z");
    REQUIRE(oracle::full_axioms(sw));
    CHECK(sw(y) == f(sx | sy) - f(sy));
    CHECK(conditional_entropy(sw, sx, y | sy).is_zero());
    CHECK(conditional_entropy(sw, y, sx).is_zero());

    // two fresh independent elements of equal entropy next to a random polymatroid
    const int m = std::min(n, 2);
    const SetFunction base = f.restricted(std::vector<int>(
        [&] {
          std::vector<int> v;
          for (int i = 0; i < m; ++i) v.push_back(i);
          return v;
        }()));
    const long e = std::uniform_int_distribution<long>(0, 3)(rng);
    SetFunction xs{GroundSet({"X"})}, ys{GroundSet({"Y"})};
    xs.set(1, u(e));
    ys.set(1, u(e));
    const SetFunction pre = independent_adhesion(independent_adhesion(base, xs), ys);
    REQUIRE(oracle::full_axioms(pre));
    const int ix = pre.ground().require_index("X"), iy = pre.ground().require_index("Y");
    const SetFunction se = sum_extension(pre, ix, iy, "Z");
    REQUIRE(oracle::full_axioms(se));
    const Subset z = at(se, {"Z"}), bx = singleton(ix), by = singleton(iy);
    CHECK(se(z) == pre(bx));
    CHECK(conditional_entropy(se, z, bx | by).is_zero());
    CHECK(conditional_entropy(se, bx, by | z).is_zero());
    CHECK(conditional_entropy(se, by, bx | z).is_zero());
    ++sums;

    // pairs of a random polymatroid that happen to meet the precondition
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Subset si = singleton(i), sj = singleton(j);
        if (f(si) != f(sj) || f(si | sj) != f(si) + f(sj)) continue;
        const SetFunction g = sum_extension(f, i, j, "Z");
        CHECK(oracle::full_axioms(g));
        CHECK(conditional_entropy(g, si, sj | singleton(n)).is_zero());
      }
    }
  }
  CHECK(sums >= 200);
}

TEST_CASE("simplex feasibility") {
  SUBCASE("feasible box") {
    const std::vector<LinearConstraint> rows = {row({{0, 1}, {1, 1}}, u(2)), row({{0, -1}}, -u(1)),
                                                row({{1, -1}}, -LogScalar::log(std::uint64_t{3}) * Rational(1, 2))};
    const auto r = find_feasible_point(2, rows);
    REQUIRE(r.feasible);
    CHECK(satisfies(rows, r.point));
  }
  SUBCASE("infeasible interval with a checked certificate") {
    const std::vector<LinearConstraint> rows = {row({{0, 1}}, u(1)), row({{0, -1}}, -u(2))};
    const auto r = find_feasible_point(1, rows);
    REQUIRE_FALSE(r.feasible);
    CHECK(verify_farkas(1, rows, r.multipliers));
    CHECK(r.multipliers[0] > 0);
    CHECK(r.multipliers[1] > 0);
    CHECK_FALSE(verify_farkas(1, rows, {Rational(1), Rational(0)}));
  }
  SUBCASE("logarithmic bounds compare exactly") {
    const LogScalar l2 = LogScalar::log(std::uint64_t{2}), l3 = LogScalar::log(std::uint64_t{3});
    CHECK(find_feasible_point(1, {row({{0, 1}}, l3), row({{0, -1}}, -l2)}).feasible);
    CHECK_FALSE(find_feasible_point(1, {row({{0, 1}}, l2), row({{0, -1}}, -l3)}).feasible);
    // 5 log 2 vs 3 log 3: 32 > 27
    CHECK(find_feasible_point(1, {row({{0, 1}}, l2 * Rational(5)), row({{0, -1}}, -l3 * Rational(3))}).feasible);
    CHECK_FALSE(find_feasible_point(1, {row({{0, 1}}, l3 * Rational(3)), row({{0, -1}}, -l2 * Rational(5))}).feasible);
  }
  SUBCASE("free columns") {
    const std::vector<LinearConstraint> rows = {row({{0, 1}}, -u(1)), row({{0, -1}}, u(3))};
    CHECK_FALSE(find_feasible_point(1, rows).feasible);
    const auto r = find_feasible_point(1, rows, {true});
    REQUIRE(r.feasible);
    CHECK(r.point[0].sign() < 0);
    CHECK(satisfies(rows, r.point, {true}));
    CHECK_FALSE(satisfies(rows, r.point));
  }
  SUBCASE("no rows") {
    const auto r = find_feasible_point(3, {});
    CHECK(r.feasible);
    CHECK(r.point.size() == 3);
  }
  SUBCASE("degenerate system that cycles without an anti-cycling rule") {
    // max 3/4 x1 - 20 x2 + 1/2 x3 - 6 x4 over the classic cycling polytope is 5/4
    auto q = [](long a, long b) { return Rational(a, b); };
    std::vector<LinearConstraint> rows = {
        row({{0, q(1, 4)}, {1, q(-8, 1)}, {2, q(-1, 1)}, {3, q(9, 1)}}, LogScalar()),
        row({{0, q(1, 2)}, {1, q(-12, 1)}, {2, q(-1, 2)}, {3, q(3, 1)}}, LogScalar()),
        row({{2, q(1, 1)}}, u(1)),
    };
    auto with_target = [&](Rational t) {
      auto r = rows;
      r.push_back(row({{0, q(-3, 4)}, {1, q(20, 1)}, {2, q(-1, 2)}, {3, q(6, 1)}}, -u(1) * t));
      return r;
    };
    CHECK(find_feasible_point(4, with_target(q(5, 4))).feasible);
    const auto over = with_target(q(51, 40));
    const auto r = find_feasible_point(4, over);
    REQUIRE_FALSE(r.feasible);
    CHECK(verify_farkas(4, over, r.multipliers));
  }
}

TEST_CASE("expression parsing") {
  const auto mi = InfoExpression::parse("H(1) + H(2) - H(1,2) >= 0");
  CHECK(mi.variables == std::vector<std::string>{"1", "2"});
  CHECK(mi.terms == std::map<Subset, Rational>{{1, Rational(1)}, {2, Rational(1)}, {3, Rational(-1)}});
  CHECK(InfoExpression::parse("I(1;2) >= 0") == mi);
  CHECK(InfoExpression::parse("H(1,2) <= H(1) + H(2)") == mi);
  CHECK(InfoExpression::parse("0 <= I(2;1)") == mi);
  CHECK(InfoExpression::parse("2 I(1;2) >= 0").terms.at(3) == Rational(-2));
  CHECK(InfoExpression::parse("1/2*H(1) >= 0").terms.at(1) == Rational(1, 2));

  const auto cmi = InfoExpression::parse("I(a;b|c) >= 0");
  CHECK(cmi.variables == std::vector<std::string>{"a", "b", "c"});
  CHECK(cmi.terms == std::map<Subset, Rational>{{5, Rational(1)}, {6, Rational(1)}, {7, Rational(-1)}, {4, Rational(-1)}});

  // numeric names order numerically, bracketed names may contain commas
  CHECK(InfoExpression::parse("H(10) + H(9) >= 0").variables == std::vector<std::string>{"9", "10"});
  CHECK(InfoExpression::parse("H(S[{1,2}], V[1]) >= 0").variables == std::vector<std::string>{"S[{1,2}]", "V[1]"});

  // cancelling terms vanish
  CHECK(InfoExpression::parse("H(1) - H(1) >= 0").terms.empty());

  CHECK(InfoExpression::parse("2 I(3;4) - I(1;2) - I(1;3,4) - 3 I(3;4|1) - I(3;4|2) <= 0") == zhang_yeung_expression());
  CHECK(InfoExpression::parse("I(1;2|3) + I(1;2|4) + I(3;4) - I(1;2) >= 0") == ingleton_expression());

  for (const char* bad : {"H(1 >= 0", "H(1) > 0", "H(1)", "X(1) >= 0", "H() >= 0", "I(1;) >= 0", "H(1) >= 0 >= 0",
                          "H (1) >= 0", "H(1) + >= 0", "H(1,,2) >= 0", "H(a]) >= 0", "1/0 H(1) >= 0"}) {
    CAPTURE(bad);
    try {
      InfoExpression::parse(bad);
      FAIL("accepted");
    } catch (const StructuralError& e) {
      CHECK(std::string(e.what()).find("column") != std::string::npos);
    }
  }
}

TEST_CASE("expression text round-trips and evaluates") {
  CHECK(InfoExpression::parse(ingleton_expression().str()) == ingleton_expression());
  CHECK(InfoExpression::parse(zhang_yeung_expression().str()) == zhang_yeung_expression());
  CHECK(InfoExpression::parse("0 >= 0").str() == "0 >= 0");

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    std::map<Subset, Rational> terms;
    for (int k = 0; k < 4; ++k) {
      const Subset s = 1 + std::uniform_int_distribution<Subset>(0, 14)(rng);
      terms[s] += Rational(std::uniform_int_distribution<int>(-5, 5)(rng), std::uniform_int_distribution<int>(1, 3)(rng));
    }
    const auto e = InfoExpression::from_terms({"1", "2", "3", "4"}, terms);
    CHECK(InfoExpression::parse(e.str()) == e);
  }

  // ingleton on the projective-plane function: 3 log 2 - 2 log 3
  const SetFunction pp = projective_plane_function();
  CHECK(ingleton_expression().evaluate(pp) == LogScalar::log(std::uint64_t{8}) - LogScalar::log(std::uint64_t{9}));
  // the pair with joint entropy 4a plays roles 1 and 2
  const int zy_roles[] = {2, 3, 0, 1};
  CHECK(zhang_yeung_expression().evaluate(zy_function(Rational(1)), zy_roles) == -u(1));
  CHECK(zhang_yeung_expression().evaluate(zy_function(Rational(1))).sign() > 0);
  const int order[] = {1, 0, 2, 3};
  CHECK(ingleton_expression().evaluate(pp, order) == ingleton_expression().evaluate(pp));  // symmetric in 1,2
  CHECK_THROWS_AS(InfoExpression::parse("H(x) >= 0").evaluate(pp), std::exception);
}

TEST_CASE("lp on the relay") {
  const auto r = fixture::relay(2);
  const std::vector<LogScalar> levels = {LogScalar(), u(1), LogScalar::log(std::uint64_t{3}), u(2),
                                         LogScalar::log(std::uint64_t{5})};
  for (const auto& lambda : levels) {
    for (const auto& w1 : levels) {
      for (const auto& w2 : levels) {
        RateCapacityTuple t;
        t.rates["x"] = lambda;
        t.caps["e1"] = w1;
        t.caps["e2"] = w2;
        const auto res = lp_feasible(r.net, r.conn, t);
        CHECK(res.feasible == (lambda <= w1 && lambda <= w2));
        if (!res.feasible) {
          CHECK_FALSE(res.certificate.empty());
          for (const auto& [what, y] : res.certificate) CHECK(y > 0);
        }
      }
    }
  }
}

TEST_CASE("lp on the butterfly") {
  const auto bf = fixture::butterfly();
  auto tuple = [&](long x, long y, long m) {
    RateCapacityTuple t;
    t.rates = {{"x", u(x)}, {"y", u(y)}};
    for (const auto& e : bf.net.edges()) t.caps[e.id] = u(1);
    t.caps["m"] = u(m);
    return t;
  };
  const auto ok = lp_feasible(bf.net, bf.conn, tuple(1, 1, 1));
  REQUIRE(ok.feasible);
  const SetFunction& g = *ok.point;
  CHECK(is_polymatroid(g));
  for (const char* s : {"x", "y"}) CHECK(g(at(g, {s})) >= u(1));
  for (const auto& e : bf.net.edges()) {
    CHECK(g(singleton(g.ground().require_index(e.id))) <= u(1));
    const auto feeds = node_feeds(bf.net, bf.conn, e.tail);
    CHECK(is_function_of(g, singleton(g.ground().require_index(e.id)), g.ground().subset_of(feeds)));
  }
  for (const auto& [t, s] : bf.conn.demands()) {
    CHECK(is_function_of(g, at(g, {s.c_str()}), g.ground().subset_of(node_feeds(bf.net, bf.conn, t))));
  }
  const Subset both[] = {at(g, {"x"}), at(g, {"y"})};
  CHECK(is_independent(g, both));

  CHECK_FALSE(lp_feasible(bf.net, bf.conn, tuple(2, 1, 1)).feasible);
  CHECK_FALSE(lp_feasible(bf.net, bf.conn, tuple(1, 1, 0)).feasible);
  CHECK_FALSE(lp_feasible(bf.net, bf.conn, tuple(1, 0, 0)).feasible);
  CHECK(lp_feasible(bf.net, bf.conn, tuple(0, 0, 0)).feasible);
  CHECK(lp_feasible(bf.net, bf.conn, tuple(1, 1, 1), {ingleton_expression()}).feasible);
  CHECK_FALSE(lp_feasible(bf.net, bf.conn, tuple(2, 1, 2), {ingleton_expression()}).feasible);

  // monotone in the capacity of m, antitone in the rates
  std::map<std::tuple<long, long, long>, bool> table;
  for (long x = 0; x <= 2; ++x) {
    for (long y = 0; y <= 2; ++y) {
      for (long m = 0; m <= 2; ++m) table[{x, y, m}] = lp_feasible(bf.net, bf.conn, tuple(x, y, m)).feasible;
    }
  }
  for (const auto& [k, feasible] : table) {
    if (!feasible) continue;
    const auto [x, y, m] = k;
    if (m < 2) CHECK(table.at({x, y, m + 1}));
    if (x > 0) CHECK(table.at({x - 1, y, m}));
    if (y > 0) CHECK(table.at({x, y - 1, m}));
  }
}

TEST_CASE("lp limits and G-dagger(1)") {
  const GDaggerLayout one = build_gdagger(1);
  SetFunction h(GroundSet::numbered(1));
  h.set(1, u(1));
  const auto tuple = rate_capacity(h, one);
  LpOptions opts;
  opts.ground_cap = static_cast<int>(one.conn.sessions.size() + one.network.edges().size());
  CHECK(lp_feasible(one.network, one.conn, tuple, {}, opts).feasible);
  auto greedy = tuple;
  for (auto& [s, rate] : greedy.rates) rate = u(2);
  CHECK_FALSE(lp_feasible(one.network, one.conn, greedy, {}, opts).feasible);

  const GDaggerLayout two = build_gdagger(2);
  try {
    lp_feasible(two.network, two.conn, rate_capacity(units(2, {0, 1, 1, 2}), two));
    FAIL("no resource error");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("witness") != std::string::npos);
  }
}

TEST_CASE("shannon implication") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& e : elemental_inequalities(n)) {
      std::vector<std::string> names;
      for (int i = 1; i <= n; ++i) names.push_back(std::to_string(i));
      const auto expr = InfoExpression::from_terms(names, coefficients(e, n));
      const auto r = shannon_implies(expr, n);
      REQUIRE(r.implied);
      REQUIRE(r.combination.size() == 1);
      CHECK(r.combination[0].first == e);
      CHECK(r.combination[0].second == Rational(1));
    }
  }

  const auto zy = shannon_implies(zhang_yeung_expression(), 4);
  CHECK_FALSE(zy.implied);
  REQUIRE(zy.counterexample);
  CHECK(is_polymatroid(*zy.counterexample));
  CHECK(zhang_yeung_expression().evaluate(*zy.counterexample).sign() < 0);

  const auto ing = shannon_implies(ingleton_expression(), 4);
  CHECK_FALSE(ing.implied);
  CHECK(ingleton_expression().evaluate(*ing.counterexample).sign() < 0);
  CHECK(is_polymatroid(projective_plane_function()));
  CHECK_FALSE(check_ingleton(projective_plane_function()).empty());

  CHECK_FALSE(shannon_implies(InfoExpression::parse("H(1) - H(1,2) >= 0"), 2).implied);
  CHECK(shannon_implies(InfoExpression::parse("0 >= 0"), 2).implied);
  CHECK_THROWS_AS(shannon_implies(ingleton_expression(), 11), ResourceError);
  CHECK_THROWS_AS(shannon_implies(ingleton_expression(), 3), ArgumentError);
}

TEST_CASE("implied inequalities hold on random polymatroids") {
  std::mt19937_64 rng(99);
  const int n = 3;
  const auto elemental = elemental_inequalities(n);
  std::vector<SetFunction> sample;
  for (int k = 0; k < 60; ++k) sample.push_back(oracle::random_polymatroid(n, 3, rng));
  int implied = 0, refuted = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::map<Subset, Rational> terms;
    for (int k = 0; k < 3; ++k) {
      const auto& e = elemental[std::uniform_int_distribution<std::size_t>(0, elemental.size() - 1)(rng)];
      const Rational c(std::uniform_int_distribution<int>(trial % 2 == 0 ? 1 : -2, 3)(rng));
      for (const auto& [s, v] : coefficients(e, n)) terms[s] += c * v;
    }
    const auto expr = InfoExpression::from_terms({"1", "2", "3"}, terms);
    const auto r = shannon_implies(expr, n);
    if (r.implied) {
      ++implied;
      std::map<Subset, Rational> sum;
      for (const auto& [e, c] : r.combination) {
        CHECK(c > 0);
        for (const auto& [s, v] : coefficients(e, n)) sum[s] += c * v;
      }
      std::erase_if(sum, [](const auto& kv) { return sgn(kv.second) == 0; });
      std::map<Subset, Rational> want;
      std::vector<int> positions;
      for (const auto& name : expr.variables) positions.push_back(std::stoi(name) - 1);
      for (const auto& [s, v] : expr.terms) want[embed(s, positions)] = v;
      CHECK(sum == want);
      for (const auto& f : sample) CHECK(expr.evaluate(f).sign() >= 0);
    } else {
      ++refuted;
      CHECK(expr.evaluate(*r.counterexample).sign() < 0);
    }
  }
  CHECK(implied > 10);
  CHECK(refuted > 0);
}

TEST_CASE("witness examples") {
  const GDaggerLayout two = build_gdagger(2);

  const auto zero = build_witness(SetFunction(GroundSet::numbered(2)), two);
  for (const auto& loc : zero.locals) {
    for (const auto& v : loc.function.values()) CHECK(v.is_zero());
  }
  CHECK(verify_connection_constraints(zero, two, rate_capacity(zero.h, two)).ok);

  const SetFunction u12 = units(2, {0, 1, 1, 1});
  const auto cert = build_witness(u12, two);
  CHECK(cert.locals.size() == two.subnetworks.size() + 1);
  const auto tuple = rate_capacity(u12, two);
  const auto report = verify_connection_constraints(cert, two, tuple);
  CHECK(report.ok);
  CHECK(report.clauses > two.network.edges().size());
  for (const auto& loc : cert.locals) {
    CHECK(is_polymatroid(loc.function));
    CHECK(loc.function.size() <= 2 + 6);
  }

  try {
    build_witness(units(2, {0, 1, 1, 3}), two);
    FAIL("accepted a non-polymatroid");
  } catch (const CertificateInvalid& e) {
    CHECK(std::string(e.what()).find("submodular") != std::string::npos);
  }

  // squeeze the capacity of a role edge below what the witness puts on it
  const std::string w = two.subnetworks.front().roles.at("W");
  auto tight = tuple;
  tight.caps[w] = tuple.caps.at(w) - u(1);
  const auto squeezed = verify_connection_constraints(cert, two, tight);
  CHECK_FALSE(squeezed.ok);
  REQUIRE_FALSE(squeezed.failures.empty());
  CHECK(squeezed.failures.front().find(w) != std::string::npos);

  auto higher = tuple;
  for (auto& [s, rate] : higher.rates) rate += u(1);
  CHECK_FALSE(verify_connection_constraints(cert, two, higher).ok);

  CHECK(verify_connection_constraints(WitnessCertificate{}, Network{}, ConnectionRequirement{}, RateCapacityTuple{}).ok);
  auto bare = cert;
  bare.locals.erase(bare.locals.begin() + 1, bare.locals.end());
  CHECK_THROWS_AS(verify_connection_constraints(bare, two, tuple), CoverageError);

  CHECK(extract(cert).values() == u12.values());
  auto tampered = cert;
  auto& f = tampered.locals.back().function;
  f.set(at(f, {"V[1]"}), u(3));
  CHECK_THROWS_AS(extract(tampered), CertificateInvalid);
  CHECK_FALSE(verify_connection_constraints(tampered, two, tuple).ok);

  CHECK_THROWS_AS(build_witness(u12, build_gdagger(3)), ArgumentError);
  CHECK_THROWS_AS(build_witness(SetFunction(GroundSet::numbered(5)), build_gdagger(5)), ResourceError);
}

TEST_CASE("witnesses for random polymatroids and failures for broken ones") {
  std::mt19937_64 rng(11);
  for (int n : {2, 3}) {
    const GDaggerLayout layout = build_gdagger(n);
    for (int trial = 0; trial < (n == 2 ? 40 : 15); ++trial) {
      const SetFunction h = oracle::random_polymatroid(n, 3, rng);
      const auto cert = build_witness(h, layout);
      CHECK(verify_connection_constraints(cert, layout, rate_capacity(h, layout)).ok);
      CHECK(extract(cert).values() == h.values());
      if (trial < 3) {
        // local functions meeting the sources function on shared V's and sessions
        for (std::size_t k = 1; k < cert.locals.size(); ++k) {
          CHECK(adhesion_compatible(cert.locals[k].function, cert.locals.front().function));
        }
      }
      const SetFunction broken = oracle::break_polymatroid(h, rng);
      REQUIRE_FALSE(is_polymatroid(broken));
      CHECK_THROWS_AS(build_witness(broken, layout), CertificateInvalid);
    }
  }
}
