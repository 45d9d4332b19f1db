#include <random>
#include <set>

#include "doctest.h"
#include "groups.hpp"
#include "netdual/errors.hpp"
#include "netdual/groupchar.hpp"
#include "netdual/inequalities.hpp"
#include "oracles.hpp"

using namespace netdual;
using oracle::log2_times;

namespace {

LogScalar lg(std::uint64_t n) { return LogScalar::log(n); }

FqMatrix mat(int q, std::vector<std::vector<int>> rows, int cols = -1) { return FqMatrix(q, rows, cols); }

/// Number of distinct coset tuples and whether every tuple occurs equally often,
/// from explicit coset sets.
std::pair<std::size_t, bool> coset_tuple_count(const SubgroupFamily& fam, Subset alpha) {
  const auto& g = fam.group;
  std::map<std::vector<std::set<int>>, int> counts;
  for (int x = 0; x < g.order(); ++x) {
    std::vector<std::set<int>> key;
    for (int i = 0; i < fam.arity(); ++i) {
      if (!contains(alpha, i)) continue;
      std::set<int> coset;
      for (int h : fam.members[i]) coset.insert(g.mul(x, h));
      key.push_back(coset);
    }
    ++counts[key];
  }
  bool uniform = true;
  for (const auto& [_, c] : counts) uniform = uniform && c == counts.begin()->second;
  return {counts.size(), uniform};
}

/// Vectors of F_q^n annihilated by M, by enumeration.
std::uint64_t kernel_size(const FqMatrix& m, int q, int n) {
  std::uint64_t count = 0;
  for (std::uint64_t v = 0; v < ipow(q, n); ++v) {
    const auto x = index_to_vector(v, q, n);
    bool zero = true;
    for (int c : m.apply(x)) zero = zero && c == 0;
    count += zero;
  }
  return count;
}

/// Vectors in the span of the rows of `basis`, by enumeration of combinations.
std::set<std::vector<int>> span(const FqMatrix& basis, int q, int n) {
  std::set<std::vector<int>> out;
  const auto& F = GaloisField::get(q);
  for (std::uint64_t c = 0; c < ipow(q, basis.rows()); ++c) {
    const auto coef = index_to_vector(c, q, basis.rows());
    std::vector<int> v(n, 0);
    for (int r = 0; r < basis.rows(); ++r) {
      for (int k = 0; k < n; ++k) v[k] = F.add(v[k], F.mul(coef[r], basis(r, k)));
    }
    out.insert(v);
  }
  return out;
}

}  // namespace

TEST_CASE("finite field axioms") {
  for (int q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64}) {
    const auto& F = GaloisField::get(q);
    for (int a = 0; a < q; ++a) {
      if (a) CHECK(F.mul(a, F.inv(a)) == 1);
      CHECK(F.add(a, F.neg(a)) == 0);
      for (int b = 0; b < q; ++b) {
        CHECK(F.add(a, b) == F.add(b, a));
        CHECK(F.mul(a, b) == F.mul(b, a));
        for (int c = 0; c < q; c += (q > 16 ? 5 : 1)) {
          CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
          CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
        }
      }
    }
  }
  CHECK_THROWS_AS(GaloisField::get(6), ArgumentError);
  CHECK_FALSE(GaloisField::is_supported(128));
}

TEST_CASE("matrix rank, nullspace and solve against enumeration") {
  std::mt19937_64 rng(1);
  for (int q : {2, 3, 4}) {
    for (int trial = 0; trial < 60; ++trial) {
      const int rows = 1 + trial % 4, n = 1 + (trial / 4) % 4;
      FqMatrix m(q, rows, n);
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < n; ++c) m.set(r, c, std::uniform_int_distribution<int>(0, q - 1)(rng));
      }
      const FqMatrix ns = m.nullspace();
      CHECK(ns.rows() == n - m.rank());
      CHECK(ipow(q, ns.rows()) == kernel_size(m, q, n));
      if (ns.rows()) CHECK((m * ns.transposed()).rank() == 0);
      // a right-hand side in the column space is solvable
      FqMatrix x(q, n, 1);
      for (int c = 0; c < n; ++c) x.set(c, 0, std::uniform_int_distribution<int>(0, q - 1)(rng));
      const auto sol = m.solve(m * x);
      REQUIRE(sol.has_value());
      CHECK(m * *sol == m * x);
      const FqMatrix ext = extend_basis(m.row_basis(), n);
      CHECK(ext.rows() == n);
      CHECK(ext.rank() == n);
    }
  }
  CHECK_FALSE(mat(2, {{1, 0}, {1, 0}}).solve(mat(2, {{0}, {1}})).has_value());
}

TEST_CASE("subspace intersection against enumeration") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 80; ++trial) {
    const int q = trial % 2 ? 3 : 2, n = 2 + trial % 3;
    std::vector<FqMatrix> bases;
    for (int k = 0; k < 2; ++k) {
      FqMatrix m(q, 1 + trial % 2, n);
      for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < n; ++c) m.set(r, c, std::uniform_int_distribution<int>(0, q - 1)(rng));
      }
      bases.push_back(m.row_basis().rows() ? m.row_basis() : FqMatrix(q, 0, n));
    }
    const auto a = span(bases[0], q, n), b = span(bases[1], q, n);
    std::size_t common = 0;
    for (const auto& v : a) common += b.count(v);
    const FqMatrix inter = intersect_subspaces(q, n, bases);
    CHECK(ipow(q, inter.rows()) == common);
    CHECK(inter.rank() == inter.rows());
  }
}

TEST_CASE("group validation") {
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}), StructuralError);
  CHECK_THROWS_AS(FiniteGroup({{0, 1, 2}, {1, 2, 0}}), StructuralError);
  // Latin square with identity but not associative (order 5 loop)
  CHECK_THROWS_AS(FiniteGroup({{0, 1, 2, 3, 4},
                               {1, 0, 3, 4, 2},
                               {2, 4, 0, 1, 3},
                               {3, 2, 4, 0, 1},
                               {4, 3, 1, 2, 0}}),
                  StructuralError);
  CHECK(FiniteGroup::quaternion().order() == 8);
  CHECK_FALSE(FiniteGroup::quaternion().is_abelian());
  CHECK(FiniteGroup::symmetric(4).order() == 24);
  CHECK(FiniteGroup::alternating(4).order() == 12);
  CHECK(FiniteGroup::dihedral(6).order() == 12);
  CHECK(FiniteGroup::dicyclic(2).order() == 8);
  CHECK(all_subgroups(FiniteGroup::symmetric(3)).size() == 6);
  CHECK(all_subgroups(FiniteGroup::symmetric(4)).size() == 30);
  CHECK(all_subgroups(FiniteGroup::quaternion()).size() == 6);
}

TEST_CASE("group catalog has one group of each class up to order 24") {
  const auto groups = catalog::small_groups();
  std::map<int, int> per_order;
  std::set<std::vector<long>> signatures;
  for (const auto& g : groups) {
    ++per_order[g.order()];
    // order, abelian, element-order histogram, subgroup count
    std::vector<long> sig{g.order(), g.is_abelian()};
    std::map<int, int> hist;
    for (int x = 0; x < g.order(); ++x) {
      int k = 1;
      for (int y = x; y != g.identity(); y = g.mul(y, x)) ++k;
      ++hist[k];
    }
    for (const auto& [k, c] : hist) {
      sig.push_back(k);
      sig.push_back(c);
    }
    sig.push_back(-static_cast<long>(all_subgroups(g).size()));
    // centre, as an element-order histogram (Z2^2:Z4 and the Pauli group differ only here)
    std::map<int, int> centre;
    for (int x = 0; x < g.order(); ++x) {
      bool central = true;
      for (int y = 0; y < g.order(); ++y) central = central && g.mul(x, y) == g.mul(y, x);
      if (!central) continue;
      int k = 1;
      for (int y = x; y != g.identity(); y = g.mul(y, x)) ++k;
      ++centre[k];
    }
    for (const auto& [k, c] : centre) sig.push_back(-1000 * k - c);
    signatures.insert(sig);
  }
  const int known[] = {1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15};
  for (int n = 1; n <= 24; ++n) CHECK_MESSAGE(per_order[n] == known[n - 1], "order " << n);
  CHECK(groups.size() == 74);
  CHECK(signatures.size() == groups.size());
}

TEST_CASE("entropy from subgroups examples") {
  const FiniteGroup z6 = FiniteGroup::cyclic(6);
  const SubgroupFamily fam{z6, {{0, 3}, {0, 2, 4}}};
  const SetFunction f = entropy_from_subgroups(fam);
  CHECK(f(1) == lg(3));
  CHECK(f(2) == lg(2));
  CHECK(f(3) == lg(6));

  const SubgroupFamily whole{z6, {{0, 1, 2, 3, 4, 5}}};
  CHECK(entropy_from_subgroups(whole)(1).is_zero());

  const FiniteGroup v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  const SubgroupFamily three{v4, {{0, 1}, {0, 2}, {0, 3}}};
  const SetFunction g = entropy_from_subgroups(three);
  for (Subset s = 1; s < 8; ++s) CHECK(g(s) == log2_times(cardinality(s) == 1 ? 1 : 2));

  CHECK_THROWS_AS(entropy_from_subgroups(SubgroupFamily{z6, {{0, 1}}}), ArgumentError);
}

TEST_CASE("entropy from subspaces examples") {
  const SubspaceFamily a{2, 2, {mat(2, {{1, 0}}), mat(2, {{0, 1}})}};
  const SetFunction f = entropy_from_subspaces(a);
  CHECK(f(1) == log2_times(1));
  CHECK(f(2) == log2_times(1));
  CHECK(f(3) == log2_times(2));

  const SubspaceFamily whole{3, 2, {FqMatrix::identity(3, 2)}};
  CHECK(entropy_from_subspaces(whole)(1).is_zero());

  const SubspaceFamily b{2, 3, {mat(2, {{1, 0, 0}, {0, 1, 0}}), mat(2, {{0, 0, 1}})}};
  const SetFunction g = entropy_from_subspaces(b);
  CHECK(g(1) == log2_times(1));
  CHECK(g(2) == log2_times(2));
  CHECK(g(3) == log2_times(3));
  // counting cosets over the 8 vectors gives the same numbers
  const auto qu = quasi_uniform_check(coset_support(b));
  REQUIRE(qu.quasi_uniform);
  CHECK(qu.entropy == g);

  CHECK_THROWS_AS(entropy_from_subspaces(SubspaceFamily{2, 2, {mat(2, {{1, 1}, {1, 1}})}}), ArgumentError);
}

TEST_CASE("coset support examples") {
  const FiniteGroup z6 = FiniteGroup::cyclic(6);
  const SupportSet s = coset_support(SubgroupFamily{z6, {{0, 3}, {0, 2, 4}}});
  CHECK(s.size() == 6);
  CHECK(s.alphabets[0].size() == 3);
  CHECK(s.alphabets[1].size() == 2);

  const SupportSet t = coset_support(SubgroupFamily{z6, {{0, 1, 2, 3, 4, 5}}});
  CHECK(t.size() == 1);

  const FiniteGroup v4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  const SupportSet u = coset_support(SubgroupFamily{v4, {{0, 1}, {0, 2}, {0, 3}}});
  CHECK(u.size() == 4);
  for (Subset pair : {3u, 5u, 6u}) CHECK(u.projections(pair).size() == 4);
}

TEST_CASE("quasi-uniform check examples") {
  const auto diag = quasi_uniform_check(SupportSet::from_tuples({{0, 0}, {1, 1}, {2, 2}}));
  REQUIRE(diag.quasi_uniform);
  for (Subset s = 1; s < 4; ++s) CHECK(diag.entropy(s) == lg(3));
  const auto bad = quasi_uniform_check(SupportSet::from_tuples({{0, 0}, {0, 1}, {1, 0}}));
  CHECK_FALSE(bad.quasi_uniform);
  CHECK(std::find(bad.failing.begin(), bad.failing.end(), 1u) != bad.failing.end());
  CHECK_THROWS_AS(SupportSet({{0, 1}}, {{2}}), StructuralError);
  CHECK_THROWS_AS(SupportSet::from_tuples({}), StructuralError);
}

TEST_CASE("builtin functions") {
  CHECK(builtin_function("zy")(12) == log2_times(4));
  CHECK(builtin_function("zy:1/2")(3) == log2_times(3) * Rational(1, 2));
  const SetFunction pp = builtin_function("projective-plane");
  CHECK(pp(1) == lg(13));
  CHECK(pp(0).is_zero());
  CHECK(pp(3) == lg(6) + lg(13));
  CHECK(pp(12) == lg(12) + lg(13));
  CHECK(pp(5) == lg(4) + lg(13));
  CHECK(pp(15) == lg(12) + lg(13));
  CHECK_THROWS_AS(builtin_function("nope"), ArgumentError);
  CHECK_THROWS_AS(builtin_function("zy:-1"), ArgumentError);
}

TEST_CASE("subgroup entropy formula agrees with coset enumeration") {
  auto groups = catalog::small_groups();
  groups.push_back(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::symmetric(4)));  // 48
  groups.push_back(FiniteGroup::dicyclic(8));                                                          // 32
  std::mt19937_64 rng(4);
  int families = 0;
  for (const auto& g : groups) {
    const auto subs = all_subgroups(g);
    std::uniform_int_distribution<std::size_t> pick(0, subs.size() - 1);
    for (int trial = 0; trial < 12; ++trial) {
      SubgroupFamily fam{g, {}};
      const int n = 1 + trial % 3;
      for (int k = 0; k < n; ++k) fam.members.push_back(subs[pick(rng)]);
      const SetFunction f = entropy_from_subgroups(fam);
      const auto qu = quasi_uniform_check(coset_support(fam));
      REQUIRE(qu.quasi_uniform);
      CHECK(qu.entropy == f);
      for (Subset a = 1; a <= f.full(); ++a) {
        const auto [count, uniform] = coset_tuple_count(fam, a);
        CHECK(uniform);
        CHECK(f(a) == lg(count));
      }
      CHECK(check_polymatroid(f).empty());
      if (g.is_abelian() && n == 3) {
        // pad to four variables with a repeat to exercise Ingleton
        fam.members.push_back(subs[pick(rng)]);
        CHECK(check_ingleton(entropy_from_subgroups(fam)).empty());
        CHECK(check_zhang_yeung(entropy_from_subgroups(fam)).empty());
      }
      ++families;
    }
  }
  CHECK(families > 800);
}

TEST_CASE("subspace entropy equals the additive-group entropy") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 120; ++trial) {
    const int q = trial % 2 ? 3 : 2, n = 1 + trial % 3, arity = 1 + trial % 4;
    SubspaceFamily fam{q, n, {}};
    for (int k = 0; k < arity; ++k) {
      FqMatrix m(q, std::uniform_int_distribution<int>(0, n)(rng), n);
      for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < n; ++c) m.set(r, c, std::uniform_int_distribution<int>(0, q - 1)(rng));
      }
      fam.members.push_back(m.rows() ? m.row_basis().rows() ? m.row_basis() : FqMatrix(q, 0, n) : m);
    }
    const SetFunction f = entropy_from_subspaces(fam);
    CHECK(f == entropy_from_subgroups(as_subgroup_family(fam)));
    const auto qu = quasi_uniform_check(coset_support(fam));
    REQUIRE(qu.quasi_uniform);
    CHECK(qu.entropy == f);
    if (arity == 4) CHECK(check_ingleton(f).empty());
  }
}
