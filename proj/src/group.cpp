#include "netdual/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "netdual/errors.hpp"

namespace netdual {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::string name)
    : table_(std::move(table)), name_(std::move(name)) {
  const int n = order();
  if (n == 0) throw StructuralError("group table is empty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw StructuralError("group table is not square");
    std::vector<bool> seen(n, false);
    for (int v : row) {
      if (v < 0 || v >= n || seen[v]) throw StructuralError("group table row is not a permutation");
      seen[v] = true;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::vector<bool> seen(n, false);
    for (int r = 0; r < n; ++r) {
      if (seen[table_[r][c]]) throw StructuralError("group table column is not a permutation");
      seen[table_[r][c]] = true;
    }
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = table_[e][a] == a && table_[a][e] == a;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw StructuralError("group table has no identity");
  inverse_.assign(n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (table_[a][b] == identity_) inverse_[a] = b;
    }
  }
  auto assoc = [&](int a, int b, int c) {
    if (table_[table_[a][b]][c] != table_[a][table_[b][c]]) {
      throw StructuralError("group table is not associative at (" + std::to_string(a) + "," +
                            std::to_string(b) + "," + std::to_string(c) + ")");
    }
  };
  if (n <= 64) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) assoc(a, b, c);
      }
    }
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (int k = 0; k < 200000; ++k) assoc(pick(rng), pick(rng), pick(rng));
  }
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a) {
    for (int b = a + 1; b < order(); ++b) {
      if (table_[a][b] != table_[b][a]) return false;
    }
  }
  return true;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw ArgumentError("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup(std::move(t), "Z" + std::to_string(n));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order(), nb = b.order();
  std::vector<std::vector<int>> t(na * nb, std::vector<int>(na * nb));
  for (int x = 0; x < na * nb; ++x) {
    for (int y = 0; y < na * nb; ++y) {
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
    }
  }
  return FiniteGroup(std::move(t), a.name() + "x" + b.name());
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& gens, std::string name) {
  if (gens.empty()) throw ArgumentError("need at least one generator");
  const std::size_t k = gens[0].size();
  std::vector<int> id(k);
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<int>, int> index;
  std::vector<std::vector<int>> elems{id};
  index[id] = 0;
  // composition (p*q)(x) = p(q(x))
  auto compose = [](const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(q.size());
    for (std::size_t x = 0; x < q.size(); ++x) r[x] = p[q[x]];
    return r;
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      if (g.size() != k) throw ArgumentError("generators act on different point sets");
      auto p = compose(elems[i], g);
      if (!index.count(p)) {
        index[p] = static_cast<int>(elems.size());
        elems.push_back(std::move(p));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  index.clear();
  for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  }
  return FiniteGroup(std::move(t), std::move(name));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1) throw ArgumentError("symmetric group degree must be positive");
  if (n == 1) return from_permutations({{0}}, "S1");
  std::vector<int> swap(n), cycle(n);
  std::iota(swap.begin(), swap.end(), 0);
  std::swap(swap[0], swap[1]);
  for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return from_permutations({swap, cycle}, "S" + std::to_string(n));
}

FiniteGroup FiniteGroup::alternating(int n) {
  if (n < 3) return from_permutations({std::vector<int>(std::max(n, 1))}, "A" + std::to_string(n));
  // 3-cycles (0 1 i) generate A_n
  std::vector<std::vector<int>> gens;
  for (int i = 2; i < n; ++i) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    p[0] = 1;
    p[1] = i;
    p[i] = 0;
    gens.push_back(p);
  }
  return from_permutations(gens, "A" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw ArgumentError("dihedral parameter must be positive");
  if (n <= 2) {
    // D1 = Z2, D2 = Z2 x Z2; the polygon action is not faithful there
    return n == 1 ? cyclic(2) : direct_product(cyclic(2), cyclic(2));
  }
  std::vector<int> rot(n), ref(n);
  for (int i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    ref[i] = (n - i) % n;
  }
  return from_permutations({rot, ref}, "D" + std::to_string(n));
}

FiniteGroup FiniteGroup::quaternion() {
  // left regular action of Q8 on {1,i,j,k,-1,-i,-j,-k}, indexed 0..7
  const std::vector<int> li{1, 4, 3, 6, 5, 0, 7, 2};
  const std::vector<int> lj{2, 7, 4, 1, 6, 3, 0, 5};
  return from_permutations({li, lj}, "Q8");
}

FiniteGroup FiniteGroup::semidirect(int m, int k, int r) {
  if (m < 1 || k < 1) throw ArgumentError("semidirect factors must be nonempty");
  std::vector<long> power(k + 1, 1);
  for (int b = 1; b <= k; ++b) power[b] = power[b - 1] * r % m;
  if (((power[k] % m) + m) % m != 1 % m) throw ArgumentError("r^k is not 1 mod m");
  const int n = m * k;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const int a = x % m, b = x / m, c = y % m, d = y / m;
      const long ac = ((a + power[b] * c) % m + m) % m;
      t[x][y] = static_cast<int>(ac) + m * ((b + d) % k);
    }
  }
  return FiniteGroup(std::move(t), "Z" + std::to_string(m) + ":" + std::to_string(r) + "Z" + std::to_string(k));
}

FiniteGroup FiniteGroup::dicyclic(int n) {
  if (n < 1) throw ArgumentError("dicyclic parameter must be positive");
  // a^k x^j has index k + 2n j
  const int m = 2 * n, order = 4 * n;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  for (int x = 0; x < order; ++x) {
    for (int y = 0; y < order; ++y) {
      const int k = x % m, j = x / m, l = y % m, i = y / m;
      if (j == 0) {
        t[x][y] = (k + l) % m + m * i;
      } else if (i == 0) {
        t[x][y] = ((k - l) % m + m) % m + m;
      } else {
        t[x][y] = ((k - l + n) % m + m) % m;
      }
    }
  }
  return FiniteGroup(std::move(t), "Dic" + std::to_string(n));
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& members) {
  std::vector<bool> in(g.order(), false);
  for (int m : members) {
    if (m < 0 || m >= g.order()) return false;
    in[m] = true;
  }
  if (!in[g.identity()]) return false;
  for (int a : members) {
    for (int b : members) {
      if (!in[g.mul(a, b)]) return false;
    }
  }
  return true;
}

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& elements) {
  std::vector<bool> in(g.order(), false);
  std::vector<int> list{g.identity()};
  in[g.identity()] = true;
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (int x : elements) {
      const int y = g.mul(list[i], x);
      if (!in[y]) {
        in[y] = true;
        list.push_back(y);
      }
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> frontier{{g.identity()}};
  found.insert(frontier[0]);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& h : frontier) {
      std::vector<bool> in(g.order(), false);
      for (int x : h) in[x] = true;
      for (int x = 0; x < g.order(); ++x) {
        if (in[x]) continue;
        auto gens = h;
        gens.push_back(x);
        auto k = generated_subgroup(g, gens);
        if (found.insert(k).second) next.push_back(std::move(k));
      }
    }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

void SubgroupFamily::validate() const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!is_subgroup(group, members[i])) {
      throw ArgumentError("member " + std::to_string(i + 1) + " is not a subgroup");
    }
  }
}

}  // namespace netdual
