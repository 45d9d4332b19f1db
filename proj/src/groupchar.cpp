#include "netdual/groupchar.hpp"

#include <map>

#include "netdual/errors.hpp"

namespace netdual {

void SubspaceFamily::validate() const {
  if (!GaloisField::is_supported(q)) throw ArgumentError("unsupported field size " + std::to_string(q));
  if (n < 0) throw ArgumentError("negative ambient dimension");
  for (std::size_t j = 0; j < members.size(); ++j) {
    const auto& m = members[j];
    if (m.rows() > 0 && (m.q() != q || m.cols() != n)) {
      throw ArgumentError("member " + std::to_string(j + 1) + " does not live in F_" +
                          std::to_string(q) + "^" + std::to_string(n));
    }
    if (m.rank() != m.rows()) throw ArgumentError("member " + std::to_string(j + 1) + " basis is rank-deficient");
  }
}

FqMatrix SubspaceFamily::intersection(Subset alpha) const {
  std::vector<FqMatrix> chosen;
  for (int j = 0; j < arity(); ++j) {
    if (contains(alpha, j)) chosen.push_back(members[j].rows() ? members[j] : FqMatrix(q, 0, n));
  }
  return intersect_subspaces(q, n, chosen);
}

SetFunction entropy_from_subgroups(const SubgroupFamily& fam) {
  fam.validate();
  const int n = fam.arity();
  const int order = fam.group.order();
  std::vector<LogScalar> values(std::size_t{1} << n);
  for (Subset alpha = 1; alpha <= full_set(n); ++alpha) {
    std::vector<int> count(order, 0);
    for (int i = 0; i < n; ++i) {
      if (!contains(alpha, i)) continue;
      for (int x : fam.members[i]) ++count[x];
    }
    std::uint64_t inter = 0;
    for (int x = 0; x < order; ++x) inter += count[x] == cardinality(alpha);
    values[alpha] = LogScalar::log(Rational(order, inter));
  }
  return SetFunction(GroundSet::numbered(n), std::move(values));
}

LogScalar subspace_entropy(const SubspaceFamily& fam, Subset alpha) {
  if (alpha == 0) return {};
  const int dim = fam.intersection(alpha).rank();
  return LogScalar::log(static_cast<std::uint64_t>(fam.q)) * Rational(fam.n - dim);
}

SetFunction entropy_from_subspaces(const SubspaceFamily& fam) {
  fam.validate();
  const int n = fam.arity();
  std::vector<LogScalar> values(std::size_t{1} << n);
  for (Subset alpha = 1; alpha <= full_set(n); ++alpha) values[alpha] = subspace_entropy(fam, alpha);
  return SetFunction(GroundSet::numbered(n), std::move(values));
}

SupportSet coset_support(const SubgroupFamily& fam) {
  fam.validate();
  const auto& g = fam.group;
  const int n = fam.arity();
  std::vector<std::vector<int>> tuples(g.order(), std::vector<int>(n));
  std::vector<std::vector<int>> alph(n);
  for (int i = 0; i < n; ++i) {
    // coset g G_i is keyed by its smallest element
    std::map<int, int> index;
    for (int x = 0; x < g.order(); ++x) {
      int key = g.order();
      for (int h : fam.members[i]) key = std::min(key, g.mul(x, h));
      auto [it, fresh] = index.emplace(key, static_cast<int>(index.size()));
      if (fresh) alph[i].push_back(it->second);
      tuples[x][i] = it->second;
    }
  }
  return SupportSet(std::move(alph), std::move(tuples));
}

SupportSet coset_support(const SubspaceFamily& fam) {
  fam.validate();
  const int n = fam.arity();
  const std::uint64_t total = ipow(fam.q, fam.n);
  if (total > (std::uint64_t{1} << 24)) throw ResourceError("subspace family too large to enumerate");
  std::vector<FqMatrix> keys;
  for (const auto& m : fam.members) keys.push_back(annihilator(m.rows() ? m : FqMatrix(fam.q, 0, fam.n), fam.n));
  std::vector<std::vector<int>> tuples(total, std::vector<int>(n));
  std::vector<std::vector<int>> alph(n);
  for (int i = 0; i < n; ++i) {
    std::map<std::vector<int>, int> index;
    for (std::uint64_t v = 0; v < total; ++v) {
      const auto x = index_to_vector(v, fam.q, fam.n);
      auto [it, fresh] = index.emplace(keys[i].apply(x), static_cast<int>(index.size()));
      if (fresh) alph[i].push_back(it->second);
      tuples[v][i] = it->second;
    }
  }
  return SupportSet(std::move(alph), std::move(tuples));
}

SubgroupFamily as_subgroup_family(const SubspaceFamily& fam) {
  fam.validate();
  if (fam.q != GaloisField::get(fam.q).characteristic()) {
    throw ArgumentError("additive group view needs a prime field");
  }
  const std::uint64_t total = ipow(fam.q, fam.n);
  if (total > 4096) throw ResourceError("additive group too large for a table");
  const auto& F = GaloisField::get(fam.q);
  std::vector<std::vector<int>> t(total, std::vector<int>(total));
  for (std::uint64_t a = 0; a < total; ++a) {
    const auto x = index_to_vector(a, fam.q, fam.n);
    for (std::uint64_t b = 0; b < total; ++b) {
      auto y = index_to_vector(b, fam.q, fam.n);
      for (int k = 0; k < fam.n; ++k) y[k] = F.add(x[k], y[k]);
      t[a][b] = static_cast<int>(vector_to_index(y, fam.q));
    }
  }
  SubgroupFamily out{FiniteGroup(std::move(t), "F" + std::to_string(fam.q) + "^" + std::to_string(fam.n)), {}};
  for (const auto& m : fam.members) {
    std::vector<int> members;
    const FqMatrix key = annihilator(m.rows() ? m : FqMatrix(fam.q, 0, fam.n), fam.n);
    for (std::uint64_t v = 0; v < total; ++v) {
      const auto y = key.apply(index_to_vector(v, fam.q, fam.n));
      bool zero = true;
      for (int c : y) zero = zero && c == 0;
      if (zero) members.push_back(static_cast<int>(v));
    }
    out.members.push_back(std::move(members));
  }
  return out;
}

SetFunction zy_function(const Rational& a) {
  if (sgn(a) <= 0) throw ArgumentError("zy parameter must be positive");
  SetFunction f(GroundSet::numbered(4));
  const LogScalar unit = LogScalar::log(std::uint64_t{2}) * a;
  for (Subset s = 1; s < 16; ++s) {
    int k = 0;
    switch (cardinality(s)) {
      case 1: k = 2; break;
      case 2: k = s == 0b1100 ? 4 : 3; break;
      default: k = 4; break;
    }
    f.set(s, unit * Rational(k));
  }
  return f;
}

SetFunction projective_plane_function() {
  SetFunction f(GroundSet::numbered(4));
  const LogScalar l13 = LogScalar::log(std::uint64_t{13});
  for (Subset s = 1; s < 16; ++s) {
    LogScalar v = l13;
    if (cardinality(s) == 2) {
      if (s == 0b0011) {
        v += LogScalar::log(std::uint64_t{6});
      } else if (s == 0b1100) {
        v += LogScalar::log(std::uint64_t{12});
      } else {
        v += LogScalar::log(std::uint64_t{4});
      }
    } else if (cardinality(s) >= 3) {
      v += LogScalar::log(std::uint64_t{12});
    }
    f.set(s, v);
  }
  return f;
}

SetFunction builtin_function(const std::string& name) {
  if (name == "zy") return zy_function(1);
  if (name.rfind("zy:", 0) == 0) return zy_function(parse_rational(name.substr(3)));
  if (name == "projective-plane" || name == "projective_plane") return projective_plane_function();
  throw ArgumentError("unknown builtin function '" + name + "'");
}

}  // namespace netdual
