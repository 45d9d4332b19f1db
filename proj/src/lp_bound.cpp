#include "netdual/lp_bound.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "netdual/errors.hpp"
#include "netdual/inequalities.hpp"
#include "netdual/simplex.hpp"

namespace netdual {

std::vector<ElementalInequality> elemental_inequalities(int n) {
  std::vector<ElementalInequality> out;
  for (int i = 0; i < n; ++i) out.push_back({i, -1, 0});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const Subset rest = full_set(n) & ~(singleton(i) | singleton(j));
      // contexts: all subsets of the rest, in increasing mask order
      for (Subset k = 0;; k = (k - rest) & rest) {
        out.push_back({i, j, k});
        if (k == rest) break;
      }
    }
  }
  return out;
}

std::map<Subset, Rational> coefficients(const ElementalInequality& e, int n) {
  std::map<Subset, Rational> c;
  if (e.j < 0) {
    c[full_set(n)] += 1;
    c[full_set(n) & ~singleton(e.i)] -= 1;
  } else {
    const Subset k = e.context, a = singleton(e.i), b = singleton(e.j);
    c[a | k] += 1;
    c[b | k] += 1;
    c[a | b | k] -= 1;
    c[k] -= 1;
  }
  c.erase(0);
  std::erase_if(c, [](const auto& kv) { return sgn(kv.second) == 0; });
  return c;
}

std::string describe(const ElementalInequality& e, const GroundSet& ground) {
  if (e.j < 0) {
    return "H(" + ground.label(e.i) + "|" + ground.format(ground.full() & ~singleton(e.i)) + ") >= 0";
  }
  std::string out = "I(" + ground.label(e.i) + ";" + ground.label(e.j);
  if (e.context) out += "|" + ground.format(e.context);
  return out + ") >= 0";
}

namespace {

/// Rows of an LP over closed sets, deduplicated.
class RowBuilder {
 public:
  explicit RowBuilder(std::vector<int> var_of) : var_of_(std::move(var_of)) {}

  /// sum_B c_B g(B) <= bound, g(B) read through the closure map.
  void add(const std::map<Subset, Rational>& coeffs, const LogScalar& bound, const std::string& what) {
    std::map<int, Rational> row;
    for (const auto& [s, c] : coeffs) {
      const int v = var_of_.at(s);
      if (v >= 0) row[v] += c;
    }
    std::erase_if(row, [](const auto& kv) { return sgn(kv.second) == 0; });
    if (row.empty() && bound.sign() >= 0) return;
    std::vector<std::pair<int, Rational>> flat(row.begin(), row.end());
    if (bound.is_zero() && !flat.empty()) {
      const Rational scale = abs(flat.front().second);
      for (auto& [_, c] : flat) c /= scale;
    }
    Key key{flat, bound.terms()};
    if (!seen_.insert(key).second) return;
    rows_.push_back({std::move(flat), bound});
    labels_.push_back(what);
  }

  const std::vector<LinearConstraint>& rows() const { return rows_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  using Key = std::pair<std::vector<std::pair<int, Rational>>, LogScalar::Terms>;
  std::vector<int> var_of_;
  std::set<Key> seen_;
  std::vector<LinearConstraint> rows_;
  std::vector<std::string> labels_;
};

std::map<Subset, Rational> negated(std::map<Subset, Rational> c) {
  for (auto& [_, v] : c) v = -v;
  return c;
}

/// Calls visit(positions) for every injective map from k roles into n elements.
void for_each_assignment(int k, int n, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> pos;
  std::vector<bool> used(n, false);
  std::function<void()> rec = [&] {
    if (static_cast<int>(pos.size()) == k) {
      visit(pos);
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      used[i] = true;
      pos.push_back(i);
      rec();
      pos.pop_back();
      used[i] = false;
    }
  };
  rec();
}

}  // namespace

LpResult lp_feasible(const Network& net, const ConnectionRequirement& conn, const RateCapacityTuple& tuple,
                     const std::vector<InfoExpression>& extra, LpOptions options) {
  conn.validate(net);
  tuple.validate();
  std::vector<std::string> labels = conn.sessions;
  std::sort(labels.begin(), labels.end());
  for (const auto& e : net.edges()) labels.push_back(e.id);
  const int m = static_cast<int>(labels.size());
  if (m > options.ground_cap) {
    throw ResourceError("LP over " + std::to_string(m) + " variables exceeds the cap of " +
                        std::to_string(options.ground_cap) + "; check a witness certificate instead");
  }
  if (m == 0) return LpResult{true, std::nullopt, {}, 0, 0, 0};
  const GroundSet ground(labels);

  auto mask_of = [&](const std::vector<std::string>& vars) {
    return ground.subset_of(vars);
  };
  // outputs determined by their feeds: edges, and sessions decoded at receivers
  std::vector<std::pair<Subset, Subset>> rules;
  for (const auto& e : net.edges()) {
    rules.emplace_back(mask_of(node_feeds(net, conn, e.tail)), singleton(ground.require_index(e.id)));
  }
  for (const auto& [t, s] : conn.demands()) {
    rules.emplace_back(mask_of(node_feeds(net, conn, t)), singleton(ground.require_index(s)));
  }
  auto closure = [&](Subset b) {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& [premise, out] : rules) {
        if ((b & premise) == premise && !(b & out)) {
          b |= out;
          changed = true;
        }
      }
    }
    return b;
  };
  const Subset zero = closure(0);
  std::vector<int> var_of(std::size_t{1} << m, -1);
  std::map<Subset, int> closed;
  std::vector<Subset> closed_sets;
  for (Subset b = 0; b <= ground.full(); ++b) {
    const Subset c = closure(b);
    if (c == zero) continue;
    auto [it, fresh] = closed.emplace(c, static_cast<int>(closed_sets.size()));
    if (fresh) closed_sets.push_back(c);
    var_of[b] = it->second;
  }

  RowBuilder rb(var_of);
  for (const auto& e : elemental_inequalities(m)) rb.add(negated(coefficients(e, m)), LogScalar(), describe(e, ground));
  std::vector<std::string> sessions = conn.sessions;
  std::sort(sessions.begin(), sessions.end());
  if (sessions.size() > 1) {
    std::map<Subset, Rational> indep;
    for (const auto& s : sessions) indep[singleton(ground.require_index(s))] += 1;
    indep[mask_of(sessions)] -= 1;
    rb.add(indep, LogScalar(), "sessions independent");
  }
  for (const auto& s : sessions) {
    auto it = tuple.rates.find(s);
    if (it == tuple.rates.end()) continue;
    rb.add({{singleton(ground.require_index(s)), Rational(-1)}}, -it->second, "H(" + s + ") >= rate " + it->second.str());
  }
  for (const auto& e : net.edges()) {
    if (auto cap = tuple.capacity(e)) {
      rb.add({{singleton(ground.require_index(e.id)), Rational(1)}}, *cap, "H(" + e.id + ") <= capacity " + cap->str());
    }
  }
  for (const auto& expr : extra) {
    const int k = static_cast<int>(expr.variables.size());
    if (k > m) continue;
    for_each_assignment(k, m, [&](const std::vector<int>& at) {
      std::map<Subset, Rational> c;
      for (const auto& [s, coef] : expr.terms) {
        Subset t = 0;
        for (int r = 0; r < k; ++r) {
          if (contains(s, r)) t |= singleton(at[r]);
        }
        c[t] -= coef;
      }
      std::string where = "(";
      for (int r = 0; r < k; ++r) where += (r ? "," : "") + labels[at[r]];
      rb.add(c, LogScalar(), expr.str() + " at " + where + ")");
    });
  }

  const int n = static_cast<int>(closed_sets.size());
  const SimplexResult sr = find_feasible_point(n, rb.rows());
  LpResult out;
  out.feasible = sr.feasible;
  out.variables = n;
  out.constraints = rb.rows().size();
  out.pivots = sr.pivots;
  if (sr.feasible) {
    SetFunction g(ground);
    for (Subset b = 1; b <= ground.full(); ++b) {
      if (var_of[b] >= 0) g.set(b, sr.point[var_of[b]]);
    }
    if (!is_polymatroid(g)) throw std::logic_error("LP point is not a polymatroid");
    out.point = std::move(g);
  } else {
    for (std::size_t i = 0; i < sr.multipliers.size(); ++i) {
      if (sgn(sr.multipliers[i]) > 0) out.certificate.emplace_back(rb.labels()[i], sr.multipliers[i]);
    }
  }
  return out;
}

ImplicationResult shannon_implies(const InfoExpression& expr, int n, int cap) {
  if (n < 1) throw ArgumentError("need at least one variable");
  if (n > cap) throw ResourceError("shannon_implies on " + std::to_string(n) + " variables exceeds the cap of " + std::to_string(cap));
  const GroundSet ground = GroundSet::numbered(n);
  std::vector<int> at;
  for (const auto& v : expr.variables) {
    const auto i = ground.index_of(v);
    if (!i) throw ArgumentError("expression variable '" + v + "' is not one of 1.." + std::to_string(n));
    at.push_back(*i);
  }
  std::map<Subset, Rational> lhs;
  for (const auto& [s, c] : expr.terms) {
    Subset t = 0;
    for (std::size_t r = 0; r < at.size(); ++r) {
      if (contains(s, static_cast<int>(r))) t |= singleton(at[r]);
    }
    lhs[t] += c;
  }
  // variables g(B), B nonempty, indexed by mask - 1; free
  const int vars = static_cast<int>(ground.full());
  auto row_of = [](const std::map<Subset, Rational>& c, bool negate) {
    std::vector<std::pair<int, Rational>> r;
    for (const auto& [s, v] : c) {
      if (sgn(v) != 0) r.emplace_back(static_cast<int>(s) - 1, negate ? Rational(-v) : v);
    }
    return r;
  };
  const auto elemental = elemental_inequalities(n);
  std::vector<LinearConstraint> rows;
  for (const auto& e : elemental) rows.push_back({row_of(coefficients(e, n), true), LogScalar()});
  // the cone is homogeneous, so expr <= -log 2 is as good as expr < 0
  rows.push_back({row_of(lhs, false), -LogScalar::log(std::uint64_t{2})});
  const SimplexResult sr = find_feasible_point(vars, rows, std::vector<bool>(vars, true));

  ImplicationResult out;
  if (sr.feasible) {
    SetFunction g(ground);
    for (Subset b = 1; b <= ground.full(); ++b) g.set(b, sr.point[b - 1]);
    if (!is_polymatroid(g) || expr.evaluate(g, at).sign() >= 0) throw std::logic_error("bad counterexample");
    out.counterexample = std::move(g);
    return out;
  }
  out.implied = true;
  const Rational scale = sr.multipliers.back();
  std::map<Subset, Rational> check;
  for (std::size_t k = 0; k < elemental.size(); ++k) {
    if (sgn(sr.multipliers[k]) == 0) continue;
    const Rational c = sr.multipliers[k] / scale;
    out.combination.emplace_back(elemental[k], c);
    for (const auto& [s, v] : coefficients(elemental[k], n)) check[s] += c * v;
  }
  std::erase_if(check, [](const auto& kv) { return sgn(kv.second) == 0; });
  std::erase_if(lhs, [](const auto& kv) { return sgn(kv.second) == 0; });
  if (check != lhs) throw std::logic_error("implication certificate does not reproduce the expression");
  return out;
}

}  // namespace netdual
