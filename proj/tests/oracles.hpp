// Independent reference computations used by the unit and acceptance tests.
#pragma once

#include <mpfr.h>

#include <map>
#include <random>
#include <vector>

#include "netdual/inequalities.hpp"
#include "netdual/setfunction.hpp"

namespace oracle {

using netdual::LogScalar;
using netdual::Rational;
using netdual::SetFunction;
using netdual::Subset;

inline LogScalar log2_times(long k) { return LogScalar::log(std::uint64_t{2}) * Rational(k); }

/// Value of a LogScalar at `bits` of precision, rounded to nearest.
inline double high_precision(const LogScalar& x, int bits = 256) {
  mpfr_t acc, term, c;
  mpfr_inits2(bits, acc, term, c, (mpfr_ptr) nullptr);
  mpfr_set_zero(acc, 1);
  for (const auto& [p, q] : x.terms()) {
    mpfr_set_ui(term, static_cast<unsigned long>(p), MPFR_RNDN);
    mpfr_log(term, term, MPFR_RNDN);
    mpfr_set_q(c, q.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term, term, c, MPFR_RNDN);
    mpfr_add(acc, acc, term, MPFR_RNDN);
  }
  const double out = mpfr_get_d(acc, MPFR_RNDN);
  mpfr_clears(acc, term, c, (mpfr_ptr) nullptr);
  return out;
}

/// Polymatroid axioms checked over every pair of subsets, not just elemental ones.
inline bool full_axioms(const SetFunction& f) {
  const Subset all = f.full();
  if (!f(0).is_zero()) return false;
  for (Subset a = 0; a <= all; ++a) {
    for (Subset b = 0; b <= all; ++b) {
      if ((a & b) == a && f(a) > f(b)) return false;
      if (f(a) + f(b) < f(a | b) + f(a & b)) return false;
    }
  }
  return true;
}

inline long as_units(const SetFunction& f, Subset s) {
  // values are integer multiples of log 2
  if (f(s).is_zero()) return 0;
  return f(s).terms().at(2).get_num().get_si();
}

/// Random integer polymatroid (values in units of log 2): each subset value is drawn
/// between its elemental lower and upper bounds in order of cardinality; draws with
/// an empty interval are rejected, and survivors are re-checked against the full axioms.
inline SetFunction random_polymatroid(int n, int max_singleton, std::mt19937_64& rng) {
  const Subset all = netdual::full_set(n);
  while (true) {
    std::vector<long> v(all + 1, 0);
    std::vector<Subset> order;
    for (Subset s = 1; s <= all; ++s) order.push_back(s);
    std::stable_sort(order.begin(), order.end(),
                     [](Subset a, Subset b) { return netdual::cardinality(a) < netdual::cardinality(b); });
    bool ok = true;
    for (Subset s : order) {
      long lo = 0, hi = max_singleton * n;
      for (int i = 0; i < n; ++i) {
        if (!netdual::contains(s, i)) continue;
        const Subset si = s & ~netdual::singleton(i);
        lo = std::max(lo, v[si]);
        if (si == 0) hi = std::min<long>(hi, max_singleton);
        for (int j = i + 1; j < n; ++j) {
          if (!netdual::contains(s, j)) continue;
          const Subset sj = s & ~netdual::singleton(j);
          hi = std::min(hi, v[si] + v[sj] - v[si & sj]);
        }
      }
      if (lo > hi) {
        ok = false;
        break;
      }
      v[s] = std::uniform_int_distribution<long>(lo, hi)(rng);
    }
    if (!ok) continue;
    SetFunction f(netdual::GroundSet::numbered(n));
    for (Subset s = 1; s <= all; ++s) f.set(s, log2_times(v[s]));
    if (full_axioms(f)) return f;
  }
}

/// Breaks exactly one kind of elemental inequality of a polymatroid by moving one value.
inline SetFunction break_polymatroid(const SetFunction& f, std::mt19937_64& rng) {
  SetFunction g = f;
  const Subset all = f.full();
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0 || f.size() < 2) {
    // full set below one of its maximal subsets
    const int i = std::uniform_int_distribution<int>(0, f.size() - 1)(rng);
    g.set(all, f(all & ~netdual::singleton(i)) - log2_times(1));
  } else {
    // pair {i, j} made supermodular over the empty context
    const int i = 0, j = 1;
    g.set(netdual::singleton(i) | netdual::singleton(j),
          f(netdual::singleton(i)) + f(netdual::singleton(j)) + log2_times(1));
  }
  return g;
}

}  // namespace oracle
