#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netdual/info_expression.hpp"
#include "netdual/network.hpp"

namespace netdual {

/// I(i;j|context) >= 0, or H(N) - H(N - i) >= 0 when j < 0.
struct ElementalInequality {
  int i = 0;
  int j = -1;
  Subset context = 0;
  friend bool operator==(const ElementalInequality&, const ElementalInequality&) = default;
};

/// In the order used by check_polymatroid: the n monotonicity terms, then pairs i < j
/// with contexts in increasing mask order.
std::vector<ElementalInequality> elemental_inequalities(int n);
/// H-coefficients of the left-hand side.
std::map<Subset, Rational> coefficients(const ElementalInequality& e, int n);
std::string describe(const ElementalInequality& e, const GroundSet& ground);

struct LpOptions {
  /// Largest |sessions| + |edges| accepted.
  int ground_cap = 10;
};

struct LpResult {
  bool feasible = false;
  /// When feasible: a polymatroid over sessions then edges meeting every constraint.
  std::optional<SetFunction> point;
  /// When infeasible: constraints with their positive Farkas multipliers. The
  /// multipliers certify infeasibility of the reduced system (see lp_feasible).
  std::vector<std::pair<std::string, Rational>> certificate;
  std::size_t variables = 0;
  std::size_t constraints = 0;
  std::size_t pivots = 0;
};

/// Whether some polymatroid g over the session and edge variables satisfies the
/// connection constraints for `tuple`: every edge and every decoded session is a
/// function of what feeds it, the sessions are independent, H(s) >= lambda_s and
/// H(e) <= omega_e on capped edges, plus every `extra` inequality under every
/// assignment of distinct variables to its roles.
///
/// The functional constraints force g(B) = g(cl B), cl being closure under "feeds
/// determine output", so only closed sets carry LP variables.
LpResult lp_feasible(const Network& net, const ConnectionRequirement& conn, const RateCapacityTuple& tuple,
                     const std::vector<InfoExpression>& extra = {}, LpOptions options = {});

struct ImplicationResult {
  bool implied = false;
  /// When implied: expr = sum of c_k times elemental inequality k, c_k > 0.
  std::vector<std::pair<ElementalInequality, Rational>> combination;
  /// Otherwise a polymatroid on n elements with expr < 0.
  std::optional<SetFunction> counterexample;
};

/// Whether expr >= 0 holds for every polymatroid on the elements 1..n.
ImplicationResult shannon_implies(const InfoExpression& expr, int n, int cap = 10);

}  // namespace netdual
