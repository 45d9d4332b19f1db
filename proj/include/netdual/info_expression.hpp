#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netdual/setfunction.hpp"

namespace netdual {

/// A linear information inequality sum_B c_B H(B) >= 0 over named variables.
/// The text grammar is documented in docs/expr.md.
struct InfoExpression {
  /// Variable names, numeric names first in numeric order, then the rest sorted.
  std::vector<std::string> variables;
  /// Coefficient of H(B), B a subset of `variables`; no zero coefficients.
  std::map<Subset, Rational> terms;

  /// Throws StructuralError with the column of the first problem.
  static InfoExpression parse(std::string_view text);
  /// Builds from H-coefficients over the given names (canonicalises the order and
  /// drops names that no term mentions).
  static InfoExpression from_terms(std::vector<std::string> names, const std::map<Subset, Rational>& terms);

  /// Canonical text, e.g. "H(1) + H(2) - H(1,2) >= 0"; parse(str()) == *this.
  std::string str() const;
  /// Value of the left-hand side on f, variable k read from ground element at[k].
  LogScalar evaluate(const SetFunction& f, std::span<const int> at) const;
  /// Same, with variables matched to ground labels by name.
  LogScalar evaluate(const SetFunction& f) const;

  friend bool operator==(const InfoExpression&, const InfoExpression&) = default;
};

/// Ingleton over roles 1..4: I(1;2|3) + I(1;2|4) + I(3;4) - I(1;2) >= 0.
InfoExpression ingleton_expression();
/// Zhang-Yeung over roles 1..4: I(1;2) + I(1;3,4) + 3I(3;4|1) + I(3;4|2) - 2I(3;4) >= 0.
InfoExpression zhang_yeung_expression();

/// Numeric-aware label order used for expression variables.
bool label_less(const std::string& a, const std::string& b);

}  // namespace netdual
