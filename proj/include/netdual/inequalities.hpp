#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "netdual/setfunction.hpp"

namespace netdual {

enum class InequalityFamily { Monotonicity, Submodularity, Ingleton, ZhangYeung };

std::string to_string(InequalityFamily family);

/// One violated instance of an inequality family.
///
/// `arguments` depends on the family:
///  - Monotonicity:  {ground, ground \ {i}}
///  - Submodularity: {A+i, A+j, A+i+j, A}
///  - Ingleton, ZhangYeung: the four singletons assigned to roles 1..4
struct Violation {
  InequalityFamily family;
  std::vector<Subset> arguments;
  LogScalar slack;
};

struct ViolationReport {
  std::vector<Violation> instances;
  bool empty() const { return instances.empty(); }
};

/// One-line text such as "submodularity I(1;2|3) >= 0, slack -log(2)".
std::string describe(const Violation& v, const GroundSet& ground);

/// Re-evaluates the slack of an inequality instance on `f`.
LogScalar evaluate_slack(const SetFunction& f, InequalityFamily family,
                         std::span<const Subset> arguments);

/// Elemental Shannon inequalities: monotonicity of the full set and conditional
/// submodularity for each pair {i, j} over every context A. Together they imply
/// monotonicity and submodularity in general.
ViolationReport check_polymatroid(const SetFunction& f);
bool is_polymatroid(const SetFunction& f);

/// g(12)+g(13)+g(14)+g(23)+g(24) >= g(1)+g(2)+g(34)+g(123)+g(124), over every ordered
/// assignment of four distinct ground elements to the roles 1..4.
ViolationReport check_ingleton(const SetFunction& f);

/// 2I(3;4) <= I(1;2) + I(1;34) + 3I(3;4|1) + I(3;4|2), over every ordered assignment of
/// four distinct ground elements to the roles 1..4.
ViolationReport check_zhang_yeung(const SetFunction& f);

/// f(A u B) - f(B).
LogScalar conditional_entropy(const SetFunction& f, Subset a, Subset b);
/// f(X u A) == f(A).
bool is_function_of(const SetFunction& f, Subset x, Subset a);
/// f(union of parts) == sum of f(part). Parts must be pairwise disjoint.
bool is_independent(const SetFunction& f, std::span<const Subset> parts);
/// Mutual information I(A;B|C).
LogScalar mutual_information(const SetFunction& f, Subset a, Subset b, Subset c = 0);

/// f(A) + f(B) - f(A u B) - f(A n B).
LogScalar delta(const SetFunction& f, Subset a, Subset b);

/// Subsets A with f(A + x) > f(A) for every x outside A, in increasing mask order.
/// Requires a polymatroid.
std::vector<Subset> flats(const SetFunction& f);

/// Matus' sufficient condition for two pseudo-entropy functions to adhere.
/// The shared ground is the set of labels present in both functions; they must
/// coincide there. True iff delta_f(A,B) >= delta_f(L' n A, L' n B) for all flats A, B of f.
bool adhesion_compatible(const SetFunction& f, const SetFunction& fstar);

}  // namespace netdual
