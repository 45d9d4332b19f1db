#pragma once

#include <string>
#include <vector>

#include "netdual/fq_matrix.hpp"
#include "netdual/group.hpp"
#include "netdual/setfunction.hpp"
#include "netdual/support.hpp"

namespace netdual {

/// Subspaces V_1, ..., V_N of F_q^n, each given by a basis (rows).
struct SubspaceFamily {
  int q = 2;
  int n = 0;
  std::vector<FqMatrix> members;

  /// Throws ArgumentError on a rank-deficient basis or a shape mismatch.
  void validate() const;
  int arity() const { return static_cast<int>(members.size()); }
  /// Basis of the intersection of the members in alpha (the whole space for alpha = 0).
  FqMatrix intersection(Subset alpha) const;
  friend bool operator==(const SubspaceFamily&, const SubspaceFamily&) = default;
};

/// f(alpha) = log(|G| / |intersection of G_i, i in alpha|).
SetFunction entropy_from_subgroups(const SubgroupFamily& fam);
/// f(alpha) = (n - dim intersection of V_j, j in alpha) log q.
SetFunction entropy_from_subspaces(const SubspaceFamily& fam);
/// One value of entropy_from_subspaces without building the whole function.
LogScalar subspace_entropy(const SubspaceFamily& fam, Subset alpha);

/// Joint support of the left-coset indices (g G_1, ..., g G_N) over g in G. Coset
/// indices are assigned in first-encounter order scanning elements 0, 1, ...
SupportSet coset_support(const SubgroupFamily& fam);
/// Same for a subspace family: cosets v + V_j over v in F_q^n in index order.
SupportSet coset_support(const SubspaceFamily& fam);

/// F_q^n as an additive group (q prime), elements indexed as in index_to_vector, with
/// each subspace turned into its subgroup.
SubgroupFamily as_subgroup_family(const SubspaceFamily& fam);

/// Four-variable polymatroid violating the Zhang-Yeung inequality; values are
/// multiples of a log 2.
SetFunction zy_function(const Rational& a);
/// Four-variable function from the projective plane of order 3 violating Ingleton.
SetFunction projective_plane_function();
/// "zy", "zy:<a>" or "projective-plane" (also "projective_plane"). Throws ArgumentError.
SetFunction builtin_function(const std::string& name);

}  // namespace netdual
