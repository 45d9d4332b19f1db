#pragma once

#include <string>
#include <vector>

namespace netdual {

/// A finite group given by its multiplication table over element indices 0..order-1.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Validates the table: Latin square, identity, and associativity (exhaustive up to
  /// order 64, sampled above). Throws StructuralError.
  explicit FiniteGroup(std::vector<std::vector<int>> table, std::string name = "");

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inverse(int a) const { return inverse_[a]; }
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::string& name() const { return name_; }
  bool is_abelian() const;

  static FiniteGroup cyclic(int n);
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
  static FiniteGroup symmetric(int n);
  static FiniteGroup alternating(int n);
  /// Dihedral group of order 2n.
  static FiniteGroup dihedral(int n);
  static FiniteGroup quaternion();
  /// Z_m x| Z_k where the generator of Z_k acts by multiplication by r (r^k = 1 mod m).
  /// Element (a, b) has index a + m b.
  static FiniteGroup semidirect(int m, int k, int r);
  /// Dicyclic group of order 4n: <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>.
  static FiniteGroup dicyclic(int n);
  /// The permutation group generated by `gens` (each a permutation of 0..k-1).
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                       std::string name = "");

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.table_ == b.table_; }

 private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  int identity_ = 0;
  std::string name_;
};

/// True iff `members` contains the identity and is closed under the group operation.
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& members);
/// Smallest subgroup containing `elements`, sorted.
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& elements);
/// Every subgroup of g, each sorted, in order of size then lexicographically.
std::vector<std::vector<int>> all_subgroups(const FiniteGroup& g);

/// A finite group with a list of designated subgroups G_1, ..., G_N.
struct SubgroupFamily {
  FiniteGroup group;
  std::vector<std::vector<int>> members;

  /// Throws ArgumentError if some member is not a subgroup.
  void validate() const;
  int arity() const { return static_cast<int>(members.size()); }
  friend bool operator==(const SubgroupFamily&, const SubgroupFamily&) = default;
};

}  // namespace netdual
