#pragma once

#include <vector>

#include "netdual/setfunction.hpp"

namespace netdual {

/// Joint support of N random variables. Symbols are non-negative integers; each
/// coordinate has its own alphabet listing the symbols it may take.
struct SupportSet {
  std::vector<std::vector<int>> alphabets;
  /// Distinct N-tuples, kept sorted.
  std::vector<std::vector<int>> tuples;

  SupportSet() = default;
  /// Sorts and deduplicates tuples, then validates. Throws StructuralError.
  SupportSet(std::vector<std::vector<int>> alphabets, std::vector<std::vector<int>> tuples);
  /// Alphabets taken as the symbols that actually occur.
  static SupportSet from_tuples(std::vector<std::vector<int>> tuples);

  int arity() const { return static_cast<int>(alphabets.size()); }
  std::size_t size() const { return tuples.size(); }
  /// The sub-tuple on the coordinates in `alpha` (ascending).
  std::vector<int> project(const std::vector<int>& tuple, Subset alpha) const;
  /// Sorted distinct projections onto `alpha`.
  std::vector<std::vector<int>> projections(Subset alpha) const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;
};

struct QuasiUniformResult {
  bool quasi_uniform = false;
  /// f(alpha) = log |projection onto alpha|; set only when quasi_uniform.
  SetFunction entropy;
  /// Coordinate sets whose projected multiplicities are not all equal.
  std::vector<Subset> failing;
};

QuasiUniformResult quasi_uniform_check(const SupportSet& s);

}  // namespace netdual
