#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "netdual/logscalar.hpp"

namespace netdual {

/// Subset of a ground set: bit i set <=> the element at position i is a member.
using Subset = std::uint32_t;

constexpr Subset singleton(int i) { return Subset{1} << i; }
constexpr bool contains(Subset s, int i) { return ((s >> i) & 1U) != 0; }
constexpr int cardinality(Subset s) { return std::popcount(s); }
constexpr Subset full_set(int n) { return n >= 32 ? ~Subset{0} : (Subset{1} << n) - 1; }

/// Splits on commas outside brackets; empty result if the brackets do not balance.
std::vector<std::string> split_top_level(const std::string& text);

/// Ordered list of distinct element labels. Position i in the list is bit i in a Subset.
class GroundSet {
 public:
  static constexpr int kMaxSize = 26;

  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);
  /// Ground set labelled "1", "2", ..., "n".
  static GroundSet numbered(int n);

  int size() const { return static_cast<int>(labels_.size()); }
  Subset full() const { return full_set(size()); }
  const std::string& label(int i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of(const std::string& label) const;
  int require_index(const std::string& label) const;

  /// Comma-joined labels of the members, in ground order.
  std::string format(Subset s) const;
  /// Inverse of format(); "" is the empty set.
  Subset parse(const std::string& text) const;
  Subset subset_of(std::span<const std::string> labels) const;

  friend bool operator==(const GroundSet&, const GroundSet&) = default;

 private:
  std::vector<std::string> labels_;
};

/// A set function g: 2^ground -> LogScalar with g(empty) = 0, stored densely by mask.
class SetFunction {
 public:
  SetFunction() = default;
  /// The zero function on `ground`.
  explicit SetFunction(GroundSet ground);
  SetFunction(GroundSet ground, std::vector<LogScalar> values);

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  Subset full() const { return ground_.full(); }

  const LogScalar& operator()(Subset s) const { return values_[s]; }
  const LogScalar& at(Subset s) const;
  void set(Subset s, LogScalar value);
  const std::vector<LogScalar>& values() const { return values_; }

  /// Restriction to the elements at `positions` (in that order) as a new ground set.
  SetFunction restricted(std::span<const int> positions) const;
  /// Restriction to the elements with the given labels.
  SetFunction restricted(std::span<const std::string> labels) const;

  SetFunction& operator+=(const SetFunction& other);
  SetFunction& operator*=(const Rational& c);
  friend SetFunction operator+(SetFunction a, const SetFunction& b) { return a += b; }
  friend SetFunction operator*(const Rational& c, SetFunction a) { return a *= c; }

  friend bool operator==(const SetFunction&, const SetFunction&) = default;

 private:
  GroundSet ground_;
  std::vector<LogScalar> values_;
};

/// Maps a subset mask over `positions` (bit k <=> positions[k]) to a mask over the
/// enclosing ground.
Subset embed(Subset local, std::span<const int> positions);

}  // namespace netdual
