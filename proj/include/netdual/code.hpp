#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "netdual/fq_matrix.hpp"
#include "netdual/logscalar.hpp"

namespace netdual {

/// Symbols 0..size-1. A linear alphabet is F_q^dim with the symbol index of a vector
/// x being sum x_k q^k.
struct Alphabet {
  std::uint64_t size = 1;
  int q = 0;
  int dim = 0;

  static Alphabet symbols(std::uint64_t n);
  static Alphabet vector_space(int q, int dim);
  bool linear() const { return q > 0; }
  LogScalar log_size() const { return LogScalar::log(size); }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// A local encoding or decoding function. Either a lookup table over the row-major
/// product of the input alphabets (first input most significant), or an F_q matrix
/// acting on the concatenated input vectors.
class LocalMap {
 public:
  LocalMap() = default;
  static LocalMap table(std::vector<std::uint64_t> values);
  static LocalMap matrix(FqMatrix m);

  bool is_matrix() const { return is_matrix_; }
  const std::vector<std::uint64_t>& values() const { return table_; }
  const FqMatrix& mat() const { return matrix_; }

  /// Throws StructuralError if the map does not fit the given input/output alphabets.
  void check_shape(std::span<const Alphabet> inputs, const Alphabet& output, const std::string& where) const;
  std::uint64_t apply(std::span<const std::uint64_t> inputs, std::span<const Alphabet> in_alph,
                      const Alphabet& out) const;

  friend bool operator==(const LocalMap&, const LocalMap&) = default;

 private:
  bool is_matrix_ = false;
  std::vector<std::uint64_t> table_;
  FqMatrix matrix_;
};

/// Alphabets for every session and edge, one encoder per edge and one decoder per
/// (receiver node, demanded session). Inputs of a map at node u are node_feeds(u).
struct NetworkCode {
  std::map<std::string, Alphabet> alphabets;
  std::map<std::string, LocalMap> encoders;
  std::map<std::pair<std::string, std::string>, LocalMap> decoders;
  /// Free-form note per variable saying how its map was built.
  std::map<std::string, std::string> manifest;

  /// True iff every alphabet is F_q^d for a common q and every map is a matrix.
  bool is_linear() const;
  /// The common q of a linear code, 0 otherwise.
  int field_size() const;
  friend bool operator==(const NetworkCode&, const NetworkCode&) = default;
};

}  // namespace netdual
