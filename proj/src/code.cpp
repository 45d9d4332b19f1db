#include "netdual/code.hpp"

#include "netdual/errors.hpp"

namespace netdual {

Alphabet Alphabet::symbols(std::uint64_t n) {
  if (n == 0) throw StructuralError("alphabet must be nonempty");
  return Alphabet{n, 0, 0};
}

Alphabet Alphabet::vector_space(int q, int dim) {
  if (!GaloisField::is_supported(q)) throw ArgumentError("unsupported field size " + std::to_string(q));
  if (dim < 0 || dim > 40) throw ArgumentError("vector alphabet dimension out of range");
  const std::uint64_t size = ipow(q, dim);
  return Alphabet{size, q, dim};
}

LocalMap LocalMap::table(std::vector<std::uint64_t> values) {
  LocalMap m;
  m.table_ = std::move(values);
  return m;
}

LocalMap LocalMap::matrix(FqMatrix mat) {
  LocalMap m;
  m.is_matrix_ = true;
  m.matrix_ = std::move(mat);
  return m;
}

void LocalMap::check_shape(std::span<const Alphabet> inputs, const Alphabet& output,
                           const std::string& where) const {
  if (is_matrix_) {
    if (!output.linear()) throw StructuralError(where + ": matrix map into a non-linear alphabet");
    int cols = 0;
    for (const auto& a : inputs) {
      if (!a.linear() || a.q != output.q) {
        throw StructuralError(where + ": matrix map with an input that is not over F_" + std::to_string(output.q));
      }
      cols += a.dim;
    }
    if (matrix_.rows() != output.dim || matrix_.cols() != cols ||
        (matrix_.rows() > 0 && matrix_.cols() > 0 && matrix_.q() != output.q)) {
      throw StructuralError(where + ": matrix is " + std::to_string(matrix_.rows()) + "x" +
                            std::to_string(matrix_.cols()) + ", expected " + std::to_string(output.dim) + "x" +
                            std::to_string(cols));
    }
    return;
  }
  unsigned __int128 domain = 1;
  for (const auto& a : inputs) {
    domain *= a.size;
    if (domain > (unsigned __int128)(std::uint64_t{1} << 32)) {
      throw ResourceError(where + ": lookup table domain too large");
    }
  }
  if (table_.size() != static_cast<std::uint64_t>(domain)) {
    throw StructuralError(where + ": table has " + std::to_string(table_.size()) + " entries, expected " +
                          std::to_string(static_cast<std::uint64_t>(domain)));
  }
  for (auto v : table_) {
    if (v >= output.size) {
      throw StructuralError(where + ": table value " + std::to_string(v) + " outside output alphabet");
    }
  }
}

std::uint64_t LocalMap::apply(std::span<const std::uint64_t> inputs, std::span<const Alphabet> in_alph,
                              const Alphabet& out) const {
  if (!is_matrix_) {
    std::uint64_t idx = 0;
    for (std::size_t k = 0; k < inputs.size(); ++k) idx = idx * in_alph[k].size + inputs[k];
    return table_[idx];
  }
  if (out.dim == 0) return 0;
  std::vector<int> x;
  for (std::size_t k = 0; k < inputs.size(); ++k) {
    const auto part = index_to_vector(inputs[k], in_alph[k].q, in_alph[k].dim);
    x.insert(x.end(), part.begin(), part.end());
  }
  if (x.empty()) return 0;
  return vector_to_index(matrix_.apply(x), out.q);
}

bool NetworkCode::is_linear() const {
  const int q = field_size();
  if (q == 0) return false;
  for (const auto& [_, m] : encoders) {
    if (!m.is_matrix()) return false;
  }
  for (const auto& [_, m] : decoders) {
    if (!m.is_matrix()) return false;
  }
  return true;
}

int NetworkCode::field_size() const {
  int q = 0;
  for (const auto& [_, a] : alphabets) {
    if (!a.linear()) return 0;
    if (q == 0) q = a.q;
    if (a.q != q) return 0;
  }
  return q;
}

}  // namespace netdual
