#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "netdual/galois_field.hpp"

namespace netdual {

/// Dense matrix over F_q. A linear map F_q^n -> F_q^m is an m x n matrix acting on
/// column vectors; a subspace is given by a matrix whose rows are a basis.
class FqMatrix {
 public:
  FqMatrix() = default;
  FqMatrix(int q, int rows, int cols);
  FqMatrix(int q, const std::vector<std::vector<int>>& rows, int cols = -1);

  static FqMatrix identity(int q, int n);

  int q() const { return field_ ? field_->q() : 0; }
  const GaloisField& field() const { return *field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  int operator()(int r, int c) const { return data_[r * cols_ + c]; }
  void set(int r, int c, int v) { data_[r * cols_ + c] = v; }
  std::vector<int> row(int r) const;
  std::vector<std::vector<int>> to_rows() const;

  FqMatrix operator*(const FqMatrix& other) const;
  FqMatrix operator+(const FqMatrix& other) const;
  FqMatrix operator-(const FqMatrix& other) const;
  std::vector<int> apply(std::span<const int> x) const;
  FqMatrix transposed() const;
  FqMatrix select_rows(std::span<const int> which) const;
  FqMatrix select_cols(std::span<const int> which) const;

  /// Reduced row echelon form, pivot columns chosen left to right.
  FqMatrix rref(std::vector<int>* pivots = nullptr) const;
  int rank() const;
  /// Rows form a basis of {x : M x = 0}.
  FqMatrix nullspace() const;
  /// Rows form a basis of the row space (the nonzero rows of the rref).
  FqMatrix row_basis() const;
  /// Some X with M X = B, if one exists.
  std::optional<FqMatrix> solve(const FqMatrix& rhs) const;
  /// Indices of a maximal linearly independent set of rows, lowest index first.
  std::vector<int> independent_rows() const;

  friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
    return a.q() == b.q() && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  const GaloisField* field_ = nullptr;
  int rows_ = 0, cols_ = 0;
  std::vector<int> data_;
};

FqMatrix vstack(const FqMatrix& top, const FqMatrix& bottom);
FqMatrix hstack(const FqMatrix& left, const FqMatrix& right);

/// Basis of the intersection of the subspaces spanned by the rows of each basis.
FqMatrix intersect_subspaces(int q, int n, std::span<const FqMatrix> bases);
/// Rows of `basis` followed by standard basis vectors e_0, e_1, ... that increase the
/// rank, until the rows span `ambient` (a basis matrix of a superspace, or all of F_q^n
/// when empty).
FqMatrix extend_basis(const FqMatrix& basis, int n);
FqMatrix extend_basis_within(const FqMatrix& basis, const FqMatrix& ambient);
/// A matrix whose kernel is exactly the span of `basis` (rows span the annihilator).
FqMatrix annihilator(const FqMatrix& basis, int n);

/// Little-endian base-q digits of a symbol index: index = sum x_k q^k.
std::vector<int> index_to_vector(std::uint64_t index, int q, int dim);
std::uint64_t vector_to_index(std::span<const int> x, int q);
std::uint64_t ipow(std::uint64_t base, int exp);

}  // namespace netdual
