#include "netdual/fq_matrix.hpp"

#include "netdual/errors.hpp"

namespace netdual {

FqMatrix::FqMatrix(int q, int rows, int cols)
    : field_(&GaloisField::get(q)), rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, 0) {
  if (rows < 0 || cols < 0) throw ArgumentError("negative matrix dimension");
}

FqMatrix::FqMatrix(int q, const std::vector<std::vector<int>>& rows, int cols)
    : FqMatrix(q, static_cast<int>(rows.size()),
               cols >= 0 ? cols : (rows.empty() ? 0 : static_cast<int>(rows[0].size()))) {
  for (int r = 0; r < rows_; ++r) {
    if (static_cast<int>(rows[r].size()) != cols_) throw StructuralError("ragged matrix rows");
    for (int c = 0; c < cols_; ++c) {
      const int v = rows[r][c];
      if (v < 0 || v >= q) {
        throw StructuralError("matrix entry " + std::to_string(v) + " outside F_" + std::to_string(q));
      }
      set(r, c, v);
    }
  }
}

FqMatrix FqMatrix::identity(int q, int n) {
  FqMatrix m(q, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

std::vector<int> FqMatrix::row(int r) const {
  return {data_.begin() + std::size_t(r) * cols_, data_.begin() + std::size_t(r + 1) * cols_};
}

std::vector<std::vector<int>> FqMatrix::to_rows() const {
  std::vector<std::vector<int>> out;
  for (int r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

FqMatrix FqMatrix::operator*(const FqMatrix& other) const {
  if (cols_ != other.rows_ || q() != other.q()) throw ArgumentError("matrix product shape mismatch");
  const auto& F = *field_;
  FqMatrix out(q(), rows_, other.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const int a = (*this)(i, k);
      if (a == 0) continue;
      for (int j = 0; j < other.cols_; ++j) {
        out.set(i, j, F.add(out(i, j), F.mul(a, other(k, j))));
      }
    }
  }
  return out;
}

FqMatrix FqMatrix::operator+(const FqMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || q() != other.q()) {
    throw ArgumentError("matrix sum shape mismatch");
  }
  FqMatrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = field_->add(data_[k], other.data_[k]);
  return out;
}

FqMatrix FqMatrix::operator-(const FqMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_ || q() != other.q()) {
    throw ArgumentError("matrix difference shape mismatch");
  }
  FqMatrix out = *this;
  for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] = field_->sub(data_[k], other.data_[k]);
  return out;
}

std::vector<int> FqMatrix::apply(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != cols_) throw ArgumentError("matrix-vector shape mismatch");
  const auto& F = *field_;
  std::vector<int> y(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    int acc = 0;
    for (int j = 0; j < cols_; ++j) acc = F.add(acc, F.mul((*this)(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

FqMatrix FqMatrix::transposed() const {
  FqMatrix out(q(), cols_, rows_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out.set(j, i, (*this)(i, j));
  }
  return out;
}

FqMatrix FqMatrix::select_rows(std::span<const int> which) const {
  FqMatrix out(q(), static_cast<int>(which.size()), cols_);
  for (std::size_t r = 0; r < which.size(); ++r) {
    for (int c = 0; c < cols_; ++c) out.set(static_cast<int>(r), c, (*this)(which[r], c));
  }
  return out;
}

FqMatrix FqMatrix::select_cols(std::span<const int> which) const {
  FqMatrix out(q(), rows_, static_cast<int>(which.size()));
  for (int r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < which.size(); ++c) out.set(r, static_cast<int>(c), (*this)(r, which[c]));
  }
  return out;
}

FqMatrix FqMatrix::rref(std::vector<int>* pivots) const {
  FqMatrix m = *this;
  const auto& F = *field_;
  std::vector<int> piv;
  int lead = 0;
  for (int c = 0; c < cols_ && lead < rows_; ++c) {
    int pr = -1;
    for (int r = lead; r < rows_; ++r) {
      if (m(r, c) != 0) {
        pr = r;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != lead) {
      for (int k = 0; k < cols_; ++k) std::swap(m.data_[pr * cols_ + k], m.data_[lead * cols_ + k]);
    }
    const int inv = F.inv(m(lead, c));
    for (int k = 0; k < cols_; ++k) m.set(lead, k, F.mul(inv, m(lead, k)));
    for (int r = 0; r < rows_; ++r) {
      if (r == lead || m(r, c) == 0) continue;
      const int factor = m(r, c);
      for (int k = 0; k < cols_; ++k) m.set(r, k, F.sub(m(r, k), F.mul(factor, m(lead, k))));
    }
    piv.push_back(c);
    ++lead;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

int FqMatrix::rank() const {
  std::vector<int> piv;
  rref(&piv);
  return static_cast<int>(piv.size());
}

FqMatrix FqMatrix::nullspace() const {
  std::vector<int> piv;
  const FqMatrix r = rref(&piv);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : piv) is_pivot[c] = true;
  const auto& F = *field_;
  std::vector<std::vector<int>> basis;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(cols_, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(r(static_cast<int>(i), free));
    basis.push_back(std::move(v));
  }
  return FqMatrix(q(), basis, cols_);
}

FqMatrix FqMatrix::row_basis() const {
  std::vector<int> piv;
  const FqMatrix r = rref(&piv);
  std::vector<int> keep;
  for (std::size_t i = 0; i < piv.size(); ++i) keep.push_back(static_cast<int>(i));
  return r.select_rows(keep);
}

std::optional<FqMatrix> FqMatrix::solve(const FqMatrix& rhs) const {
  if (rhs.rows_ != rows_) throw ArgumentError("solve: row count mismatch");
  std::vector<int> piv;
  const FqMatrix aug = hstack(*this, rhs).rref(&piv);
  FqMatrix x(q(), cols_, rhs.cols_);
  for (std::size_t i = 0; i < piv.size(); ++i) {
    if (piv[i] >= cols_) return std::nullopt;  // pivot in the augmented part: inconsistent
    for (int j = 0; j < rhs.cols_; ++j) x.set(piv[i], j, aug(static_cast<int>(i), cols_ + j));
  }
  return x;
}

std::vector<int> FqMatrix::independent_rows() const {
  std::vector<int> piv;
  transposed().rref(&piv);
  return piv;
}

FqMatrix vstack(const FqMatrix& top, const FqMatrix& bottom) {
  if (top.cols() != bottom.cols()) throw ArgumentError("vstack column mismatch");
  FqMatrix out(top.q() ? top.q() : bottom.q(), top.rows() + bottom.rows(), top.cols());
  for (int r = 0; r < top.rows(); ++r) {
    for (int c = 0; c < top.cols(); ++c) out.set(r, c, top(r, c));
  }
  for (int r = 0; r < bottom.rows(); ++r) {
    for (int c = 0; c < bottom.cols(); ++c) out.set(top.rows() + r, c, bottom(r, c));
  }
  return out;
}

FqMatrix hstack(const FqMatrix& left, const FqMatrix& right) {
  if (left.rows() != right.rows()) throw ArgumentError("hstack row mismatch");
  FqMatrix out(left.q() ? left.q() : right.q(), left.rows(), left.cols() + right.cols());
  for (int r = 0; r < left.rows(); ++r) {
    for (int c = 0; c < left.cols(); ++c) out.set(r, c, left(r, c));
    for (int c = 0; c < right.cols(); ++c) out.set(r, left.cols() + c, right(r, c));
  }
  return out;
}

FqMatrix annihilator(const FqMatrix& basis, int n) {
  if (basis.rows() == 0) return FqMatrix::identity(basis.q(), n);
  return basis.nullspace();
}

FqMatrix intersect_subspaces(int q, int n, std::span<const FqMatrix> bases) {
  FqMatrix constraints(q, 0, n);
  for (const auto& b : bases) constraints = vstack(constraints, annihilator(b, n));
  if (constraints.rows() == 0) return FqMatrix::identity(q, n);
  return constraints.nullspace();
}

FqMatrix extend_basis(const FqMatrix& basis, int n) {
  return extend_basis_within(basis, FqMatrix::identity(basis.q(), n));
}

FqMatrix extend_basis_within(const FqMatrix& basis, const FqMatrix& ambient) {
  FqMatrix out = basis;
  int r = out.rank();
  const int target = ambient.rank();
  for (int k = 0; k < ambient.rows() && r < target; ++k) {
    const std::vector<int> idx{k};
    FqMatrix candidate = vstack(out, ambient.select_rows(idx));
    if (candidate.rank() > r) {
      out = std::move(candidate);
      ++r;
    }
  }
  return out;
}

std::vector<int> index_to_vector(std::uint64_t index, int q, int dim) {
  std::vector<int> x(dim);
  for (int k = 0; k < dim; ++k) {
    x[k] = static_cast<int>(index % q);
    index /= q;
  }
  return x;
}

std::uint64_t vector_to_index(std::span<const int> x, int q) {
  std::uint64_t index = 0;
  for (std::size_t k = x.size(); k-- > 0;) index = index * q + x[k];
  return index;
}

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace netdual
