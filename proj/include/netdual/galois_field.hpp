#pragma once

#include <cstdint>
#include <vector>

namespace netdual {

/// Finite field F_q for a prime power q <= 64. Elements are 0..q-1; for q = p^e the
/// element with base-p digits (c_0, ..., c_{e-1}) is the polynomial sum c_k x^k modulo
/// the Conway polynomial of degree e over F_p.
class GaloisField {
 public:
  /// Shared instance for q; throws ArgumentError if q is not a supported prime power.
  static const GaloisField& get(int q);
  static bool is_supported(int q);

  int q() const { return q_; }
  int characteristic() const { return p_; }
  int degree() const { return e_; }

  int add(int a, int b) const { return add_[a * q_ + b]; }
  int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }
  int neg(int a) const { return neg_[a]; }
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  /// Multiplicative inverse; a must be nonzero.
  int inv(int a) const { return inv_[a]; }

  /// Conway polynomial coefficients c_0..c_e (monic, c_e = 1); {0, 1} for prime fields.
  const std::vector<int>& modulus() const { return modulus_; }

 private:
  explicit GaloisField(int q);

  int q_ = 0, p_ = 0, e_ = 0;
  std::vector<int> modulus_;
  std::vector<std::uint8_t> add_, mul_, neg_, inv_;
};

}  // namespace netdual
