#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>

#include <gmpxx.h>

namespace netdual {

using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q" into a canonical rational. Throws StructuralError.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

/// An exact real number of the form sum_i q_i * log(p_i) over distinct primes p_i
/// with rational q_i. Logarithms are natural; the base only scales values.
///
/// The term map is kept canonical (prime keys, no zero coefficients), so equality of
/// values is equality of maps. Logs of distinct primes are linearly independent over
/// the rationals, which makes the sign decidable: zero iff the map is empty,
/// otherwise resolved by interval evaluation at increasing precision.
class LogScalar {
 public:
  using Terms = std::map<std::uint64_t, Rational>;

  LogScalar() = default;

  /// log(n) for an integer n >= 1.
  static LogScalar log(std::uint64_t n);
  static LogScalar log(const mpz_class& n);
  /// log(r) for a rational r > 0.
  static LogScalar log(const Rational& r);
  /// Builds from a term map; keys must be prime. Zero coefficients are dropped.
  static LogScalar from_terms(const Terms& terms);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// -1, 0 or +1.
  int sign() const;
  double to_double() const;
  std::string str() const;

  LogScalar& operator+=(const LogScalar& other);
  LogScalar& operator-=(const LogScalar& other);
  LogScalar& operator*=(const Rational& c);
  /// *this += c * other.
  void add_scaled(const LogScalar& other, const Rational& c);

  friend LogScalar operator+(LogScalar a, const LogScalar& b) { return a += b; }
  friend LogScalar operator-(LogScalar a, const LogScalar& b) { return a -= b; }
  friend LogScalar operator*(LogScalar a, const Rational& c) { return a *= c; }
  friend LogScalar operator*(const Rational& c, LogScalar a) { return a *= c; }
  LogScalar operator-() const;

  friend bool operator==(const LogScalar& a, const LogScalar& b) { return a.terms_ == b.terms_; }
  friend std::strong_ordering operator<=>(const LogScalar& a, const LogScalar& b);

 private:
  Terms terms_;
};

/// Sign of a rational combination of prime logarithms given as parallel arrays.
int log_combination_sign(const std::uint64_t* primes, const Rational* coeffs, std::size_t count);

}  // namespace netdual
