#include "netdual/logscalar.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include <mpfr.h>

#include "netdual/errors.hpp"

namespace netdual {

namespace {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  mpz_class z(std::to_string(p));
  return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

std::uint64_t to_u64(const mpz_class& z) {
  if (z > mpz_class(std::to_string(UINT64_MAX))) {
    throw ArgumentError("prime factor exceeds 64 bits: " + z.get_str());
  }
  return std::stoull(z.get_str());
}

// Trial division followed by a primality test on the cofactor. The integers that reach
// this point are alphabet sizes and support counts, so a large composite cofactor is
// not expected; it is rejected rather than mis-factored.
void factor_into(mpz_class n, const Rational& coeff, LogScalar::Terms& out) {
  if (n < 1) throw ArgumentError("logarithm of a non-positive integer");
  for (unsigned long p = 2; p < 1000000 && n > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_class(p) * p > n) break;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      out[p] += coeff;
    }
  }
  if (n > 1) {
    if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
      throw ArgumentError("cannot factor " + n.get_str() + " by trial division");
    }
    out[to_u64(n)] += coeff;
  }
}

void drop_zeros(LogScalar::Terms& terms) {
  for (auto it = terms.begin(); it != terms.end();) {
    if (sgn(it->second) == 0) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
}

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// Encloses sum coeff_i * log(p_i) in [lo, hi] with directed rounding and reports
// whether the enclosure excludes zero.
int interval_sign(const std::uint64_t* primes, const Rational* coeffs, std::size_t count,
                  mpfr_prec_t prec) {
  MpfrValue lo(prec), hi(prec), log_lo(prec), log_hi(prec), t(prec);
  mpfr_set_zero(lo.get(), 1);
  mpfr_set_zero(hi.get(), 1);
  for (std::size_t k = 0; k < count; ++k) {
    const mpz_class p(std::to_string(primes[k]));
    mpfr_set_z(t.get(), p.get_mpz_t(), MPFR_RNDN);  // exact for p < 2^prec
    mpfr_log(log_lo.get(), t.get(), MPFR_RNDD);
    mpfr_log(log_hi.get(), t.get(), MPFR_RNDU);
    const mpq_srcptr q = coeffs[k].get_mpq_t();
    if (sgn(coeffs[k]) > 0) {
      mpfr_mul_q(t.get(), log_lo.get(), q, MPFR_RNDD);
      mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul_q(t.get(), log_hi.get(), q, MPFR_RNDU);
      mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    } else {
      mpfr_mul_q(t.get(), log_hi.get(), q, MPFR_RNDD);
      mpfr_add(lo.get(), lo.get(), t.get(), MPFR_RNDD);
      mpfr_mul_q(t.get(), log_lo.get(), q, MPFR_RNDU);
      mpfr_add(hi.get(), hi.get(), t.get(), MPFR_RNDU);
    }
  }
  if (mpfr_sgn(lo.get()) > 0) return 1;
  if (mpfr_sgn(hi.get()) < 0) return -1;
  return 0;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw StructuralError("empty rational literal");
  const auto slash = text.find('/');
  auto valid_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) {
    throw StructuralError("malformed rational literal '" + text + "'");
  }
  mpz_class n(num[0] == '+' ? num.substr(1) : num);
  mpz_class d(den);
  if (d == 0) throw StructuralError("zero denominator in '" + text + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

LogScalar LogScalar::log(std::uint64_t n) { return log(mpz_class(std::to_string(n))); }

LogScalar LogScalar::log(const mpz_class& n) {
  LogScalar out;
  factor_into(n, Rational(1), out.terms_);
  drop_zeros(out.terms_);
  return out;
}

LogScalar LogScalar::log(const Rational& r) {
  if (sgn(r) <= 0) throw ArgumentError("logarithm of a non-positive rational");
  LogScalar out;
  factor_into(r.get_num(), Rational(1), out.terms_);
  factor_into(r.get_den(), Rational(-1), out.terms_);
  drop_zeros(out.terms_);
  return out;
}

LogScalar LogScalar::from_terms(const Terms& terms) {
  LogScalar out;
  for (const auto& [p, c] : terms) {
    if (!is_prime(p)) throw ArgumentError("log term key " + std::to_string(p) + " is not prime");
    Rational q = c;
    q.canonicalize();
    if (sgn(q) != 0) out.terms_.emplace(p, q);
  }
  return out;
}

void LogScalar::add_scaled(const LogScalar& other, const Rational& c_in) {
  Rational c = c_in;
  c.canonicalize();
  for (const auto& [p, q] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(p, q * c);
    if (!inserted) {
      it->second += q * c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
}

LogScalar& LogScalar::operator+=(const LogScalar& other) {
  add_scaled(other, Rational(1));
  return *this;
}

LogScalar& LogScalar::operator-=(const LogScalar& other) {
  add_scaled(other, Rational(-1));
  return *this;
}

LogScalar& LogScalar::operator*=(const Rational& c_in) {
  Rational c = c_in;  // GMP arithmetic expects canonical operands
  c.canonicalize();
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, q] : terms_) q *= c;
  return *this;
}

LogScalar LogScalar::operator-() const {
  LogScalar out = *this;
  for (auto& [p, q] : out.terms_) q = -q;
  return out;
}

int log_combination_sign(const std::uint64_t* primes, const Rational* coeffs, std::size_t count) {
  std::size_t nonzero = 0;
  int single = 0;
  bool doubles_ok = true;
  double approx = 0.0;
  double magnitude = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    const int s = sgn(coeffs[k]);
    if (s == 0) continue;
    ++nonzero;
    single = s;
    const double c = coeffs[k].get_d();
    if (!std::isfinite(c) || c == 0.0) doubles_ok = false;
    const double term = c * std::log(static_cast<double>(primes[k]));
    approx += term;
    magnitude += std::fabs(term);
  }
  if (nonzero == 0) return 0;
  if (nonzero == 1) return single;  // log p > 0 for every prime
  // Each term carries relative error below 2^-50 after conversion, log and product;
  // the sum adds at most one rounding per term. 1e-12 leaves a wide margin.
  if (doubles_ok && std::fabs(approx) > 1e-12 * magnitude) return approx > 0 ? 1 : -1;

  std::vector<std::uint64_t> ps;
  std::vector<Rational> qs;
  for (std::size_t k = 0; k < count; ++k) {
    if (sgn(coeffs[k]) != 0) {
      ps.push_back(primes[k]);
      qs.push_back(coeffs[k]);
    }
  }
  for (mpfr_prec_t prec = 128; prec <= (mpfr_prec_t{1} << 22); prec *= 2) {
    if (const int s = interval_sign(ps.data(), qs.data(), ps.size(), prec); s != 0) return s;
  }
  throw ResourceError("sign of log combination not resolved at 4M bits");
}

int LogScalar::sign() const {
  if (terms_.empty()) return 0;
  std::vector<std::uint64_t> ps;
  std::vector<Rational> qs;
  ps.reserve(terms_.size());
  qs.reserve(terms_.size());
  for (const auto& [p, q] : terms_) {
    ps.push_back(p);
    qs.push_back(q);
  }
  return log_combination_sign(ps.data(), qs.data(), ps.size());
}

double LogScalar::to_double() const {
  double v = 0.0;
  for (const auto& [p, q] : terms_) v += q.get_d() * std::log(static_cast<double>(p));
  return v;
}

std::string LogScalar::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, q] : terms_) {
    Rational a = abs(q);
    if (first) {
      if (sgn(q) < 0) os << "-";
    } else {
      os << (sgn(q) < 0 ? " - " : " + ");
    }
    first = false;
    if (a != 1) os << a.get_str() << "*";
    os << "log" << p;
  }
  return os.str();
}

std::strong_ordering operator<=>(const LogScalar& a, const LogScalar& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace netdual
