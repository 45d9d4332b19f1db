#include "netdual/galois_field.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "netdual/errors.hpp"

namespace netdual {

namespace {

struct Conway {
  int p, e;
  std::vector<int> coeffs;  // c_0 .. c_e
};

// Conway polynomials for the non-prime fields up to order 64.
const std::vector<Conway>& conway_table() {
  static const std::vector<Conway> table = {
      {2, 2, {1, 1, 1}},           {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},     {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 1, 1, 0, 1}}, {3, 2, {2, 2, 1}},
      {3, 3, {1, 2, 0, 1}},        {5, 2, {2, 4, 1}},
      {7, 2, {3, 6, 1}},
  };
  return table;
}

bool is_small_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Decomposes q = p^e; returns false if q is not a prime power.
bool prime_power(int q, int& p, int& e) {
  if (q < 2) return false;
  for (p = 2; p <= q; ++p) {
    if (q % p == 0) break;
  }
  e = 0;
  int r = q;
  while (r % p == 0) {
    r /= p;
    ++e;
  }
  return r == 1 && is_small_prime(p);
}

}  // namespace

bool GaloisField::is_supported(int q) {
  int p = 0, e = 0;
  if (q > 64 || !prime_power(q, p, e)) return false;
  if (e == 1) return true;
  for (const auto& c : conway_table()) {
    if (c.p == p && c.e == e) return true;
  }
  return false;
}

const GaloisField& GaloisField::get(int q) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaloisField>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[q];
  if (!slot) {
    if (!is_supported(q)) {
      cache.erase(q);
      throw ArgumentError("unsupported field order " + std::to_string(q) +
                          " (need a prime power <= 64)");
    }
    slot.reset(new GaloisField(q));
  }
  return *slot;
}

GaloisField::GaloisField(int q) : q_(q) {
  prime_power(q, p_, e_);
  if (e_ == 1) {
    modulus_ = {0, 1};
  } else {
    for (const auto& c : conway_table()) {
      if (c.p == p_ && c.e == e_) modulus_ = c.coeffs;
    }
  }
  auto digits = [&](int a) {
    std::vector<int> d(e_);
    for (int k = 0; k < e_; ++k) {
      d[k] = a % p_;
      a /= p_;
    }
    return d;
  };
  auto pack = [&](const std::vector<int>& d) {
    int a = 0;
    for (int k = e_ - 1; k >= 0; --k) a = a * p_ + d[k];
    return a;
  };
  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.resize(q_);
  for (int a = 0; a < q_; ++a) {
    const auto da = digits(a);
    std::vector<int> dn(e_);
    for (int k = 0; k < e_; ++k) dn[k] = (p_ - da[k]) % p_;
    neg_[a] = static_cast<std::uint8_t>(pack(dn));
    for (int b = 0; b < q_; ++b) {
      const auto db = digits(b);
      std::vector<int> ds(e_);
      for (int k = 0; k < e_; ++k) ds[k] = (da[k] + db[k]) % p_;
      add_[a * q_ + b] = static_cast<std::uint8_t>(pack(ds));
      if (e_ == 1) {
        mul_[a * q_ + b] = static_cast<std::uint8_t>((a * b) % p_);
        continue;
      }
      // Schoolbook product, then reduction by the monic modulus from the top degree down.
      std::vector<int> prod(2 * e_ - 1, 0);
      for (int i = 0; i < e_; ++i) {
        for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      }
      for (int d = 2 * e_ - 2; d >= e_; --d) {
        const int c = prod[d];
        if (c == 0) continue;
        for (int k = 0; k <= e_; ++k) {
          prod[d - e_ + k] = ((prod[d - e_ + k] - c * modulus_[k]) % p_ + p_) % p_;
        }
      }
      prod.resize(e_);
      mul_[a * q_ + b] = static_cast<std::uint8_t>(pack(prod));
    }
  }
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b) {
      if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<std::uint8_t>(b);
    }
  }
}

}  // namespace netdual
