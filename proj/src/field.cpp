#include "dickson/field.hpp"

#include "dickson/errors.hpp"

namespace dickson {

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_supported_prime(int p) {
  if (!is_prime(p) || p > kMaxPrime)
    throw ArgumentError("unsupported prime " + std::to_string(p));
}

PrimeField::PrimeField(int p) : p_(p) { require_supported_prime(p); }

Coeff PrimeField::inv(Coeff a) const {
  if (a % p_ == 0) throw ArgumentError("zero has no inverse");
  return pow(a, static_cast<std::uint64_t>(p_ - 2));
}

Coeff PrimeField::pow(Coeff a, std::uint64_t e) const {
  int r = 1 % p_, b = a % p_;
  while (e) {
    if (e & 1) r = r * b % p_;
    b = b * b % p_;
    e >>= 1;
  }
  return static_cast<Coeff>(r);
}

Coeff PrimeField::from_int(long long v) const {
  long long r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Coeff>(r);
}

Coeff PrimeField::primitive_root() const {
  for (int g = 1; g < p_; ++g) {
    int order = 1, x = g;
    while (x != 1) {
      x = x * g % p_;
      ++order;
    }
    if (order == p_ - 1) return static_cast<Coeff>(g);
  }
  return 1;
}

Coeff binom_mod_p(std::uint64_t m, std::uint64_t k, int p) {
  require_supported_prime(p);
  int r = 1;
  while (k > 0 || m > 0) {
    auto mi = static_cast<int>(m % p), ki = static_cast<int>(k % p);
    if (ki > mi) return 0;
    // C(mi, ki) with mi < p
    int num = 1, den = 1;
    for (int j = 0; j < ki; ++j) {
      num = num * (mi - j) % p;
      den = den * (j + 1) % p;
    }
    int den_inv = 1;
    for (int e = 0; e < p - 2; ++e) den_inv = den_inv * den % p;
    r = r * num % p * den_inv % p;
    m /= p;
    k /= p;
  }
  return static_cast<Coeff>(r);
}

}  // namespace dickson
