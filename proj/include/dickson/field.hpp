#ifndef DICKSON_FIELD_HPP
#define DICKSON_FIELD_HPP

#include <cstdint>

namespace dickson {

using Coeff = std::uint8_t;

constexpr int kMaxPrime = 13;

bool is_prime(int p);

/// Throws ArgumentError unless p is a prime in [2, kMaxPrime].
void require_supported_prime(int p);

/// Arithmetic on canonical residues 0..p-1.
class PrimeField {
 public:
  explicit PrimeField(int p);

  int p() const { return p_; }
  Coeff add(Coeff a, Coeff b) const {
    int s = a + b;
    return static_cast<Coeff>(s >= p_ ? s - p_ : s);
  }
  Coeff sub(Coeff a, Coeff b) const { return static_cast<Coeff>(a >= b ? a - b : a + p_ - b); }
  Coeff neg(Coeff a) const { return static_cast<Coeff>(a == 0 ? 0 : p_ - a); }
  Coeff mul(Coeff a, Coeff b) const { return static_cast<Coeff>((a * b) % p_); }
  Coeff inv(Coeff a) const;
  Coeff pow(Coeff a, std::uint64_t e) const;
  Coeff from_int(long long v) const;
  /// A generator of the multiplicative group.
  Coeff primitive_root() const;

 private:
  int p_;
};

/// C(m, k) mod p by Lucas' theorem.
Coeff binom_mod_p(std::uint64_t m, std::uint64_t k, int p);

}  // namespace dickson

#endif
