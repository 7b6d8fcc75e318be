#ifndef DICKSON_SUPERPOLY_HPP
#define DICKSON_SUPERPOLY_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "dickson/field.hpp"

namespace dickson {

constexpr int kMaxVars = 8;

/// x_S * y^a: the exterior part is a bitmask (bit i-1 for x_i).
struct Monomial {
  std::uint32_t ext = 0;
  std::array<std::uint16_t, kMaxVars> y{};

  int ext_count() const;
  int ydeg() const;
  int degree() const { return ext_count() + ydeg(); }
  int topological_degree() const { return ext_count() + 2 * ydeg(); }
  /// Exterior indices in increasing order, 1-based.
  std::vector<int> ext_indices() const;

  bool operator==(const Monomial& o) const { return ext == o.ext && y == o.y; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
};

/// Degree-lexicographic order with y1 > ... > yn; ties broken on the sorted
/// exterior index lists, where a smaller leading index ranks higher.
bool mono_greater(const Monomial& a, const Monomial& b);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

/// Sign (+1, -1) of x_S * x_T, or 0 when S and T intersect.
int ext_product_sign(std::uint32_t s, std::uint32_t t);

using Term = std::pair<Monomial, Coeff>;

class GLMatrix;

/// Sparse element of E(x1..xn) (x) F_p[y1..yn], terms sorted by mono_greater
/// descending, no zero coefficients.
class SuperPoly {
 public:
  SuperPoly(int p, int n);

  static SuperPoly constant(int p, int n, long long c);
  static SuperPoly x(int p, int n, int i);
  static SuperPoly y(int p, int n, int i);
  static SuperPoly monomial(int p, int n, const Monomial& m, Coeff c = 1);
  /// Canonicalizes: merges duplicates, drops zeros, sorts.
  static SuperPoly from_terms(int p, int n, std::vector<Term> terms);

  int p() const { return p_; }
  int n() const { return n_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_pure() const;
  bool is_homogeneous() const;
  /// Largest algebraic degree of a term; -1 for zero.
  int degree() const;
  int topological_degree() const;
  const Term& leading() const;
  Coeff coeff(const Monomial& m) const;

  SuperPoly operator+(const SuperPoly& o) const;
  SuperPoly operator-(const SuperPoly& o) const;
  SuperPoly operator-() const;
  SuperPoly operator*(const SuperPoly& o) const;
  SuperPoly& operator+=(const SuperPoly& o);
  SuperPoly& operator-=(const SuperPoly& o);
  SuperPoly& operator*=(const SuperPoly& o);
  SuperPoly scale(Coeff c) const;
  SuperPoly pow(unsigned e) const;
  /// f^(p^e) for a purely polynomial f (exponents scale, coefficients fixed).
  SuperPoly frobenius(unsigned e = 1) const;
  /// Homogeneous component of the given algebraic degree.
  SuperPoly component(int degree) const;
  /// Re-embeds into a ring with n2 >= n variables.
  SuperPoly widen(int n2) const;

  bool operator==(const SuperPoly& o) const;
  bool operator!=(const SuperPoly& o) const { return !(*this == o); }

  /// Text form accepted by parse_superpoly; "0" for zero.
  std::string to_string() const;

 private:
  void require_same_ring(const SuperPoly& o) const;

  int p_;
  int n_;
  std::vector<Term> terms_;
};

/// Ring homomorphism x_k -> sum_i a_ik x_i, y_k -> sum_i a_ik y_i.
SuperPoly substitute(const SuperPoly& f, const GLMatrix& g);

/// Quotient q with q * g = f for purely polynomial f, g; throws
/// InexactDivision when g does not divide f.
SuperPoly exact_div(const SuperPoly& f, const SuperPoly& g);

/// Parses the x/y grammar: poly := term (('+'|'-') term)*,
/// term := coeff? ('*'? factor)*, factor := ('x'|'y') INDEX ('^' EXP)?
SuperPoly parse_superpoly(const std::string& text, int p, int n);

std::string to_json(const SuperPoly& f);
SuperPoly superpoly_from_json(const std::string& text);

}  // namespace dickson

#endif
