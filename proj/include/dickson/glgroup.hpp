#ifndef DICKSON_GLGROUP_HPP
#define DICKSON_GLGROUP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dickson/matrix.hpp"
#include "dickson/superpoly.hpp"

namespace dickson {

/// Ordered composition (n_l, ..., n_1) of n. The flag attached to it is
/// V^i = <y_1, ..., y_{nu_i}> with nu_i = n_1 + ... + n_i, so n_1 is the
/// top-left block of P(I).
struct Composition {
  std::vector<int> parts;

  Composition() = default;
  explicit Composition(std::vector<int> p);

  int n() const;
  int length() const { return static_cast<int>(parts.size()); }
  /// n_i, 1-based from the right end.
  int block(int i) const { return parts[parts.size() - static_cast<std::size_t>(i)]; }
  /// nu_0 = 0, ..., nu_l = n.
  std::vector<int> nu() const;
  /// True when every block of this composition is a union of blocks of o.
  bool refines_to(const Composition& o) const;
  std::string to_string() const;
  std::string to_json() const;
  static Composition from_json(const std::string& text);
};

/// Generators of the flag stabilizer P(I), or of its transpose.
std::vector<GLMatrix> parabolic_generators(int p, const Composition& I, bool transposed = false);
bool in_parabolic(const Composition& I, const GLMatrix& g, bool transposed = false);
/// Order of P(I) as a 64-bit count.
std::uint64_t parabolic_order(int p, const Composition& I);
std::uint64_t gl_order(int p, int n);

std::vector<GLMatrix> gl_generators(int p, int n);
/// I + E_ij for i < j; generates the upper unitriangular group.
std::vector<GLMatrix> unipotent_generators(int p, int n, bool transposed = false);
bool is_unipotent_upper(const GLMatrix& g);

/// Coefficients c_0..c_{n-1} of the monic primitive polynomial
/// x^n + c_{n-1}x^{n-1} + ... + c_0 minimizing sum c_i p^i.
std::vector<Coeff> find_primitive_poly(int p, int n);
bool is_primitive_poly(int p, const std::vector<Coeff>& c);
/// Subdiagonal 1's, last column -c_0..-c_{n-1}.
GLMatrix companion_matrix(int p, const std::vector<Coeff>& c);
/// Evaluates the monic polynomial with low coefficients c at the matrix a.
std::vector<Coeff> eval_poly_at_matrix(const std::vector<Coeff>& c, const GLMatrix& a);

/// Subgroups with explicit coset families.
///  P1n1: stabilizer of the line <y_1>, invariant ring F_p[h_1^{p-1}, d_{n,i}(I)].
///  Pn11: stabilizer of the hyperplane <y_1..y_{n-1}>, ring F_p[d_{n-1,i}, h_n^{p-1}].
///  Un:   upper unitriangular matrices, ring H_n.
enum class CosetTag { P1n1, Pn11, Un };

std::string tag_name(CosetTag t);
CosetTag tag_from_name(const std::string& s);

bool in_subgroup(CosetTag tag, const GLMatrix& g, bool transposed = false);
std::vector<GLMatrix> subgroup_generators(int p, int n, CosetTag tag, bool transposed = false);
/// Composition of the parabolic matching a tag (Un maps to (1,...,1)).
Composition tag_composition(int n, CosetTag tag);
std::uint64_t subgroup_index(int p, int n, CosetTag tag);

struct CosetFamily {
  CosetTag tag;
  int p = 0;
  int n = 0;
  bool transposed = false;
  std::vector<Coeff> prim;
  std::vector<GLMatrix> reps;
};

/// Left coset representatives of GL(n, F_p) over the tagged subgroup, built
/// from powers of companion matrices; the transposed family uses inverse
/// transposes. Throws ConsistencyError when two reps share a coset.
CosetFamily coset_reps(int p, int n, CosetTag tag, bool transposed = false,
                       std::optional<std::vector<Coeff>> prim = std::nullopt);

/// Canonical label of the left coset g*H.
std::vector<Coeff> coset_key(CosetTag tag, const GLMatrix& g, bool transposed = false);

/// True when every rep pair lies in distinct left cosets.
bool distinct_left_cosets(const CosetFamily& fam);

/// Scales g so the first nonzero entry of its first column is 1.
GLMatrix normalize_scalar(const GLMatrix& g);

bool is_invariant(const SuperPoly& f, const std::vector<GLMatrix>& gens);

/// Closure of the generators; throws ArgumentError beyond limit elements.
std::vector<GLMatrix> enumerate_group(const std::vector<GLMatrix>& gens, std::size_t limit = 200000);

}  // namespace dickson

#endif
