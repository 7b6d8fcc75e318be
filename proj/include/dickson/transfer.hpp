#ifndef DICKSON_TRANSFER_HPP
#define DICKSON_TRANSFER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dickson/glgroup.hpp"
#include "dickson/invariants.hpp"
#include "dickson/superpoly.hpp"

namespace dickson {

/// Sum of substitute(f, g) over the coset representatives. f must be
/// invariant under the family's subgroup; the result is checked to be
/// GL-invariant (ConsistencyError otherwise).
SuperPoly transfer(const SuperPoly& f, const CosetFamily& fam);

/// Picks the plain or transposed subgroup by testing f against both;
/// nullopt when f is invariant under neither.
std::optional<bool> select_convention(const SuperPoly& f, CosetTag tag);

/// Transfer over the family coset_reps(p, n, tag, ...) with the convention
/// chosen by select_convention. Throws ArgumentError for non-invariant f.
SuperPoly transfer(const SuperPoly& f, CosetTag tag, std::optional<std::vector<Coeff>> prim = std::nullopt);

/// f in the Dickson and Mui generators d_{n,i}, M_{n,S} L_n^{p-2}, when it
/// is GL-invariant.
std::optional<GenExpr> as_gl_invariant(const SuperPoly& f);

struct CheckItem {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct CheckReport {
  std::vector<CheckItem> items;
  bool ok() const;
  void add(std::string name, bool ok, std::string detail = {});
  void merge(const CheckReport& o);
};

/// Transfer from the hyperplane stabilizer kills every non-unit basis
/// element and equals expand(xi(f)) on random f written in d_{n-1,*}, d_{n,n-1}.
CheckReport verify_hyperplane_transfer(int p, int n, int samples = 50, std::uint64_t seed = 1);

/// Transfer from the line stabilizer: tau(h_1^{(p-1)m}) = 0 for
/// 1 <= m <= A_1, and tau(h_1^{p^n-1}) checked against both (p-1) d_{n,0}
/// and (-1)^{n-1} d_{n,0}; the two agree only for n even or p = 2.
CheckReport verify_line_transfer(int p, int n);

/// M_{1,0} h_1^{p^2-1-p} over U_2, the value of its transfer.
SuperPoly mui_transfer_source(int p);
GenExpr mui_transfer_value(int p);

/// p odd. (a) at n = 2 the U_2 transfer of mui_transfer_source equals
/// M_{2,1} L_2^{p-2}; (b) the coset sum of d_{n,0} is [GL : U_n] d_{n,0};
/// (c) for random f in the U_n restriction image the coset sum of f d_{n,0}
/// divided by [GL : U_n] equals expand(xi_exterior(f d_{n,0})).
CheckReport verify_exterior_transfer(int p, int n, int samples = 20, std::uint64_t seed = 1);

/// Generators of the U_n restriction image in unhatted form:
/// M_{1,0}, M_{i,i-1} L_{i-1}^{(p-3)/2}, h_i.
std::vector<GenExpr> sylow_image_generators(int p, int n);

}  // namespace dickson

#endif
