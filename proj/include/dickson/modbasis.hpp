#ifndef DICKSON_MODBASIS_HPP
#define DICKSON_MODBASIS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dickson/glgroup.hpp"
#include "dickson/invariants.hpp"

namespace dickson {

/// Free D_n-module families.
enum class BasisFamily { Hn, P1n1, Pn11, SylowImage, Wr1, Wr2 };

std::string family_name(BasisFamily f);
BasisFamily family_from_name(const std::string& name);

/// The group whose invariants (or restriction image) the family spans.
std::vector<GLMatrix> family_group(BasisFamily f, int p, int n);
/// Algebra generators of the family's ring, as used by rewrite.
std::vector<GenExpr> family_generators(BasisFamily f, int p, int n);

/// Full finite basis over D_n.
///   Hn:   h_1^{r_1}...h_n^{r_n}, 0 <= r_i < p^{n-i+1} - 1
///   P1n1: h_1^{(p-1)m}, 0 <= m <= p^{n-1} + ... + p
///   Pn11: prod d_{n-1,i}^{m_i} and d_{n-1,t-1}^p prod_{i>=t} d_{n-1,i}^{m_i}, m_i <= p-1
///   SylowImage: products of M^_{1,0}, M^_{i,i-1} L^_{i-1}^{(p-3)/2} times the hatted Hn basis
///   Wr1, Wr2: the hatted polynomial basis times 1 and each exterior generator
std::vector<GenExpr> enumerate_basis(BasisFamily f, int p, int n);

/// Module rank: [GL : P] for parabolic families, prod (p^m - 1) for Hn; the
/// restriction images multiply these by 2^n.
long long family_rank(BasisFamily f, int p, int n);

struct Decomposition {
  /// basis element -> coefficient in the d_{n,*} symbols
  std::vector<std::pair<GenExpr, GenExpr>> terms;
  bool used_oracle = false;
  std::size_t steps = 0;

  /// Coefficient of the given basis element (zero when absent).
  GenExpr coefficient(const GenExpr& basis_elem) const;
  SuperPoly expand() const;
  std::string to_string() const;
};

/// Rewriting by the relations of the family. Pn11 and P1n1 accept inputs
/// written in their generators (d_{n-1,i}, d_{n,*}; h_1^{p-1}, d_{n,i}(I),
/// d_{n,*}); anything else, and the remaining families, go to the oracle.
Decomposition rewrite(const GenExpr& f, BasisFamily fam, std::size_t step_cap = 1000000);

/// Linear-algebra decomposition of an invariant onto the basis.
Decomposition oracle_decompose(const SuperPoly& f, BasisFamily fam);

/// Coefficient of the basis element 1.
GenExpr xi(const GenExpr& f, BasisFamily fam);
GenExpr xi_of(const SuperPoly& f, BasisFamily fam);

/// All monomials in d_{n,0..n-1} of the given algebraic degree.
std::vector<GenExpr> dickson_monomials(int p, int n, int degree);

/// xi on the ideal generated by d_{n,0} in the Sylow restriction image,
/// split along the Mui classes: f = sum_J M_{n,J} L_n^{p-2} h_J + h_0 with
/// h_J in H_n gives xi(f) = xi_Hn(h_0) + sum_J M_{n,J} L_n^{p-2} xi_Hn(h_J).
/// nullopt when f has no such splitting.
std::optional<GenExpr> xi_exterior(const SuperPoly& f);

struct FreenessReport {
  bool ok = true;
  long long cardinality = 0;
  long long rank = 0;
  int degree_bound = 0;
  std::vector<std::string> failures;
};

/// Checks cardinality against the rank and, for each degree up to the bound,
/// that basis x D_n monomials are independent and span the invariants.
/// With bound < 0 the bound comes from DICKSON_DEGREE_BOUND (default 24).
FreenessReport verify_freeness(BasisFamily fam, int p, int n, int degree_bound = -1);

/// Dimension of the degree-d invariants of a group, as the common kernel of
/// g - 1 over the generators.
std::size_t invariant_dimension(int p, int n, int degree, const std::vector<GLMatrix>& gens, bool with_exterior);

}  // namespace dickson

#endif
