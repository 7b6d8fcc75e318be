#ifndef DICKSON_SUITE_HPP
#define DICKSON_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dickson/modbasis.hpp"
#include "dickson/transfer.hpp"

namespace dickson {

/// The three hyperplane relations at p = 2, n = 3, the five-term rewrite of
/// d_{2,0}^2 d_{2,1}^7 and its xi value d_{3,0}^2 d_{3,1}.
CheckReport check_worked_example();

/// Dickson invariants by subset sum against exact division, the one-variable
/// recursion, the p-th power correction of h_i, the row expansion of L_n and
/// (p odd) of M_{n,n-1}.
CheckReport check_dickson_identities(int p, int n);

/// p odd: M_{n,s}^2 = 0 and prod_{s in S} M_{n,s} = (-1)^{k(k-1)/2} M_{n,S} L_n^{k-1}.
CheckReport check_mui_relations(int p, int n);

/// p odd, n <= 3: Cartan formula on random pairs, the tabulated reduced
/// powers of d_{n,i}, the digit formula, the h_n scan up to p^{n-1} + p and
/// the reduced powers and Bocksteins of the exterior generators.
CheckReport check_steenrod(int p, int n, int pairs = 100, std::uint64_t seed = 1);

/// Basis size against [GL : P] computed from group orders.
CheckReport check_cardinality(BasisFamily fam, int p, int n);
/// verify_freeness as a report; degree_bound < 0 reads DICKSON_DEGREE_BOUND.
CheckReport check_freeness(BasisFamily fam, int p, int n, int degree_bound = -1);

/// Every restriction-image generator family against its assigned group:
/// parabolic generators under P(1,n-1)^t and P(n-1,1)^t, Kuhn-Mitchell
/// generators under P(I) for every composition I of n, and (p odd) the
/// exterior Sylow generators under U_n^t.
CheckReport check_invariance(int p, int n);

struct SuiteEntry {
  std::string tag;
  int p = 0, n = 0;
  CheckReport report;
  double seconds = 0;
};

/// scope is "fast", "full" or "all"; entries sorted by tag, then (p, n).
/// Throws ArgumentError for an unknown scope.
std::vector<SuiteEntry> run_verify_suite(const std::string& scope, std::uint64_t seed = 1, int samples = 50);

}  // namespace dickson

#endif
