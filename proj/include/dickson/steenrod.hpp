#ifndef DICKSON_STEENROD_HPP
#define DICKSON_STEENROD_HPP

#include <string>
#include <vector>

#include "dickson/invariants.hpp"
#include "dickson/superpoly.hpp"

namespace dickson {

struct SteenrodOp {
  enum class Kind { P, Beta };
  Kind kind = Kind::P;
  int k = 0;

  static SteenrodOp P(int k) { return {Kind::P, k}; }
  static SteenrodOp beta() { return {Kind::Beta, 0}; }
  /// Parses "P^k", "P<k>" or "beta".
  static SteenrodOp parse(const std::string& text);
  std::string to_string() const;
};

/// P^k by instability on monomials and the Cartan formula; p odd.
SuperPoly apply_P(int k, const SuperPoly& f);
/// Bockstein: the derivation with beta(x_i) = y_i, beta(y_i) = 0.
SuperPoly apply_beta(const SuperPoly& f);
SuperPoly apply_op(const SteenrodOp& op, const SuperPoly& f);

/// Closed form of P^q d_{n,i}^{p^l} in Dickson symbols. With a_t the base-p
/// digits of q / p^l and a_{-1} = 0 the value is
///   (-1)^{a_{n-1}} d_{n,i} prod_t C(a_t + [t=i], a_{t-1}) d_{n,t}^{a_t - a_{t-1}},
/// raised to the p^l-th power; zero when p^l does not divide q.
GenExpr dickson_power_closed_form(int p, int n, int i, int l, int q);

/// Closed form of P^m h_n: -h_n P^{m - p^{n-2}} d_{n-1,n-2} for
/// p^{n-2} <= m < p^{n-1}, h_n^p for m = p^{n-1}, h_n for m = 0, else 0.
GenExpr h_power_closed_form(int p, int n, int m);

/// Closed form of P^m (M_{i,i-1} L_{i-1}^{(p-3)/2}) in an n-variable ring.
GenExpr mui_power_closed_form(int p, int n, int i, int m);
/// Closed form of beta P^m (M_{i,i-1} L_{i-1}^{(p-3)/2}).
GenExpr mui_bockstein_closed_form(int p, int n, int i, int m);

/// Outcome of comparing a closed form with brute-force application.
struct ActionCheck {
  bool ok = false;
  GenExpr expected{3, 1};
  SuperPoly actual{3, 1};
  std::string describe() const;
};

ActionCheck verify_dickson_action(int p, int n, int i, int l, int q);
ActionCheck verify_h_action(int p, int n, int m);
/// Checks both the reduced power and its Bockstein for M_{i,i-1} L_{i-1}^{(p-3)/2}.
ActionCheck verify_M_action(int p, int n, int i, int m, bool bockstein);

}  // namespace dickson

#endif
