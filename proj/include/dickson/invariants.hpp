#ifndef DICKSON_INVARIANTS_HPP
#define DICKSON_INVARIANTS_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dickson/glgroup.hpp"
#include "dickson/matrix.hpp"
#include "dickson/superpoly.hpp"

namespace dickson {

// Constructors below live in H*(V) with n variables; a size parameter m <= n
// builds the object in y_1..y_m (x_1..x_m), and hat = true applies omega.

/// Moore determinant det[y_{vars[c]}^{p^{exps[r]}}], vars 1-based.
SuperPoly moore_det(int p, int n, const std::vector<int>& vars, const std::vector<int>& exps);
/// prod_{v in span(y_w : w in span_vars)} (y_t - v).
SuperPoly orbit_product(int p, int n, int t, const std::vector<int>& span_vars);

SuperPoly make_h(int p, int n, int i, bool hat = false);
/// h_i(j^): the orbit product of y_i over <y_1..y_{i-1}> without y_j; j < i.
SuperPoly make_h_omit(int p, int n, int i, int j);
/// h_i(j) = delta_ij h_i for j <= i.
SuperPoly make_h_swap(int p, int n, int i, int j);
/// L_{m,i} for 0 <= i <= m; L_{m,m} = L_m.
SuperPoly make_L(int p, int n, int m, int i, bool hat = false);
/// L_{m,i}(t^): the row p^i and the column y_t removed; 0 <= i <= m-1.
SuperPoly make_L_omit(int p, int n, int m, int i, int t);
/// d_{m,i} from the subset-sum formula over h_j^{p-1}; d_{m,m} = 1.
SuperPoly make_d(int p, int n, int m, int i, bool hat = false);
/// d_{m,i} = L_{m,i} / L_m.
SuperPoly make_d_by_division(int p, int n, int m, int i);
/// d_{m,i}(I) for I = (1, m-1): the subset sum with h_1 set to zero.
SuperPoly make_d_parab(int p, int n, int m, int i, bool hat = false);
/// M_{m,S}: x-rows distributed over row subsets with Moore minors; p odd.
SuperPoly make_M(int p, int n, int m, const std::vector<int>& S, bool hat = false);
/// M_{m,i}(t^) with the row t removed.
SuperPoly make_M_omit(int p, int n, int m, int i, int t);
SuperPoly omega_of(const SuperPoly& f);

struct GenSymbol {
  enum class Kind { X, Y, H, HOmit, HSwap, L, LOmit, D, DParab, M, MOmit };
  Kind kind = Kind::Y;
  bool hat = false;
  int a = 0;  // variable / h index, or the size m
  int b = 0;  // second index i (or j for h variants)
  int c = 0;  // omitted index t
  std::vector<int> S;

  auto operator<=>(const GenSymbol&) const = default;
  bool operator==(const GenSymbol&) const = default;

  static GenSymbol x(int i);
  static GenSymbol y(int i);
  static GenSymbol h(int i, bool hat = false);
  static GenSymbol h_omit(int i, int j);
  static GenSymbol h_swap(int i, int j);
  static GenSymbol L(int m, int i, bool hat = false);
  static GenSymbol L_top(int m, bool hat = false) { return L(m, m, hat); }
  static GenSymbol L_omit(int m, int i, int t);
  static GenSymbol d(int m, int i, bool hat = false);
  static GenSymbol d_parab(int m, int i, bool hat = false);
  static GenSymbol M(int m, std::vector<int> S, bool hat = false);
  static GenSymbol M_omit(int m, int i, int t);

  bool odd() const;
  /// Algebraic degree (|x| = |y| = 1).
  int degree(int p) const;
  /// Name in the CLI grammar, e.g. "d[2,0]", "h[1]^", "M[2;0,1]".
  std::string to_string() const;
  SuperPoly build(int p, int n) const;
};

/// Cached expansion keyed by (p, n, symbol); safe for concurrent callers.
const SuperPoly& expand_symbol(int p, int n, const GenSymbol& s);
void clear_expansion_cache();

using GenMono = std::vector<std::pair<GenSymbol, int>>;

/// Formal polynomial in named generators; odd generators anticommute.
class GenExpr {
 public:
  GenExpr(int p, int n);
  static GenExpr constant(int p, int n, long long c);
  static GenExpr symbol(int p, int n, const GenSymbol& s, int e = 1);
  static GenExpr monomial(int p, int n, GenMono m, Coeff c = 1);

  int p() const { return p_; }
  int n() const { return n_; }
  const std::map<GenMono, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Coeff coeff(const GenMono& m) const;

  GenExpr operator+(const GenExpr& o) const;
  GenExpr operator-(const GenExpr& o) const;
  GenExpr operator*(const GenExpr& o) const;
  GenExpr& operator+=(const GenExpr& o);
  GenExpr scale(Coeff c) const;
  GenExpr pow(unsigned e) const;
  bool operator==(const GenExpr& o) const { return p_ == o.p_ && n_ == o.n_ && terms_ == o.terms_; }
  bool operator!=(const GenExpr& o) const { return !(*this == o); }

  /// Degree of the largest term; -1 for zero.
  int degree() const;
  SuperPoly expand() const;
  std::string to_string() const;

 private:
  void require_same(const GenExpr& o) const;
  int p_, n_;
  std::map<GenMono, Coeff> terms_;
};

SuperPoly expand_mono(int p, int n, const GenMono& m);
int mono_degree(int p, const GenMono& m);

/// Coefficients found for one instance of the M-times-h relation.
struct RelationCoefficients {
  bool ok = false;
  std::vector<std::pair<GenExpr, Coeff>> terms;  // candidate element -> solved scalar
  SuperPoly residual{2, 1};
};

/// Solves M_{n-1,S} h_n = sum c * [M_{n,S}, M_{n,(S - s_i) + (n-1)} d_{n-1,s_i}].
RelationCoefficients solve_relation_M_h(int p, int n, const std::vector<int>& S);

/// Solves M_{l,S} h_{l+1}...h_n = M_{n,S} + sum_T M_{n,T} f_T with f_T in
/// H_n, searching f_T over H_n monomials of the degree forced by T.
RelationCoefficients solve_relation_M_hprod(int p, int n, int l, const std::vector<int>& S);

/// Writes f as a polynomial in the given homogeneous generators by linear
/// algebra over their monomials, degree by degree; nullopt when f is not in
/// the subalgebra they generate.
std::optional<GenExpr> express_in(const SuperPoly& f, const std::vector<GenExpr>& gens);

/// Generator families of restriction images and parabolic invariant rings.
enum class GeneratorFamily {
  Sylow,      // exterior Mui classes and h^ under U_n^t
  Symmetric,  // Dickson and M_{n,S} L_n^{p-2} under GL
  Wr1,        // h_1^{p-1}, d(I) and exterior classes, hatted, under P((1,n-1))^t
  Wr2,        // d_{n-1,i}, h_n^{p-1} and exterior classes, hatted, under P((n-1,1))^t
  KuhnMitchell,
};

struct GeneratorSet {
  std::vector<GenExpr> gens;
  std::vector<GLMatrix> group;
  std::string group_name;
};

/// I is used by KuhnMitchell only.
GeneratorSet restriction_image_generators(GeneratorFamily fam, int p, int n, const Composition& I = Composition());

/// Kuhn-Mitchell generators d_{nu_i, nu_i - k}, 1 <= k <= n_i, of F_p(I).
std::vector<GenSymbol> kuhn_mitchell_symbols(const Composition& I);

}  // namespace dickson

#endif
