#include "dickson/invariants.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

#include "dickson/errors.hpp"
#include "dickson/linalg.hpp"

namespace dickson {

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void require_size(int n, int m) {
  if (m < 1 || m > n) throw ArgumentError("size parameter out of range");
}

std::vector<int> range1(int m) {
  std::vector<int> v(static_cast<std::size_t>(m));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

std::vector<int> without(std::vector<int> v, int x) {
  v.erase(std::remove(v.begin(), v.end(), x), v.end());
  return v;
}

void require_subset(const std::vector<int>& S, int m) {
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (S[i] < 0 || S[i] >= m) throw ArgumentError("subset index out of range");
    if (i && S[i] <= S[i - 1]) throw ArgumentError("subset must be strictly increasing");
  }
}

// Mui-type determinant with |S| columns of x's over the given variables.
SuperPoly mui_det(int p, int n, const std::vector<int>& vars, const std::vector<int>& S) {
  if (p == 2) throw ArgumentError("exterior classes need an odd prime");
  int w = static_cast<int>(vars.size());
  int k = static_cast<int>(S.size());
  require_subset(S, w);
  std::vector<int> exps;
  for (int s = 0; s < w; ++s)
    if (!std::binary_search(S.begin(), S.end(), s)) exps.push_back(s);
  SuperPoly out(p, n);
  PrimeField F(p);
  // Row subsets of size k via bitmasks over positions.
  for (std::uint32_t mask = 0; mask < (1u << w); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    int possum = 0;
    Monomial xm;
    std::vector<int> rest;
    for (int r = 0; r < w; ++r) {
      if (mask >> r & 1) {
        possum += r + 1;
        xm.ext |= 1u << (vars[static_cast<std::size_t>(r)] - 1);
      } else {
        rest.push_back(vars[static_cast<std::size_t>(r)]);
      }
    }
    // x_R with R increasing is the canonical monomial when vars increase.
    bool increasing = std::is_sorted(vars.begin(), vars.end());
    if (!increasing) throw ArgumentError("variables must be increasing");
    int sign = (possum + k * (k + 1) / 2) % 2 ? -1 : 1;
    SuperPoly xr = SuperPoly::monomial(p, n, xm, sign > 0 ? 1 : F.neg(1));
    out += xr * moore_det(p, n, rest, exps);
  }
  return out;
}

}  // namespace

SuperPoly moore_det(int p, int n, const std::vector<int>& vars, const std::vector<int>& exps) {
  if (vars.size() != exps.size()) throw ArgumentError("Moore determinant must be square");
  std::size_t k = vars.size();
  if (k == 0) return SuperPoly::constant(p, n, 1);
  for (int v : vars)
    if (v < 1 || v > n) throw ArgumentError("variable index out of range");
  std::vector<int> pexp(k);
  for (std::size_t r = 0; r < k; ++r) pexp[r] = ipow(p, exps[r]);
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Term> terms;
  PrimeField F(p);
  do {
    int inv = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = i + 1; j < k; ++j)
        if (perm[i] > perm[j]) ++inv;
    Monomial m;
    for (std::size_t r = 0; r < k; ++r) {
      auto& e = m.y[static_cast<std::size_t>(vars[perm[r]] - 1)];
      if (e + pexp[r] > 65535) throw ArgumentError("exponent overflow");
      e = static_cast<std::uint16_t>(e + pexp[r]);
    }
    terms.emplace_back(m, inv % 2 ? F.neg(1) : 1);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return SuperPoly::from_terms(p, n, std::move(terms));
}

SuperPoly orbit_product(int p, int n, int t, const std::vector<int>& span_vars) {
  if (span_vars.empty()) return SuperPoly::y(p, n, t);
  std::vector<int> exps(span_vars.size());
  std::iota(exps.begin(), exps.end(), 0);
  SuperPoly base = moore_det(p, n, span_vars, exps);
  auto vars = span_vars;
  vars.push_back(t);
  exps.push_back(static_cast<int>(span_vars.size()));
  return exact_div(moore_det(p, n, vars, exps), base);
}

SuperPoly omega_of(const SuperPoly& f) { return substitute(f, GLMatrix::omega(f.p(), f.n())); }

SuperPoly make_h(int p, int n, int i, bool hat) {
  require_size(n, i);
  SuperPoly h = orbit_product(p, n, i, range1(i - 1));
  return hat ? omega_of(h) : h;
}

SuperPoly make_h_omit(int p, int n, int i, int j) {
  require_size(n, i);
  if (j < 1 || j >= i) throw ArgumentError("h_i(j^) needs 1 <= j < i");
  return orbit_product(p, n, i, without(range1(i - 1), j));
}

SuperPoly make_h_swap(int p, int n, int i, int j) {
  require_size(n, i);
  if (j < 1 || j > i) throw ArgumentError("h_i(j) needs 1 <= j <= i");
  return orbit_product(p, n, j, without(range1(i), j));
}

SuperPoly make_L(int p, int n, int m, int i, bool hat) {
  require_size(n, m);
  if (i < 0 || i > m) throw ArgumentError("L_{m,i} needs 0 <= i <= m");
  std::vector<int> exps;
  for (int s = 0; s <= m; ++s)
    if (s != i) exps.push_back(s);
  SuperPoly l = moore_det(p, n, range1(m), exps);
  return hat ? omega_of(l) : l;
}

SuperPoly make_L_omit(int p, int n, int m, int i, int t) {
  require_size(n, m);
  if (i < 0 || i > m - 1 || t < 1 || t > m) throw ArgumentError("L_{m,i}(t^) index out of range");
  std::vector<int> exps;
  for (int s = 0; s < m; ++s)
    if (s != i) exps.push_back(s);
  return moore_det(p, n, without(range1(m), t), exps);
}

namespace {

// F_{m,k}(u_1..u_m) = sum_{j_1<..<j_k} prod_s u_{j_s}^{p^{m-k+s-j_s}} with
// u_j = h_j^{p-1}; only j_1 >= first enters.
SuperPoly dickson_subset_sum(int p, int n, int m, int k, int first) {
  std::vector<SuperPoly> u;
  for (int j = 1; j <= m; ++j) u.push_back(make_h(p, n, j).pow(static_cast<unsigned>(p - 1)));
  SuperPoly out(p, n);
  std::vector<int> js(static_cast<std::size_t>(k));
  // Enumerate increasing k-tuples in [first, m].
  std::function<void(int, int)> rec = [&](int s, int lo) {
    if (s == k) {
      SuperPoly term = SuperPoly::constant(p, n, 1);
      for (int t = 0; t < k; ++t) {
        int j = js[static_cast<std::size_t>(t)];
        term *= u[static_cast<std::size_t>(j - 1)].frobenius(static_cast<unsigned>(m - k + (t + 1) - j));
      }
      out += term;
      return;
    }
    for (int j = lo; j <= m - (k - s - 1); ++j) {
      js[static_cast<std::size_t>(s)] = j;
      rec(s + 1, j + 1);
    }
  };
  rec(0, first);
  return out;
}

}  // namespace

SuperPoly make_d(int p, int n, int m, int i, bool hat) {
  require_size(n, m);
  if (i < 0 || i > m) throw ArgumentError("d_{m,i} needs 0 <= i <= m");
  SuperPoly d = i == m ? SuperPoly::constant(p, n, 1) : dickson_subset_sum(p, n, m, m - i, 1);
  return hat ? omega_of(d) : d;
}

SuperPoly make_d_by_division(int p, int n, int m, int i) {
  return exact_div(make_L(p, n, m, i), make_L(p, n, m, m));
}

SuperPoly make_d_parab(int p, int n, int m, int i, bool hat) {
  require_size(n, m);
  if (i < 0 || i > m) throw ArgumentError("d_{m,i}(I) needs 0 <= i <= m");
  SuperPoly d = i == m ? SuperPoly::constant(p, n, 1) : dickson_subset_sum(p, n, m, m - i, 2);
  return hat ? omega_of(d) : d;
}

SuperPoly make_M(int p, int n, int m, const std::vector<int>& S, bool hat) {
  require_size(n, m);
  SuperPoly f = mui_det(p, n, range1(m), S);
  return hat ? omega_of(f) : f;
}

SuperPoly make_M_omit(int p, int n, int m, int i, int t) {
  require_size(n, m);
  if (m < 2 || t < 1 || t > m || i < 0 || i > m - 2) throw ArgumentError("M_{m,i}(t^) index out of range");
  return mui_det(p, n, without(range1(m), t), {i});
}

// ---------------------------------------------------------------- symbols

GenSymbol GenSymbol::x(int i) { return {Kind::X, false, i, 0, 0, {}}; }
GenSymbol GenSymbol::y(int i) { return {Kind::Y, false, i, 0, 0, {}}; }
GenSymbol GenSymbol::h(int i, bool hat) { return {Kind::H, hat, i, 0, 0, {}}; }
GenSymbol GenSymbol::h_omit(int i, int j) { return {Kind::HOmit, false, i, j, 0, {}}; }
GenSymbol GenSymbol::h_swap(int i, int j) { return {Kind::HSwap, false, i, j, 0, {}}; }
GenSymbol GenSymbol::L(int m, int i, bool hat) { return {Kind::L, hat, m, i, 0, {}}; }
GenSymbol GenSymbol::L_omit(int m, int i, int t) { return {Kind::LOmit, false, m, i, t, {}}; }
GenSymbol GenSymbol::d(int m, int i, bool hat) { return {Kind::D, hat, m, i, 0, {}}; }
GenSymbol GenSymbol::d_parab(int m, int i, bool hat) { return {Kind::DParab, hat, m, i, 0, {}}; }
GenSymbol GenSymbol::M(int m, std::vector<int> S, bool hat) { return {Kind::M, hat, m, 0, 0, std::move(S)}; }
GenSymbol GenSymbol::M_omit(int m, int i, int t) { return {Kind::MOmit, false, m, i, t, {}}; }

bool GenSymbol::odd() const {
  switch (kind) {
    case Kind::X:
    case Kind::MOmit: return true;
    case Kind::M: return S.size() % 2 == 1;
    default: return false;
  }
}

int GenSymbol::degree(int p) const {
  auto geo = [&](int top, int skip) {
    int s = 0;
    for (int e = 0; e <= top; ++e)
      if (e != skip) s += ipow(p, e);
    return s;
  };
  switch (kind) {
    case Kind::X:
    case Kind::Y: return 1;
    case Kind::H: return ipow(p, a - 1);
    case Kind::HOmit: return ipow(p, a - 2);
    case Kind::HSwap: return ipow(p, a - 1);
    case Kind::L: return geo(a, b);
    case Kind::LOmit: return geo(a - 1, b);
    case Kind::D:
    case Kind::DParab: return ipow(p, a) - ipow(p, b);
    case Kind::M: {
      int s = static_cast<int>(S.size());
      for (int e = 0; e < a; ++e)
        if (!std::binary_search(S.begin(), S.end(), e)) s += ipow(p, e);
      return s;
    }
    case Kind::MOmit: return 1 + geo(a - 2, b);
  }
  return 0;
}

std::string GenSymbol::to_string() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::X: os << 'x' << a; break;
    case Kind::Y: os << 'y' << a; break;
    case Kind::H: os << "h[" << a << ']'; break;
    case Kind::HOmit: os << "homit[" << a << ',' << b << ']'; break;
    case Kind::HSwap: os << "hswap[" << a << ',' << b << ']'; break;
    case Kind::L: os << "L[" << a << ',' << b << ']'; break;
    case Kind::LOmit: os << "Lomit[" << a << ',' << b << ',' << c << ']'; break;
    case Kind::D: os << "d[" << a << ',' << b << ']'; break;
    case Kind::DParab: os << "d[" << a << ',' << b << ";I=1," << a - 1 << ']'; break;
    case Kind::M:
      os << (hat ? "Mhat[" : "M[") << a << ';';
      for (std::size_t i = 0; i < S.size(); ++i) os << (i ? "," : "") << S[i];
      os << ']';
      break;
    case Kind::MOmit: os << "Momit[" << a << ',' << b << ',' << c << ']'; break;
  }
  if (hat && kind != Kind::M) os << '^';
  return os.str();
}

SuperPoly GenSymbol::build(int p, int n) const {
  switch (kind) {
    case Kind::X: return SuperPoly::x(p, n, a);
    case Kind::Y: return SuperPoly::y(p, n, a);
    case Kind::H: return make_h(p, n, a, hat);
    case Kind::HOmit: return make_h_omit(p, n, a, b);
    case Kind::HSwap: return make_h_swap(p, n, a, b);
    case Kind::L: return make_L(p, n, a, b, hat);
    case Kind::LOmit: return make_L_omit(p, n, a, b, c);
    case Kind::D: return make_d(p, n, a, b, hat);
    case Kind::DParab: return make_d_parab(p, n, a, b, hat);
    case Kind::M: return make_M(p, n, a, S, hat);
    case Kind::MOmit: return make_M_omit(p, n, a, b, c);
  }
  throw ArgumentError("unknown symbol kind");
}

namespace {

struct CacheKey {
  int p, n;
  GenSymbol s;
  auto operator<=>(const CacheKey&) const = default;
  bool operator==(const CacheKey&) const = default;
};

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

std::map<CacheKey, SuperPoly>& cache() {
  static std::map<CacheKey, SuperPoly> c;
  return c;
}

}  // namespace

const SuperPoly& expand_symbol(int p, int n, const GenSymbol& s) {
  CacheKey key{p, n, s};
  {
    std::lock_guard<std::mutex> lock(cache_mutex());
    auto it = cache().find(key);
    if (it != cache().end()) return it->second;
  }
  SuperPoly value = s.build(p, n);
  std::lock_guard<std::mutex> lock(cache_mutex());
  return cache().emplace(key, std::move(value)).first->second;
}

void clear_expansion_cache() {
  std::lock_guard<std::mutex> lock(cache_mutex());
  cache().clear();
}

// ---------------------------------------------------------------- GenExpr

GenExpr::GenExpr(int p, int n) : p_(p), n_(n) { require_supported_prime(p); }

GenExpr GenExpr::constant(int p, int n, long long c) {
  GenExpr e(p, n);
  Coeff v = PrimeField(p).from_int(c);
  if (v) e.terms_[GenMono{}] = v;
  return e;
}

GenExpr GenExpr::symbol(int p, int n, const GenSymbol& s, int e) {
  return monomial(p, n, e == 0 ? GenMono{} : GenMono{{s, e}});
}

namespace {

// Product of two canonical monomials with its Koszul sign; 0 when an odd
// symbol repeats.
int mono_mul(const GenMono& a, const GenMono& b, GenMono& out) {
  int sign = 1;
  for (const auto& [u, eu] : a) {
    if (!u.odd()) continue;
    for (const auto& [v, ev] : b)
      if (v.odd()) {
        if (v == u) return 0;
        if (v < u) sign = -sign;
      }
  }
  std::map<GenSymbol, int> merged;
  for (const auto& [s, e] : a) merged[s] += e;
  for (const auto& [s, e] : b) merged[s] += e;
  out.assign(merged.begin(), merged.end());
  for (const auto& [s, e] : out)
    if (s.odd() && e > 1) return 0;
  return sign;
}

}  // namespace

GenExpr GenExpr::monomial(int p, int n, GenMono m, Coeff c) {
  GenExpr e(p, n);
  GenMono canon;
  int sign = 1;
  // Sort by multiplying one factor at a time.
  for (const auto& f : m) {
    if (f.second < 0) throw ArgumentError("negative exponent");
    if (f.second == 0) continue;
    GenMono next;
    int s = mono_mul(canon, GenMono{f}, next);
    if (s == 0) return e;
    sign *= s;
    canon = std::move(next);
  }
  Coeff v = static_cast<Coeff>(c % p);
  if (sign < 0) v = PrimeField(p).neg(v);
  if (v) e.terms_[canon] = v;
  return e;
}

Coeff GenExpr::coeff(const GenMono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

void GenExpr::require_same(const GenExpr& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw ArgumentError("generator expressions over different rings");
}

GenExpr& GenExpr::operator+=(const GenExpr& o) {
  require_same(o);
  PrimeField F(p_);
  for (const auto& [m, c] : o.terms_) {
    Coeff v = F.add(coeff(m), c);
    if (v)
      terms_[m] = v;
    else
      terms_.erase(m);
  }
  return *this;
}

GenExpr GenExpr::operator+(const GenExpr& o) const {
  GenExpr r = *this;
  r += o;
  return r;
}

GenExpr GenExpr::operator-(const GenExpr& o) const { return *this + o.scale(static_cast<Coeff>(p_ - 1)); }

GenExpr GenExpr::scale(Coeff c) const {
  GenExpr r(p_, n_);
  PrimeField F(p_);
  for (const auto& [m, v] : terms_) {
    Coeff w = F.mul(v, static_cast<Coeff>(c % p_));
    if (w) r.terms_[m] = w;
  }
  return r;
}

GenExpr GenExpr::operator*(const GenExpr& o) const {
  require_same(o);
  GenExpr r(p_, n_);
  PrimeField F(p_);
  for (const auto& [a, ca] : terms_)
    for (const auto& [b, cb] : o.terms_) {
      GenMono m;
      int s = mono_mul(a, b, m);
      if (!s) continue;
      Coeff v = F.mul(ca, cb);
      if (s < 0) v = F.neg(v);
      GenExpr t(p_, n_);
      t.terms_[m] = v;
      r += t;
    }
  return r;
}

GenExpr GenExpr::pow(unsigned e) const {
  GenExpr r = constant(p_, n_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

int mono_degree(int p, const GenMono& m) {
  int d = 0;
  for (const auto& [s, e] : m) d += s.degree(p) * e;
  return d;
}

int GenExpr::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(p_, m));
  return d;
}

SuperPoly expand_mono(int p, int n, const GenMono& m) {
  SuperPoly r = SuperPoly::constant(p, n, 1);
  for (const auto& [s, e] : m) r *= expand_symbol(p, n, s).pow(static_cast<unsigned>(e));
  return r;
}

SuperPoly GenExpr::expand() const {
  SuperPoly r(p_, n_);
  for (const auto& [m, c] : terms_) r += expand_mono(p_, n_, m).scale(c);
  return r;
}

std::string GenExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    bool need_star = false;
    if (c != 1 || m.empty()) {
      os << static_cast<int>(c);
      need_star = true;
    }
    for (const auto& [s, e] : m) {
      if (need_star) os << '*';
      os << s.to_string();
      if (e != 1) os << '^' << e;
      need_star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- relations

namespace {

GenExpr sym(int p, int n, const GenSymbol& s, int e = 1) { return GenExpr::symbol(p, n, s, e); }

RelationCoefficients solve_over(const SuperPoly& lhs, const std::vector<GenExpr>& cands) {
  RelationCoefficients out;
  std::vector<SuperPoly> polys;
  for (const auto& c : cands) polys.push_back(c.expand());
  auto sol = solve_combination(lhs, polys);
  if (!sol) {
    out.residual = lhs;
    return out;
  }
  SuperPoly rhs(lhs.p(), lhs.n());
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (!(*sol)[i]) continue;
    out.terms.emplace_back(cands[i], (*sol)[i]);
    rhs += polys[i].scale((*sol)[i]);
  }
  out.residual = lhs - rhs;
  out.ok = out.residual.is_zero();
  return out;
}

// Exponent vectors r with sum r_i p^{i-1} = deg.
void h_monomials(int p, int n, int deg, int i, std::vector<int>& r, std::vector<std::vector<int>>& out) {
  if (i == 0) {
    if (deg == 0) out.push_back(r);
    return;
  }
  int w = ipow(p, i - 1);
  for (int e = 0; e * w <= deg; ++e) {
    r[static_cast<std::size_t>(i - 1)] = e;
    h_monomials(p, n, deg - e * w, i - 1, r, out);
  }
  r[static_cast<std::size_t>(i - 1)] = 0;
}

}  // namespace

RelationCoefficients solve_relation_M_h(int p, int n, const std::vector<int>& S) {
  if (n < 2) throw ArgumentError("relation needs n >= 2");
  require_subset(S, n - 1);
  SuperPoly lhs = make_M(p, n, n - 1, S) * make_h(p, n, n);
  std::vector<GenExpr> cands{sym(p, n, GenSymbol::M(n, S))};
  for (std::size_t i = 0; i < S.size(); ++i) {
    std::vector<int> T = S;
    T.erase(T.begin() + static_cast<long>(i));
    T.push_back(n - 1);
    cands.push_back(sym(p, n, GenSymbol::M(n, T)) * sym(p, n, GenSymbol::d(n - 1, S[i])));
  }
  return solve_over(lhs, cands);
}

RelationCoefficients solve_relation_M_hprod(int p, int n, int l, const std::vector<int>& S) {
  if (l < 1 || l > n) throw ArgumentError("relation needs 1 <= l <= n");
  require_subset(S, l);
  SuperPoly lhs = make_M(p, n, l, S);
  for (int j = l + 1; j <= n; ++j) lhs *= make_h(p, n, j);
  int deg = lhs.degree();
  std::size_t k = S.size();
  std::vector<GenExpr> cands;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<int> T;
    for (int s = 0; s < n; ++s)
      if (mask >> s & 1) T.push_back(s);
    GenSymbol m = GenSymbol::M(n, T);
    int rest = deg - m.degree(p);
    if (rest < 0) continue;
    std::vector<int> r(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> hs;
    h_monomials(p, n, rest, n, r, hs);
    for (const auto& e : hs) {
      GenExpr c = sym(p, n, m);
      for (int i = 1; i <= n; ++i)
        if (e[static_cast<std::size_t>(i - 1)]) c = c * sym(p, n, GenSymbol::h(i), e[static_cast<std::size_t>(i - 1)]);
      cands.push_back(c);
    }
  }
  return solve_over(lhs, cands);
}

std::optional<GenExpr> express_in(const SuperPoly& f, const std::vector<GenExpr>& gens) {
  int p = f.p(), n = f.n();
  GenExpr out(p, n);
  std::vector<int> degs;
  std::vector<SuperPoly> expanded;
  for (const auto& g : gens) {
    if (g.p() != p || g.n() != n) throw ArgumentError("generator over a different ring");
    expanded.push_back(g.expand());
    if (!expanded.back().is_homogeneous() || expanded.back().is_zero())
      throw ArgumentError("generators must be nonzero and homogeneous");
    degs.push_back(expanded.back().degree());
  }
  std::map<int, SuperPoly> parts;
  for (const auto& [m, c] : f.terms()) parts.emplace(m.degree(), SuperPoly(p, n)).first->second += SuperPoly::monomial(p, n, m, c);
  for (const auto& [deg, part] : parts) {
    std::vector<GenExpr> monos;
    std::vector<SuperPoly> polys;
    std::vector<int> e(gens.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t g, int left) {
      if (g == gens.size()) {
        if (left) return;
        GenExpr m = GenExpr::constant(p, n, 1);
        SuperPoly v = SuperPoly::constant(p, n, 1);
        for (std::size_t k = 0; k < gens.size(); ++k)
          if (e[k]) {
            m = m * gens[k].pow(static_cast<unsigned>(e[k]));
            v *= expanded[k].pow(static_cast<unsigned>(e[k]));
          }
        if (v.is_zero()) return;
        monos.push_back(m);
        polys.push_back(v);
        return;
      }
      for (int k = 0; k * degs[g] <= left; ++k) {
        e[g] = k;
        rec(g + 1, left - k * degs[g]);
        if (degs[g] == 0) break;
      }
      e[g] = 0;
    };
    rec(0, deg);
    auto sol = solve_combination(part, polys);
    if (!sol) return std::nullopt;
    for (std::size_t k = 0; k < monos.size(); ++k)
      if ((*sol)[k]) out += monos[k].scale((*sol)[k]);
  }
  return out;
}

// ---------------------------------------------------------------- generator sets

std::vector<GenSymbol> kuhn_mitchell_symbols(const Composition& I) {
  std::vector<GenSymbol> out;
  auto nu = I.nu();
  for (int i = 1; i <= I.length(); ++i)
    for (int k = 1; k <= I.block(i); ++k) out.push_back(GenSymbol::d(nu[static_cast<std::size_t>(i)], nu[static_cast<std::size_t>(i)] - k));
  return out;
}

namespace {

// All strictly increasing subsets of {0..m-1} of size 1..m.
std::vector<std::vector<int>> nonempty_subsets(int m) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    std::vector<int> S;
    for (int s = 0; s < m; ++s)
      if (mask >> s & 1) S.push_back(s);
    out.push_back(S);
  }
  return out;
}

}  // namespace

GeneratorSet restriction_image_generators(GeneratorFamily fam, int p, int n, const Composition& I) {
  GeneratorSet out;
  int half = (p - 3) / 2;
  switch (fam) {
    case GeneratorFamily::Sylow: {
      if (p == 2) throw ArgumentError("exterior generators need an odd prime");
      out.gens.push_back(sym(p, n, GenSymbol::M(1, {0}, true)));
      for (int i = 2; i <= n; ++i)
        out.gens.push_back(sym(p, n, GenSymbol::M(i, {i - 1}, true)) * sym(p, n, GenSymbol::L_top(i - 1, true), half));
      for (int i = 1; i <= n; ++i) out.gens.push_back(sym(p, n, GenSymbol::h(i, true)));
      out.group = unipotent_generators(p, n, true);
      out.group_name = "U_n^t";
      break;
    }
    case GeneratorFamily::Symmetric: {
      for (int i = 0; i < n; ++i) out.gens.push_back(sym(p, n, GenSymbol::d(n, i)));
      if (p != 2)
        for (const auto& S : nonempty_subsets(n))
          out.gens.push_back(sym(p, n, GenSymbol::M(n, S)) * sym(p, n, GenSymbol::L_top(n), p - 2));
      out.group = gl_generators(p, n);
      out.group_name = "GL";
      break;
    }
    case GeneratorFamily::Wr1: {
      if (n < 2) throw ArgumentError("family needs n >= 2");
      out.gens.push_back(sym(p, n, GenSymbol::h(1, true), p - 1));
      for (int i = 1; i < n; ++i) out.gens.push_back(sym(p, n, GenSymbol::d_parab(n, i, true)));
      if (p != 2) {
        out.gens.push_back(sym(p, n, GenSymbol::M(1, {0}, true)) * sym(p, n, GenSymbol::h(1, true), p - 2));
        for (const auto& S : nonempty_subsets(n))
          if (S.back() >= 1)
            out.gens.push_back(sym(p, n, GenSymbol::M(n, S, true)) * sym(p, n, GenSymbol::L_top(n, true), p - 2));
      }
      out.group = parabolic_generators(p, Composition({1, n - 1}), true);
      out.group_name = "P((1,n-1))^t";
      break;
    }
    case GeneratorFamily::Wr2: {
      if (n < 2) throw ArgumentError("family needs n >= 2");
      for (int i = 0; i < n - 1; ++i) out.gens.push_back(sym(p, n, GenSymbol::d(n - 1, i, true)));
      out.gens.push_back(sym(p, n, GenSymbol::h(n, true), p - 1));
      if (p != 2) {
        for (const auto& S : nonempty_subsets(n - 1))
          out.gens.push_back(sym(p, n, GenSymbol::M(n - 1, S, true)) * sym(p, n, GenSymbol::L_top(n - 1, true), p - 2));
        for (std::uint32_t mask = 0; mask < (1u << (n - 1)); ++mask) {
          std::vector<int> T;
          for (int s = 0; s < n - 1; ++s)
            if (mask >> s & 1) T.push_back(s);
          T.push_back(n - 1);
          out.gens.push_back(sym(p, n, GenSymbol::M(n, T, true)) * sym(p, n, GenSymbol::L_top(n, true), p - 2));
        }
      }
      out.group = parabolic_generators(p, Composition({n - 1, 1}), true);
      out.group_name = "P((n-1,1))^t";
      break;
    }
    case GeneratorFamily::KuhnMitchell: {
      if (I.n() != n) throw ArgumentError("composition must sum to n");
      for (const auto& s : kuhn_mitchell_symbols(I)) out.gens.push_back(sym(p, n, s));
      if (p != 2) {
        auto nu = I.nu();
        for (int i = 1; i <= I.length(); ++i) {
          int v = nu[static_cast<std::size_t>(i)];
          for (const auto& S : nonempty_subsets(v))
            if (S.back() >= nu[static_cast<std::size_t>(i - 1)])
              out.gens.push_back(sym(p, n, GenSymbol::M(v, S)) * sym(p, n, GenSymbol::L_top(v), p - 2));
        }
      }
      out.group = parabolic_generators(p, I);
      out.group_name = "P(" + I.to_string() + ")";
      break;
    }
  }
  return out;
}

}  // namespace dickson
