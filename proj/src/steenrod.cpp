#include "dickson/steenrod.hpp"

#include <functional>
#include <sstream>

#include "dickson/errors.hpp"

namespace dickson {

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

void require_odd(int p) {
  if (p == 2) throw ArgumentError("reduced powers are implemented for odd primes only");
}

void distribute(int p, const Monomial& m, int n, int var, int left, Coeff c, std::vector<Term>& out) {
  if (var == n) {
    if (left == 0) out.emplace_back(m, c);
    return;
  }
  std::size_t v = static_cast<std::size_t>(var);
  int e = m.y[v];
  for (int k = 0; k <= std::min(e, left); ++k) {
    Coeff b = binom_mod_p(static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(k), p);
    if (!b) continue;
    long long ne = e + static_cast<long long>(k) * (p - 1);
    if (ne > 65535) throw ArgumentError("exponent overflow");
    Monomial next = m;
    next.y[v] = static_cast<std::uint16_t>(ne);
    distribute(p, next, n, var + 1, left - k, static_cast<Coeff>(c * b % p), out);
  }
}

}  // namespace

SteenrodOp SteenrodOp::parse(const std::string& text) {
  if (text == "beta" || text == "b") return beta();
  if (text.size() >= 2 && text[0] == 'P') {
    std::size_t start = (text[1] == '^' || text[1] == '<') ? 2 : 1;
    std::size_t end = text.back() == '>' ? text.size() - 1 : text.size();
    if (start >= end) throw ParseError("missing index in Steenrod operation", start);
    int k = 0;
    for (std::size_t i = start; i < end; ++i) {
      if (text[i] < '0' || text[i] > '9') throw ParseError("bad Steenrod operation '" + text + "'", i);
      k = k * 10 + (text[i] - '0');
      if (k > 1000000) throw ArgumentError("Steenrod index too large");
    }
    return P(k);
  }
  throw ParseError("unknown Steenrod operation '" + text + "'", 0);
}

std::string SteenrodOp::to_string() const { return kind == Kind::Beta ? "beta" : "P^" + std::to_string(k); }

SuperPoly apply_P(int k, const SuperPoly& f) {
  require_odd(f.p());
  if (k < 0) throw ArgumentError("negative Steenrod index");
  if (k == 0) return f;
  std::vector<Term> out;
  for (const auto& [m, c] : f.terms()) distribute(f.p(), m, f.n(), 0, k, c, out);
  return SuperPoly::from_terms(f.p(), f.n(), std::move(out));
}

SuperPoly apply_beta(const SuperPoly& f) {
  require_odd(f.p());
  PrimeField F(f.p());
  std::vector<Term> out;
  for (const auto& [m, c] : f.terms()) {
    auto idx = m.ext_indices();
    for (std::size_t r = 0; r < idx.size(); ++r) {
      std::size_t v = static_cast<std::size_t>(idx[r] - 1);
      Monomial next = m;
      next.ext &= ~(1u << v);
      next.y[v] = static_cast<std::uint16_t>(next.y[v] + 1);
      out.emplace_back(next, r % 2 ? F.neg(c) : c);
    }
  }
  return SuperPoly::from_terms(f.p(), f.n(), std::move(out));
}

SuperPoly apply_op(const SteenrodOp& op, const SuperPoly& f) {
  return op.kind == SteenrodOp::Kind::Beta ? apply_beta(f) : apply_P(op.k, f);
}

namespace {

GenExpr sym(int p, int n, const GenSymbol& s, int e = 1) { return GenExpr::symbol(p, n, s, e); }

// P^q d_{m,i} in an n-variable ring.
GenExpr dickson_digits(int p, int n, int m, int i, int q) {
  GenExpr zero(p, n);
  if (q < 0 || i < 0 || i >= m) return zero;
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  int rest = q;
  for (int t = 0; t < m; ++t) {
    a[static_cast<std::size_t>(t)] = rest % p;
    rest /= p;
  }
  if (rest) return zero;
  PrimeField F(p);
  Coeff coeff = a[static_cast<std::size_t>(m - 1)] % 2 ? F.neg(1) : 1;
  GenMono mono;
  for (int t = 0; t < m; ++t) {
    int at = a[static_cast<std::size_t>(t)];
    int prev = t ? a[static_cast<std::size_t>(t - 1)] : 0;
    int top = at + (t == i ? 1 : 0);
    Coeff b = binom_mod_p(static_cast<std::uint64_t>(top >= 0 ? top : 0), static_cast<std::uint64_t>(prev), p);
    if (prev > top || !b) return zero;
    coeff = F.mul(coeff, b);
    int e = top - prev;
    if (e) mono.emplace_back(GenSymbol::d(m, t), e);
  }
  return GenExpr::monomial(p, n, mono, coeff);
}

// P^q L_{m}^h as a sum over the shifted minors L_{m,j}.
GenExpr L_power(int p, int n, int m, int h, int q) {
  GenExpr zero(p, n);
  if (q < 0) return zero;
  if (m == 0 || h == 0) return q == 0 ? GenExpr::constant(p, n, 1) : zero;
  // c_j = p^j + ... + p^{m-1} is the cost of L_m -> L_{m,j}.
  std::vector<int> cost(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j)
    for (int s = j; s < m; ++s) cost[static_cast<std::size_t>(j)] += ipow(p, s);
  PrimeField F(p);
  GenExpr out(p, n);
  std::vector<int> a(static_cast<std::size_t>(m), 0);
  std::function<void(int, int, int)> rec = [&](int j, int left, int used) {
    if (j == m) {
      if (left) return;
      // multinomial h! / (prod a_j! (h - sum a)!) mod p; h < p.
      long long num = 1, den = 1;
      for (int s = 2; s <= h; ++s) num *= s;
      for (int v : a)
        for (int s = 2; s <= v; ++s) den *= s;
      for (int s = 2; s <= h - used; ++s) den *= s;
      Coeff c = F.mul(F.from_int(num), F.inv(F.from_int(den)));
      GenMono mono;
      for (int s = 0; s < m; ++s)
        if (a[static_cast<std::size_t>(s)]) mono.emplace_back(GenSymbol::L(m, s), a[static_cast<std::size_t>(s)]);
      if (h - used) mono.emplace_back(GenSymbol::L_top(m), h - used);
      out += GenExpr::monomial(p, n, mono, c);
      return;
    }
    for (int v = 0; used + v <= h && v * cost[static_cast<std::size_t>(j)] <= left; ++v) {
      a[static_cast<std::size_t>(j)] = v;
      rec(j + 1, left - v * cost[static_cast<std::size_t>(j)], used + v);
    }
    a[static_cast<std::size_t>(j)] = 0;
  };
  rec(0, q, 0);
  return out;
}

void require_mui_range(int p, int n, int i) {
  require_odd(p);
  if (i < 1 || i > n) throw ArgumentError("M_{i,i-1} needs 1 <= i <= n");
}

}  // namespace

GenExpr dickson_power_closed_form(int p, int n, int i, int l, int q) {
  require_odd(p);
  if (n < 1 || i < 0 || i >= n || l < 0 || q < 0) throw ArgumentError("Dickson action index out of range");
  int pl = ipow(p, l);
  if (q % pl) return GenExpr(p, n);
  return dickson_digits(p, n, n, i, q / pl).pow(static_cast<unsigned>(pl));
}

GenExpr h_power_closed_form(int p, int n, int m) {
  require_odd(p);
  if (n < 1 || m < 0) throw ArgumentError("h action index out of range");
  GenExpr h = sym(p, n, GenSymbol::h(n));
  if (m == 0) return h;
  if (m == ipow(p, n - 1)) return h.pow(static_cast<unsigned>(p));
  if (n >= 2 && m >= ipow(p, n - 2) && m < ipow(p, n - 1))
    return (h * dickson_digits(p, n, n - 1, n - 2, m - ipow(p, n - 2))).scale(static_cast<Coeff>(p - 1));
  return GenExpr(p, n);
}

GenExpr mui_power_closed_form(int p, int n, int i, int m) {
  require_mui_range(p, n, i);
  int h = (p - 3) / 2;
  GenExpr out(p, n);
  for (int t = 0; t <= i - 1; ++t) {
    int cost = 0;
    for (int s = t; s <= i - 2; ++s) cost += ipow(p, s);
    out += sym(p, n, GenSymbol::M(i, {t})) * L_power(p, n, i - 1, h, m - cost);
  }
  return out;
}

GenExpr mui_bockstein_closed_form(int p, int n, int i, int m) {
  require_mui_range(p, n, i);
  int h = (p - 3) / 2;
  int cost = 0;
  for (int s = 0; s <= i - 2; ++s) cost += ipow(p, s);
  return sym(p, n, GenSymbol::L_top(i)) * L_power(p, n, i - 1, h, m - cost);
}

std::string ActionCheck::describe() const {
  std::ostringstream os;
  os << (ok ? "ok" : "MISMATCH") << ": expected " << expected.to_string();
  if (!ok) os << " = " << expected.expand().to_string() << ", actual " << actual.to_string();
  return os.str();
}

namespace {

ActionCheck compare(GenExpr expected, SuperPoly actual) {
  ActionCheck c;
  c.ok = expected.expand() == actual;
  c.expected = std::move(expected);
  c.actual = std::move(actual);
  return c;
}

}  // namespace

ActionCheck verify_dickson_action(int p, int n, int i, int l, int q) {
  GenExpr expected = dickson_power_closed_form(p, n, i, l, q);
  SuperPoly base = expand_symbol(p, n, GenSymbol::d(n, i)).frobenius(static_cast<unsigned>(l));
  return compare(std::move(expected), apply_P(q, base));
}

ActionCheck verify_h_action(int p, int n, int m) {
  GenExpr expected = h_power_closed_form(p, n, m);
  return compare(std::move(expected), apply_P(m, expand_symbol(p, n, GenSymbol::h(n))));
}

ActionCheck verify_M_action(int p, int n, int i, int m, bool bockstein) {
  require_mui_range(p, n, i);
  int h = (p - 3) / 2;
  SuperPoly base = expand_symbol(p, n, GenSymbol::M(i, {i - 1}));
  if (i > 1 && h) base *= expand_symbol(p, n, GenSymbol::L_top(i - 1)).pow(static_cast<unsigned>(h));
  SuperPoly actual = apply_P(m, base);
  if (bockstein) return compare(mui_bockstein_closed_form(p, n, i, m), apply_beta(actual));
  return compare(mui_power_closed_form(p, n, i, m), actual);
}

}  // namespace dickson
