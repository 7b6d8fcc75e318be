#include "dickson/modbasis.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
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

GenExpr sym(int p, int n, const GenSymbol& s, int e = 1) { return GenExpr::symbol(p, n, s, e); }

std::vector<std::vector<int>> subsets(int m, bool nonempty) {
  std::vector<std::vector<int>> out;
  for (std::uint32_t mask = nonempty ? 1u : 0u; mask < (1u << m); ++mask) {
    std::vector<int> S;
    for (int s = 0; s < m; ++s)
      if (mask >> s & 1) S.push_back(s);
    out.push_back(S);
  }
  return out;
}

void require_n2(BasisFamily f, int n) {
  if (f != BasisFamily::Hn && n < 2) throw ArgumentError(family_name(f) + " needs n >= 2");
}

void require_odd(BasisFamily f, int p) {
  if (p == 2) throw ArgumentError(family_name(f) + " has exterior classes and needs an odd prime");
}

// Applies omega to every symbol except the GL-invariant d_{n,*}.
GenExpr hatted(const GenExpr& e) {
  GenExpr out(e.p(), e.n());
  for (const auto& [mono, c] : e.terms()) {
    GenMono m;
    for (auto [s, k] : mono) {
      if (!(s.kind == GenSymbol::Kind::D && s.a == e.n())) s.hat = !s.hat;
      m.emplace_back(s, k);
    }
    out += GenExpr::monomial(e.p(), e.n(), m, c);
  }
  return out;
}

GenExpr d_monomial(int p, int n, const std::vector<int>& exps, Coeff c = 1) {
  GenMono m;
  for (int i = 0; i < n; ++i)
    if (exps[static_cast<std::size_t>(i)]) m.emplace_back(GenSymbol::d(n, i), exps[static_cast<std::size_t>(i)]);
  return GenExpr::monomial(p, n, m, c);
}

std::vector<GenExpr> pn11_basis(int p, int n) {
  std::vector<GenExpr> out;
  int k = n - 1;
  // m_i <= p-1 for i >= start; with a leading d_{n-1,t-1}^p when t >= 1.
  for (int t = 0; t < n; ++t) {
    int start = t;
    int cnt = ipow(p, k - start);
    for (int idx = 0; idx < cnt; ++idx) {
      GenMono m;
      if (t >= 1) m.emplace_back(GenSymbol::d(k, t - 1), p);
      int rest = idx;
      for (int i = start; i < k; ++i) {
        int e = rest % p;
        rest /= p;
        if (e) m.emplace_back(GenSymbol::d(k, i), e);
      }
      out.push_back(GenExpr::monomial(p, n, m));
    }
  }
  return out;
}

int p1n1_top(int p, int n) {
  int a = 0;
  for (int t = 1; t < n; ++t) a += ipow(p, t);
  return a;
}

}  // namespace

std::string family_name(BasisFamily f) {
  switch (f) {
    case BasisFamily::Hn: return "hn";
    case BasisFamily::P1n1: return "p1n1";
    case BasisFamily::Pn11: return "pn11";
    case BasisFamily::SylowImage: return "sylow";
    case BasisFamily::Wr1: return "wr1";
    case BasisFamily::Wr2: return "wr2";
  }
  return "?";
}

BasisFamily family_from_name(const std::string& name) {
  for (auto f : {BasisFamily::Hn, BasisFamily::P1n1, BasisFamily::Pn11, BasisFamily::SylowImage, BasisFamily::Wr1,
                 BasisFamily::Wr2})
    if (family_name(f) == name) return f;
  throw ArgumentError("unknown basis family '" + name + "' (hn, p1n1, pn11, sylow, wr1, wr2)");
}

std::vector<GLMatrix> family_group(BasisFamily f, int p, int n) {
  require_n2(f, n);
  switch (f) {
    case BasisFamily::Hn: return unipotent_generators(p, n);
    case BasisFamily::P1n1: return subgroup_generators(p, n, CosetTag::P1n1);
    case BasisFamily::Pn11: return subgroup_generators(p, n, CosetTag::Pn11);
    case BasisFamily::SylowImage: return restriction_image_generators(GeneratorFamily::Sylow, p, n).group;
    case BasisFamily::Wr1: return restriction_image_generators(GeneratorFamily::Wr1, p, n).group;
    case BasisFamily::Wr2: return restriction_image_generators(GeneratorFamily::Wr2, p, n).group;
  }
  return {};
}

std::vector<GenExpr> family_generators(BasisFamily f, int p, int n) {
  require_n2(f, n);
  std::vector<GenExpr> out;
  switch (f) {
    case BasisFamily::Hn:
      for (int i = 1; i <= n; ++i) out.push_back(sym(p, n, GenSymbol::h(i)));
      break;
    case BasisFamily::P1n1:
      out.push_back(sym(p, n, GenSymbol::h(1), p - 1));
      for (int i = 1; i < n; ++i) out.push_back(sym(p, n, GenSymbol::d_parab(n, i)));
      break;
    case BasisFamily::Pn11:
      for (int i = 0; i < n - 1; ++i) out.push_back(sym(p, n, GenSymbol::d(n - 1, i)));
      out.push_back(sym(p, n, GenSymbol::d(n, n - 1)));
      break;
    case BasisFamily::SylowImage: return restriction_image_generators(GeneratorFamily::Sylow, p, n).gens;
    case BasisFamily::Wr1: return restriction_image_generators(GeneratorFamily::Wr1, p, n).gens;
    case BasisFamily::Wr2: return restriction_image_generators(GeneratorFamily::Wr2, p, n).gens;
  }
  return out;
}

std::vector<GenExpr> enumerate_basis(BasisFamily f, int p, int n) {
  require_n2(f, n);
  std::vector<GenExpr> out;
  int half = (p - 3) / 2;
  switch (f) {
    case BasisFamily::Hn: {
      std::vector<int> r(static_cast<std::size_t>(n), 0);
      std::function<void(int)> rec = [&](int i) {
        if (i > n) {
          GenMono m;
          for (int j = 1; j <= n; ++j)
            if (r[static_cast<std::size_t>(j - 1)]) m.emplace_back(GenSymbol::h(j), r[static_cast<std::size_t>(j - 1)]);
          out.push_back(GenExpr::monomial(p, n, m));
          return;
        }
        for (int e = 0; e < ipow(p, n - i + 1) - 1; ++e) {
          r[static_cast<std::size_t>(i - 1)] = e;
          rec(i + 1);
        }
      };
      rec(1);
      break;
    }
    case BasisFamily::P1n1:
      for (int m = 0; m <= p1n1_top(p, n); ++m) out.push_back(sym(p, n, GenSymbol::h(1), (p - 1) * m));
      break;
    case BasisFamily::Pn11: return pn11_basis(p, n);
    case BasisFamily::SylowImage: {
      require_odd(f, p);
      // Exterior products of the Mui generators over the H_n^t basis.
      std::vector<GenExpr> ext;
      ext.push_back(sym(p, n, GenSymbol::M(1, {0}, true)));
      for (int i = 2; i <= n; ++i)
        ext.push_back(sym(p, n, GenSymbol::M(i, {i - 1}, true)) * sym(p, n, GenSymbol::L_top(i - 1, true), half));
      auto poly = enumerate_basis(BasisFamily::Hn, p, n);
      for (const auto& S : subsets(n, false)) {
        GenExpr e = GenExpr::constant(p, n, 1);
        for (int s : S) e = e * ext[static_cast<std::size_t>(s)];
        for (const auto& b : poly) out.push_back(e * hatted(b));
      }
      break;
    }
    case BasisFamily::Wr1: {
      require_odd(f, p);
      GenExpr u = sym(p, n, GenSymbol::h(1, true), p - 1);
      std::vector<GenExpr> ext;
      ext.push_back(sym(p, n, GenSymbol::M(1, {0}, true)) * sym(p, n, GenSymbol::h(1, true), p - 2));
      for (const auto& S : subsets(n, true))
        if (S.back() >= 1) ext.push_back(sym(p, n, GenSymbol::M(n, S, true)) * sym(p, n, GenSymbol::L_top(n, true), p - 2));
      int top = p1n1_top(p, n);
      for (int m = 0; m <= top; ++m) out.push_back(u.pow(static_cast<unsigned>(m)));
      for (const auto& e : ext)
        for (int m = 0; m <= top; ++m) out.push_back(e * u.pow(static_cast<unsigned>(m)));
      break;
    }
    case BasisFamily::Wr2: {
      require_odd(f, p);
      std::vector<GenExpr> poly;
      for (const auto& b : pn11_basis(p, n)) poly.push_back(hatted(b));
      std::vector<GenExpr> ext;
      for (auto T : subsets(n - 1, false)) {
        T.push_back(n - 1);
        ext.push_back(sym(p, n, GenSymbol::M(n, T, true)) * sym(p, n, GenSymbol::L_top(n, true), p - 2));
      }
      for (const auto& S : subsets(n - 1, true))
        ext.push_back(sym(p, n, GenSymbol::M(n - 1, S, true)) * sym(p, n, GenSymbol::L_top(n - 1, true), p - 2));
      out = poly;
      for (const auto& e : ext)
        for (const auto& b : poly) out.push_back(e * b);
      break;
    }
  }
  return out;
}

long long family_rank(BasisFamily f, int p, int n) {
  require_n2(f, n);
  long long r = 1;
  switch (f) {
    case BasisFamily::Hn:
      for (int m = 1; m <= n; ++m) r *= ipow(p, m) - 1;
      return r;
    case BasisFamily::P1n1:
    case BasisFamily::Pn11:
      return static_cast<long long>(gl_order(p, n) / parabolic_order(p, tag_composition(n, f == BasisFamily::P1n1
                                                                                             ? CosetTag::P1n1
                                                                                             : CosetTag::Pn11)));
    case BasisFamily::SylowImage:
      for (int m = 1; m <= n; ++m) r *= ipow(p, m) - 1;
      return r << n;
    case BasisFamily::Wr1:
    case BasisFamily::Wr2:
      return family_rank(BasisFamily::P1n1, p, n) << n;
  }
  return -1;
}

// ---------------------------------------------------------------- Decomposition

GenExpr Decomposition::coefficient(const GenExpr& basis_elem) const {
  for (const auto& [b, c] : terms)
    if (b == basis_elem) return c;
  return GenExpr(basis_elem.p(), basis_elem.n());
}

SuperPoly Decomposition::expand() const {
  if (terms.empty()) throw ArgumentError("empty decomposition has no ring");
  SuperPoly out(terms[0].first.p(), terms[0].first.n());
  for (const auto& [b, c] : terms) out += b.expand() * c.expand();
  return out;
}

std::string Decomposition::to_string() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [b, c] : terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")*" << b.to_string();
  }
  return os.str();
}

namespace {

// Engine polynomial: key = ring-part exponents followed by d_{n,*} exponents.
using Key = std::vector<int>;

Decomposition collect(int p, int n, const std::vector<GenExpr>& basis, const std::map<std::size_t, GenExpr>& coeffs,
                      std::size_t steps) {
  Decomposition d;
  d.steps = steps;
  for (const auto& [i, c] : coeffs)
    if (!c.is_zero()) d.terms.emplace_back(basis[i], c);
  (void)p;
  (void)n;
  return d;
}

// ---- Pn11: ring part m_0..m_{n-2} of d_{n-1,*}.
struct Pn11Order {
  int k;
  bool operator()(const Key& a, const Key& b) const {
    int da = 0, db = 0;
    for (int i = 0; i < k; ++i) {
      da += a[static_cast<std::size_t>(i)];
      db += b[static_cast<std::size_t>(i)];
    }
    if (da != db) return da > db;
    for (int i = k - 1; i >= 0; --i)
      if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
        return a[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(i)];
    return a < b;
  }
};

std::optional<Decomposition> rewrite_pn11(const GenExpr& f, std::size_t cap) {
  int p = f.p(), n = f.n(), k = n - 1;
  PrimeField F(p);
  std::map<Key, Coeff, Pn11Order> work(Pn11Order{k});
  auto add = [&](const Key& key, Coeff c) {
    if (!c) return;
    auto [it, fresh] = work.emplace(key, c);
    if (!fresh) {
      it->second = F.add(it->second, c);
      if (!it->second) work.erase(it);
    }
  };
  // h_n^{(p-1)j} = (d_{n,n-1} - d_{n-1,n-2}^p)^j
  for (const auto& [mono, c] : f.terms()) {
    std::map<Key, Coeff> acc{{Key(static_cast<std::size_t>(k + n), 0), c}};
    for (const auto& [s, e] : mono) {
      std::map<Key, Coeff> next;
      if (s.hat) return std::nullopt;
      if (s.kind == GenSymbol::Kind::D && s.a == k && s.b < k) {
        for (const auto& [key, v] : acc) {
          Key nk = key;
          nk[static_cast<std::size_t>(s.b)] += e;
          next[nk] = v;
        }
      } else if (s.kind == GenSymbol::Kind::D && s.a == n && s.b < n) {
        for (const auto& [key, v] : acc) {
          Key nk = key;
          nk[static_cast<std::size_t>(k + s.b)] += e;
          next[nk] = v;
        }
      } else if (s.kind == GenSymbol::Kind::H && s.a == n && e % (p - 1) == 0) {
        int j = e / (p - 1);
        for (const auto& [key, v] : acc)
          for (int a = 0; a <= j; ++a) {
            Coeff b = binom_mod_p(static_cast<std::uint64_t>(j), static_cast<std::uint64_t>(a), p);
            if ((j - a) % 2) b = F.neg(b);
            Key nk = key;
            nk[static_cast<std::size_t>(k + n - 1)] += a;
            nk[static_cast<std::size_t>(k - 1)] += p * (j - a);
            Coeff& slot = next[nk];
            slot = F.add(slot, F.mul(v, b));
          }
      } else {
        return std::nullopt;
      }
      acc.swap(next);
    }
    for (const auto& [key, v] : acc) add(key, v);
  }

  auto basis = pn11_basis(p, n);
  std::map<Key, std::size_t> basis_index;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Key m(static_cast<std::size_t>(k), 0);
    for (const auto& [s, e] : basis[i].terms().begin()->first) m[static_cast<std::size_t>(s.b)] = e;
    basis_index[m] = i;
  }
  std::map<std::size_t, GenExpr> coeffs;
  std::size_t steps = 0;
  while (!work.empty()) {
    auto it = work.begin();
    Key key = it->first;
    Coeff c = it->second;
    work.erase(it);
    Key m(key.begin(), key.begin() + k);
    int J = -1;
    for (int i = k - 1; i >= 0; --i)
      if (m[static_cast<std::size_t>(i)] >= p) {
        J = i;
        break;
      }
    bool lower_zero = true;
    for (int i = 0; i < J; ++i) lower_zero = lower_zero && m[static_cast<std::size_t>(i)] == 0;
    if (J < 0 || (m[static_cast<std::size_t>(J)] == p && lower_zero)) {
      std::vector<int> dpart(key.begin() + k, key.end());
      auto [slot, fresh] = coeffs.emplace(basis_index.at(m), GenExpr(p, n));
      slot->second += d_monomial(p, n, dpart, c);
      continue;
    }
    if (++steps > cap) return std::nullopt;
    int i = J;
    if (m[static_cast<std::size_t>(J)] == p)
      for (i = J - 1; m[static_cast<std::size_t>(i)] == 0; --i) {
      }
    // d_i d_J^p = -d_{n,i} d_{J+1} + d_{n,J+1} d_i + d_{i-1}^p d_{J+1}, with d_{n-1,n-1} = 1.
    Key base = key;
    base[static_cast<std::size_t>(i)] -= 1;
    base[static_cast<std::size_t>(J)] -= p;
    auto with_next = [&](Key t) {
      if (J + 1 < k) t[static_cast<std::size_t>(J + 1)] += 1;
      return t;
    };
    Key t1 = with_next(base);
    t1[static_cast<std::size_t>(k + i)] += 1;
    add(t1, F.neg(c));
    Key t2 = base;
    t2[static_cast<std::size_t>(i)] += 1;
    t2[static_cast<std::size_t>(k + J + 1)] += 1;
    add(t2, c);
    if (i >= 1) {
      Key t3 = with_next(base);
      t3[static_cast<std::size_t>(i - 1)] += p;
      add(t3, c);
    }
  }
  return collect(p, n, basis, coeffs, steps);
}

// ---- P1n1: ring part is the exponent of u = h_1^{p-1}.
using UPoly = std::map<Key, Coeff>;  // key = [u, d_{n,0..n-1}]

UPoly upoly_mul(int p, const UPoly& a, const UPoly& b) {
  PrimeField F(p);
  UPoly out;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) {
      Key k = ka;
      for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
      Coeff& slot = out[k];
      slot = F.add(slot, F.mul(va, vb));
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::optional<Decomposition> rewrite_p1n1(const GenExpr& f, std::size_t cap) {
  int p = f.p(), n = f.n();
  PrimeField F(p);
  std::size_t width = static_cast<std::size_t>(n + 1);
  auto unit = [&](int u, int di, Coeff c) {
    Key k(width, 0);
    k[0] = u;
    if (di >= 0 && di < n) k[static_cast<std::size_t>(1 + di)] = 1;
    return UPoly{{k, c}};
  };
  // d_{n,j}(I) = d_{n,j} - sum_{t=j}^{n-1} (-1)^{t-j} u^{p^j+...+p^t} d_{n,t+1}
  auto parab = [&](int j) {
    UPoly e = unit(0, j, 1);
    int ex = 0;
    for (int t = j; t < n; ++t) {
      ex += ipow(p, t);
      Coeff c = (t - j) % 2 ? 1 : F.neg(1);
      for (auto& [key, v] : unit(ex, t + 1, c)) {
        Coeff& slot = e[key];
        slot = F.add(slot, v);
      }
    }
    return e;
  };
  UPoly total;
  for (const auto& [mono, c] : f.terms()) {
    UPoly acc = unit(0, -1, c);
    for (const auto& [s, e] : mono) {
      if (s.hat) return std::nullopt;
      UPoly factor;
      if (s.kind == GenSymbol::Kind::H && s.a == 1 && e % (p - 1) == 0) {
        factor = unit(e / (p - 1), -1, 1);
      } else if (s.kind == GenSymbol::Kind::D && s.a == n && s.b < n) {
        Key k(width, 0);
        k[static_cast<std::size_t>(1 + s.b)] = e;
        factor = UPoly{{k, 1}};
      } else if (s.kind == GenSymbol::Kind::DParab && s.a == n && s.b >= 1 && s.b < n) {
        UPoly base = parab(s.b);
        factor = unit(0, -1, 1);
        for (int r = 0; r < e; ++r) factor = upoly_mul(p, factor, base);
      } else {
        return std::nullopt;
      }
      acc = upoly_mul(p, acc, factor);
    }
    for (const auto& [key, v] : acc) {
      Coeff& slot = total[key];
      slot = F.add(slot, v);
    }
  }
  std::erase_if(total, [](const auto& kv) { return kv.second == 0; });

  // u^{A+1} = (-1)^{n-1} [d_{n,0} - d_{n,1} u - sum_{t=1}^{n-2} (-1)^t d_{n,1+t} u^{1+p+...+p^t}]
  int top = p1n1_top(p, n);
  Coeff sgn = (n - 1) % 2 ? F.neg(1) : 1;
  UPoly rel = unit(0, 0, sgn);
  for (auto& [key, v] : unit(1, 1, F.neg(sgn))) rel[key] = v;
  int ex = 1;
  for (int t = 1; t <= n - 2; ++t) {
    ex += ipow(p, t);
    Coeff c = t % 2 ? sgn : F.neg(sgn);
    for (auto& [key, v] : unit(ex, 1 + t, c)) rel[key] = v;
  }
  std::size_t steps = 0;
  std::map<Key, Coeff, std::greater<Key>> work(total.begin(), total.end());
  std::map<std::size_t, GenExpr> coeffs;
  auto basis = enumerate_basis(BasisFamily::P1n1, p, n);
  while (!work.empty()) {
    auto it = work.begin();
    Key key = it->first;
    Coeff c = it->second;
    work.erase(it);
    if (key[0] <= top) {
      std::vector<int> dpart(key.begin() + 1, key.end());
      auto [slot, fresh] = coeffs.emplace(static_cast<std::size_t>(key[0]), GenExpr(p, n));
      slot->second += d_monomial(p, n, dpart, c);
      continue;
    }
    if (++steps > cap) return std::nullopt;
    Key base = key;
    base[0] -= top + 1;
    for (const auto& [rk, rv] : rel) {
      Key nk = base;
      for (std::size_t i = 0; i < nk.size(); ++i) nk[i] += rk[i];
      auto [slot, fresh] = work.emplace(nk, 0);
      slot->second = F.add(slot->second, F.mul(c, rv));
      if (!slot->second) work.erase(slot);
    }
  }
  return collect(p, n, basis, coeffs, steps);
}

std::mutex basis_mutex;

const std::vector<SuperPoly>& expanded_basis(BasisFamily fam, int p, int n) {
  static std::map<std::tuple<int, int, int>, std::vector<SuperPoly>> cache;
  std::lock_guard<std::mutex> lock(basis_mutex);
  auto key = std::make_tuple(static_cast<int>(fam), p, n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::vector<SuperPoly> polys;
  for (const auto& b : enumerate_basis(fam, p, n)) polys.push_back(b.expand());
  return cache.emplace(key, std::move(polys)).first->second;
}

std::vector<int> dickson_degrees(int p, int n) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i) out.push_back(ipow(p, n) - ipow(p, i));
  return out;
}

// Exponent vectors e with sum e_i degs_i = degree.
void weighted_vectors(const std::vector<int>& degs, int degree, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> e(degs.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t g, int left) {
    if (g == degs.size()) {
      if (!left) emit(e);
      return;
    }
    for (int k = 0; k * degs[g] <= left; ++k) {
      e[g] = k;
      rec(g + 1, left - k * degs[g]);
      if (degs[g] == 0) break;
    }
    e[g] = 0;
  };
  rec(0, degree);
}

std::map<int, SuperPoly> split_degrees(const SuperPoly& f) {
  std::map<int, SuperPoly> parts;
  for (const auto& [m, c] : f.terms())
    parts.emplace(m.degree(), SuperPoly(f.p(), f.n())).first->second += SuperPoly::monomial(f.p(), f.n(), m, c);
  return parts;
}

}  // namespace

std::vector<GenExpr> dickson_monomials(int p, int n, int degree) {
  std::vector<GenExpr> out;
  if (degree < 0) return out;
  weighted_vectors(dickson_degrees(p, n), degree, [&](const std::vector<int>& e) { out.push_back(d_monomial(p, n, e)); });
  return out;
}

Decomposition oracle_decompose(const SuperPoly& f, BasisFamily fam) {
  int p = f.p(), n = f.n();
  auto basis = enumerate_basis(fam, p, n);
  const auto& polys = expanded_basis(fam, p, n);
  std::map<std::size_t, GenExpr> coeffs;
  for (const auto& [deg, part] : split_degrees(f)) {
    std::vector<std::pair<std::size_t, GenExpr>> labels;
    std::vector<SuperPoly> cols;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      int bd = polys[i].degree();
      for (const auto& dm : dickson_monomials(p, n, deg - bd)) {
        SuperPoly v = polys[i] * dm.expand();
        if (v.is_zero()) continue;
        labels.emplace_back(i, dm);
        cols.push_back(std::move(v));
      }
    }
    auto sol = solve_combination(part, cols);
    if (!sol) throw ArgumentError("element is not in the span of the " + family_name(fam) + " basis");
    for (std::size_t k = 0; k < cols.size(); ++k)
      if ((*sol)[k]) {
        auto [slot, fresh] = coeffs.emplace(labels[k].first, GenExpr(p, n));
        slot->second += labels[k].second.scale((*sol)[k]);
      }
  }
  Decomposition d = collect(p, n, basis, coeffs, 0);
  d.used_oracle = true;
  return d;
}

Decomposition rewrite(const GenExpr& f, BasisFamily fam, std::size_t step_cap) {
  require_n2(fam, f.n());
  std::optional<Decomposition> d;
  if (fam == BasisFamily::Pn11) d = rewrite_pn11(f, step_cap);
  if (fam == BasisFamily::P1n1) d = rewrite_p1n1(f, step_cap);
  if (d) return *d;
  return oracle_decompose(f.expand(), fam);
}

GenExpr xi(const GenExpr& f, BasisFamily fam) {
  return rewrite(f, fam).coefficient(GenExpr::constant(f.p(), f.n(), 1));
}

GenExpr xi_of(const SuperPoly& f, BasisFamily fam) {
  return oracle_decompose(f, fam).coefficient(GenExpr::constant(f.p(), f.n(), 1));
}

namespace {

std::vector<GenExpr> h_monomials(int p, int n, int degree) {
  std::vector<int> degs;
  for (int i = 1; i <= n; ++i) degs.push_back(ipow(p, i - 1));
  std::vector<GenExpr> out;
  if (degree < 0) return out;
  weighted_vectors(degs, degree, [&](const std::vector<int>& e) {
    GenMono m;
    for (int i = 0; i < n; ++i)
      if (e[static_cast<std::size_t>(i)]) m.emplace_back(GenSymbol::h(i + 1), e[static_cast<std::size_t>(i)]);
    out.push_back(GenExpr::monomial(p, n, m));
  });
  return out;
}

}  // namespace

std::optional<GenExpr> xi_exterior(const SuperPoly& f) {
  int p = f.p(), n = f.n();
  if (p == 2) throw ArgumentError("xi_exterior needs an odd prime");
  std::vector<GenExpr> classes;
  for (const auto& J : subsets(n, true))
    classes.push_back(sym(p, n, GenSymbol::M(n, J)) * sym(p, n, GenSymbol::L_top(n), p - 2));
  std::vector<SuperPoly> class_polys;
  for (const auto& c : classes) class_polys.push_back(c.expand());
  GenExpr out(p, n);
  for (const auto& [deg, part] : split_degrees(f)) {
    // slot 0 is h_0, slot j+1 the class j.
    std::vector<std::pair<std::size_t, GenExpr>> labels;
    std::vector<SuperPoly> cols;
    for (const auto& hm : h_monomials(p, n, deg)) {
      labels.emplace_back(0, hm);
      cols.push_back(hm.expand());
    }
    for (std::size_t j = 0; j < classes.size(); ++j)
      for (const auto& hm : h_monomials(p, n, deg - class_polys[j].degree())) {
        SuperPoly v = class_polys[j] * hm.expand();
        if (v.is_zero()) continue;
        labels.emplace_back(j + 1, hm);
        cols.push_back(std::move(v));
      }
    auto sol = solve_combination(part, cols);
    if (!sol) return std::nullopt;
    std::vector<SuperPoly> h(classes.size() + 1, SuperPoly(p, n));
    for (std::size_t k = 0; k < cols.size(); ++k)
      if ((*sol)[k]) h[labels[k].first] += labels[k].second.expand().scale((*sol)[k]);
    if (!h[0].is_zero()) out += xi_of(h[0], BasisFamily::Hn);
    for (std::size_t j = 0; j < classes.size(); ++j)
      if (!h[j + 1].is_zero()) out += classes[j] * xi_of(h[j + 1], BasisFamily::Hn);
  }
  return out;
}

// ---------------------------------------------------------------- freeness

std::size_t invariant_dimension(int p, int n, int degree, const std::vector<GLMatrix>& gens, bool with_exterior) {
  if (degree < 0) return 0;
  MonomialIndex idx;
  std::vector<Monomial> monos;
  std::uint32_t masks = (with_exterior && p != 2) ? (1u << n) : 1u;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    int k = std::popcount(mask);
    if (k > degree) continue;
    std::vector<int> ones(static_cast<std::size_t>(n), 1);
    weighted_vectors(ones, degree - k, [&](const std::vector<int>& e) {
      Monomial m;
      m.ext = mask;
      for (int i = 0; i < n; ++i) m.y[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(e[static_cast<std::size_t>(i)]);
      monos.push_back(m);
      idx.index(m);
    });
  }
  std::size_t N = monos.size();
  Echelon ech(p, N * gens.size());
  for (const auto& m : monos) {
    SuperPoly v = SuperPoly::monomial(p, n, m);
    std::vector<Coeff> row;
    row.reserve(N * gens.size());
    for (const auto& g : gens) {
      auto c = idx.coords(substitute(v, g) - v);
      if (c.size() != N) throw ConsistencyError("substitution left the degree");
      row.insert(row.end(), c.begin(), c.end());
    }
    ech.insert(std::move(row));
  }
  return N - ech.rank();
}

namespace {

std::size_t subalgebra_dimension(int p, int n, int degree, const std::vector<GenExpr>& gens) {
  std::vector<SuperPoly> expanded;
  std::vector<int> degs;
  for (const auto& g : gens) {
    expanded.push_back(g.expand());
    degs.push_back(expanded.back().degree());
  }
  std::vector<SuperPoly> polys;
  weighted_vectors(degs, degree, [&](const std::vector<int>& e) {
    SuperPoly v = SuperPoly::constant(p, n, 1);
    for (std::size_t k = 0; k < e.size() && !v.is_zero(); ++k)
      if (e[k]) v *= expanded[k].pow(static_cast<unsigned>(e[k]));
    if (!v.is_zero()) polys.push_back(std::move(v));
  });
  return poly_rank(polys);
}

}  // namespace

FreenessReport verify_freeness(BasisFamily fam, int p, int n, int degree_bound) {
  if (degree_bound < 0) {
    degree_bound = 24;
    if (const char* env = std::getenv("DICKSON_DEGREE_BOUND")) degree_bound = std::atoi(env);
  }
  FreenessReport r;
  r.degree_bound = degree_bound;
  auto basis = enumerate_basis(fam, p, n);
  const auto& polys = expanded_basis(fam, p, n);
  r.cardinality = static_cast<long long>(basis.size());
  r.rank = family_rank(fam, p, n);
  if (r.rank >= 0 && r.rank != r.cardinality) {
    r.ok = false;
    r.failures.push_back("cardinality " + std::to_string(r.cardinality) + " != rank " + std::to_string(r.rank));
  }
  bool restriction = fam == BasisFamily::SylowImage || fam == BasisFamily::Wr1 || fam == BasisFamily::Wr2;
  auto gens = family_generators(fam, p, n);
  auto group = family_group(fam, p, n);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool inv = true;
    for (const auto& g : group) inv = inv && substitute(polys[i], g) == polys[i];
    if (!inv) {
      r.ok = false;
      r.failures.push_back("basis element " + basis[i].to_string() + " is not invariant");
    }
  }
  for (int deg = 0; deg <= degree_bound; ++deg) {
    std::vector<SuperPoly> cols;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (const auto& dm : dickson_monomials(p, n, deg - polys[i].degree())) cols.push_back(polys[i] * dm.expand());
    std::size_t rank = poly_rank(cols);
    std::size_t target = restriction ? subalgebra_dimension(p, n, deg, gens) : invariant_dimension(p, n, deg, group, false);
    if (rank != cols.size()) {
      r.ok = false;
      r.failures.push_back("degree " + std::to_string(deg) + ": " + std::to_string(cols.size()) +
                           " products have rank " + std::to_string(rank));
    }
    if (rank != target) {
      r.ok = false;
      r.failures.push_back("degree " + std::to_string(deg) + ": span " + std::to_string(rank) + " != dimension " +
                           std::to_string(target));
    }
  }
  return r;
}

}  // namespace dickson
