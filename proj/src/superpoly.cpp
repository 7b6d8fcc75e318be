#include "dickson/superpoly.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <limits>
#include <unordered_map>

#include "dickson/errors.hpp"
#include "dickson/matrix.hpp"
#include "json.hpp"

namespace dickson {

namespace {

using Accum = std::unordered_map<Monomial, Coeff, MonomialHash>;

void accumulate(Accum& acc, const Monomial& m, Coeff c, int p) {
  if (c == 0) return;
  auto [it, fresh] = acc.try_emplace(m, c);
  if (!fresh) it->second = static_cast<Coeff>((it->second + c) % p);
}

std::vector<Term> drain(Accum& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c) out.emplace_back(m, c);
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return mono_greater(a.first, b.first); });
  return out;
}

std::uint16_t add_exp(std::uint32_t a, std::uint32_t b) {
  std::uint32_t s = a + b;
  if (s > std::numeric_limits<std::uint16_t>::max()) throw ArgumentError("exponent overflow");
  return static_cast<std::uint16_t>(s);
}

void require_ring(int p, int n) {
  require_supported_prime(p);
  if (n < 1 || n > kMaxVars) throw ArgumentError("unsupported number of variables " + std::to_string(n));
}

}  // namespace

int Monomial::ext_count() const { return std::popcount(ext); }

int Monomial::ydeg() const {
  int d = 0;
  for (auto e : y) d += e;
  return d;
}

std::vector<int> Monomial::ext_indices() const {
  std::vector<int> out;
  for (int i = 0; i < kMaxVars; ++i)
    if (ext & (1u << i)) out.push_back(i + 1);
  return out;
}

bool mono_greater(const Monomial& a, const Monomial& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (int i = 0; i < kMaxVars; ++i)
    if (a.y[static_cast<std::size_t>(i)] != b.y[static_cast<std::size_t>(i)])
      return a.y[static_cast<std::size_t>(i)] > b.y[static_cast<std::size_t>(i)];
  if (a.ext == b.ext) return false;
  // equal y-part and degree, so the same number of x's
  std::uint32_t diff = a.ext ^ b.ext;
  std::uint32_t low = diff & (~diff + 1);
  return (a.ext & low) != 0;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ m.ext;
  for (auto e : m.y) h = (h ^ e) * 0x100000001b3ULL + (h >> 29);
  return static_cast<std::size_t>(h);
}

int ext_product_sign(std::uint32_t s, std::uint32_t t) {
  if (s & t) return 0;
  int inversions = 0;
  for (std::uint32_t rest = t; rest; rest &= rest - 1) {
    std::uint32_t bit = rest & (~rest + 1);
    inversions += std::popcount(s & ~((bit << 1) - 1));
  }
  return (inversions & 1) ? -1 : 1;
}

// ---------------------------------------------------------------- SuperPoly

SuperPoly::SuperPoly(int p, int n) : p_(p), n_(n) { require_ring(p, n); }

SuperPoly SuperPoly::constant(int p, int n, long long c) {
  SuperPoly r(p, n);
  Coeff v = PrimeField(p).from_int(c);
  if (v) r.terms_.emplace_back(Monomial{}, v);
  return r;
}

SuperPoly SuperPoly::x(int p, int n, int i) {
  if (p == 2) throw ArgumentError("exterior generators are not available at p = 2");
  if (i < 1 || i > n) throw ArgumentError("x index out of range");
  Monomial m;
  m.ext = 1u << (i - 1);
  return monomial(p, n, m);
}

SuperPoly SuperPoly::y(int p, int n, int i) {
  if (i < 1 || i > n) throw ArgumentError("y index out of range");
  Monomial m;
  m.y[static_cast<std::size_t>(i - 1)] = 1;
  return monomial(p, n, m);
}

SuperPoly SuperPoly::monomial(int p, int n, const Monomial& m, Coeff c) {
  SuperPoly r(p, n);
  if (m.ext >> n) throw ArgumentError("exterior index out of range");
  if (m.ext && p == 2) throw ArgumentError("exterior generators are not available at p = 2");
  for (int i = n; i < kMaxVars; ++i)
    if (m.y[static_cast<std::size_t>(i)]) throw ArgumentError("y index out of range");
  c = static_cast<Coeff>(c % p);
  if (c) r.terms_.emplace_back(m, c);
  return r;
}

SuperPoly SuperPoly::from_terms(int p, int n, std::vector<Term> terms) {
  SuperPoly r(p, n);
  Accum acc;
  acc.reserve(terms.size());
  for (auto& [m, c] : terms) {
    if (m.ext >> n) throw ArgumentError("exterior index out of range");
    if (m.ext && p == 2) throw ArgumentError("exterior generators are not available at p = 2");
    accumulate(acc, m, static_cast<Coeff>(c % p), p);
  }
  r.terms_ = drain(acc);
  return r;
}

bool SuperPoly::is_pure() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.first.ext == 0; });
}

bool SuperPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  int d = terms_.front().first.degree();
  return std::all_of(terms_.begin(), terms_.end(), [d](const Term& t) { return t.first.degree() == d; });
}

int SuperPoly::degree() const { return terms_.empty() ? -1 : terms_.front().first.degree(); }

int SuperPoly::topological_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.first.topological_degree());
  return d;
}

const Term& SuperPoly::leading() const {
  if (terms_.empty()) throw ArgumentError("zero polynomial has no leading term");
  return terms_.front();
}

Coeff SuperPoly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return mono_greater(t.first, key); });
  return (it != terms_.end() && it->first == m) ? it->second : 0;
}

void SuperPoly::require_same_ring(const SuperPoly& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw ArgumentError("ring mismatch");
}

SuperPoly SuperPoly::operator+(const SuperPoly& o) const {
  require_same_ring(o);
  SuperPoly r(p_, n_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && mono_greater(a->first, b->first))) {
      r.terms_.push_back(*a++);
    } else if (a == terms_.end() || mono_greater(b->first, a->first)) {
      r.terms_.push_back(*b++);
    } else {
      auto c = static_cast<Coeff>((a->second + b->second) % p_);
      if (c) r.terms_.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  return r;
}

SuperPoly SuperPoly::operator-() const { return scale(static_cast<Coeff>(p_ - 1)); }

SuperPoly SuperPoly::operator-(const SuperPoly& o) const { return *this + (-o); }

SuperPoly SuperPoly::operator*(const SuperPoly& o) const {
  require_same_ring(o);
  SuperPoly r(p_, n_);
  if (terms_.empty() || o.terms_.empty()) return r;
  Accum acc;
  acc.reserve(terms_.size() * o.terms_.size() / 2 + 1);
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) {
      int s = ext_product_sign(ma.ext, mb.ext);
      if (s == 0) continue;
      Monomial m;
      m.ext = ma.ext | mb.ext;
      for (int i = 0; i < n_; ++i) {
        auto k = static_cast<std::size_t>(i);
        m.y[k] = add_exp(ma.y[k], mb.y[k]);
      }
      int c = ca * cb % p_;
      if (s < 0) c = (p_ - c) % p_;
      accumulate(acc, m, static_cast<Coeff>(c), p_);
    }
  r.terms_ = drain(acc);
  return r;
}

SuperPoly& SuperPoly::operator+=(const SuperPoly& o) { return *this = *this + o; }
SuperPoly& SuperPoly::operator-=(const SuperPoly& o) { return *this = *this - o; }
SuperPoly& SuperPoly::operator*=(const SuperPoly& o) { return *this = *this * o; }

SuperPoly SuperPoly::scale(Coeff c) const {
  SuperPoly r(p_, n_);
  c = static_cast<Coeff>(c % p_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.second = static_cast<Coeff>(t.second * c % p_);
  return r;
}

SuperPoly SuperPoly::pow(unsigned e) const {
  SuperPoly r = constant(p_, n_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

SuperPoly SuperPoly::frobenius(unsigned e) const {
  if (!is_pure()) throw ArgumentError("frobenius needs a purely polynomial argument");
  std::uint32_t f = 1;
  for (unsigned i = 0; i < e; ++i) f *= static_cast<std::uint32_t>(p_);
  SuperPoly r(p_, n_);
  r.terms_ = terms_;
  for (auto& t : r.terms_)
    for (auto& v : t.first.y) {
      std::uint32_t s = v * f;
      if (s > std::numeric_limits<std::uint16_t>::max()) throw ArgumentError("exponent overflow");
      v = static_cast<std::uint16_t>(s);
    }
  // scaling every exponent by the same factor preserves the order
  return r;
}

SuperPoly SuperPoly::component(int degree) const {
  SuperPoly r(p_, n_);
  for (const auto& t : terms_)
    if (t.first.degree() == degree) r.terms_.push_back(t);
  return r;
}

SuperPoly SuperPoly::widen(int n2) const {
  if (n2 < n_) throw ArgumentError("cannot narrow a polynomial");
  SuperPoly r(p_, n2);
  r.terms_ = terms_;
  return r;
}

bool SuperPoly::operator==(const SuperPoly& o) const { return p_ == o.p_ && n_ == o.n_ && terms_ == o.terms_; }

std::string SuperPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string body;
    auto append = [&body](const std::string& f) {
      if (!body.empty()) body += "*";
      body += f;
    };
    for (int i : m.ext_indices()) append("x" + std::to_string(i));
    for (int i = 0; i < n_; ++i) {
      auto e = m.y[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      append("y" + std::to_string(i + 1) + (e > 1 ? "^" + std::to_string(e) : ""));
    }
    if (body.empty())
      out += std::to_string(c);
    else if (c == 1)
      out += body;
    else
      out += std::to_string(c) + "*" + body;
  }
  return out;
}

// -------------------------------------------------------------- substitute

namespace {

enum class OpKind { Swap, Scale, Transvect };

struct ElemOp {
  OpKind kind;
  int i;
  int j;
  Coeff c;
};

// Column-reduces A to the identity, A C_1 ... C_m = I, and returns the
// inverses C_k^-1 in order; substituting them one after another is
// substitution by A.
std::vector<ElemOp> factor_elementary(const GLMatrix& g) {
  PrimeField F(g.p());
  int n = g.n();
  std::vector<Coeff> a = g.entries();
  auto at = [&](int r, int c) -> Coeff& { return a[static_cast<std::size_t>(r * n + c)]; };
  std::vector<ElemOp> ops;
  for (int j = 0; j < n; ++j) {
    int c = j;
    while (at(j, c) == 0) ++c;
    if (c != j) {
      for (int r = 0; r < n; ++r) std::swap(at(r, c), at(r, j));
      ops.push_back({OpKind::Swap, j, c, 0});
    }
    Coeff piv = at(j, j);
    if (piv != 1) {
      Coeff inv = F.inv(piv);
      for (int r = 0; r < n; ++r) at(r, j) = F.mul(at(r, j), inv);
      ops.push_back({OpKind::Scale, j, j, piv});
    }
    for (int k = 0; k < n; ++k) {
      if (k == j || at(j, k) == 0) continue;
      Coeff t = at(j, k);
      for (int r = 0; r < n; ++r) at(r, k) = F.sub(at(r, k), F.mul(t, at(r, j)));
      ops.push_back({OpKind::Transvect, j, k, t});
    }
  }
  return ops;
}

int between_count(std::uint32_t mask, int i, int j) {
  int lo = std::min(i, j), hi = std::max(i, j);
  std::uint32_t range = ((1u << hi) - 1) & ~((1u << (lo + 1)) - 1);
  return std::popcount(mask & range);
}

std::vector<Term> apply_op(const std::vector<Term>& terms, const ElemOp& op, int p) {
  PrimeField F(p);
  Accum acc;
  acc.reserve(terms.size() * 2);
  for (const auto& [m, c] : terms) {
    switch (op.kind) {
      case OpKind::Swap: {
        Monomial r = m;
        std::swap(r.y[static_cast<std::size_t>(op.i)], r.y[static_cast<std::size_t>(op.j)]);
        std::uint32_t bi = 1u << op.i, bj = 1u << op.j;
        bool hi = m.ext & bi, hj = m.ext & bj;
        Coeff cc = c;
        if (hi != hj) {
          r.ext = (m.ext & ~(bi | bj)) | (hi ? bj : bi);
          if (between_count(m.ext, op.i, op.j) & 1) cc = F.neg(cc);
        } else if (hi && hj) {
          // 2m+1 inversions when both are present
          cc = F.neg(cc);
        }
        accumulate(acc, r, cc, p);
        break;
      }
      case OpKind::Scale: {
        int e = m.y[static_cast<std::size_t>(op.i)] + ((m.ext >> op.i) & 1u);
        accumulate(acc, m, F.mul(c, F.pow(op.c, static_cast<std::uint64_t>(e))), p);
        break;
      }
      case OpKind::Transvect: {
        // y_j -> y_j + c y_i and x_j -> x_j + c x_i, with op.i the source row
        int src = op.i, dst = op.j;
        std::uint32_t bs = 1u << src, bd = 1u << dst;
        struct XPart {
          std::uint32_t ext;
          Coeff c;
        };
        XPart xs[2] = {{m.ext, 1}, {0, 0}};
        int nx = 1;
        if ((m.ext & bd) && !(m.ext & bs)) {
          Coeff s = (between_count(m.ext, src, dst) & 1) ? F.neg(op.c) : op.c;
          xs[nx++] = {(m.ext & ~bd) | bs, s};
        }
        auto a = m.y[static_cast<std::size_t>(dst)];
        Coeff cu = 1;
        for (std::uint32_t u = 0; u <= a; ++u) {
          Coeff b = binom_mod_p(a, u, p);
          if (b) {
            Monomial r = m;
            r.y[static_cast<std::size_t>(dst)] = static_cast<std::uint16_t>(a - u);
            r.y[static_cast<std::size_t>(src)] = add_exp(m.y[static_cast<std::size_t>(src)], u);
            Coeff base = F.mul(c, F.mul(b, cu));
            for (int k = 0; k < nx; ++k) {
              r.ext = xs[k].ext;
              accumulate(acc, r, F.mul(base, xs[k].c), p);
            }
          }
          cu = F.mul(cu, op.c);
        }
        break;
      }
    }
  }
  return drain(acc);
}

}  // namespace

SuperPoly substitute(const SuperPoly& f, const GLMatrix& g) {
  if (g.p() != f.p() || g.n() != f.n()) throw ArgumentError("matrix does not match the ring");
  std::vector<Term> cur = f.terms();
  for (const auto& op : factor_elementary(g)) cur = apply_op(cur, op, f.p());
  return SuperPoly::from_terms(f.p(), f.n(), std::move(cur));
}

// --------------------------------------------------------------- exact_div

SuperPoly exact_div(const SuperPoly& f, const SuperPoly& g) {
  if (f.p() != g.p() || f.n() != g.n()) throw ArgumentError("ring mismatch");
  if (!f.is_pure() || !g.is_pure()) throw ArgumentError("exact_div needs purely polynomial arguments");
  if (g.is_zero()) throw ArgumentError("division by zero");
  PrimeField F(f.p());
  const auto& [lm, lc] = g.leading();
  Coeff lc_inv = F.inv(lc);
  SuperPoly r = f;
  std::vector<Term> q;
  while (!r.is_zero()) {
    const auto& [rm, rc] = r.leading();
    Monomial t;
    for (int i = 0; i < f.n(); ++i) {
      auto k = static_cast<std::size_t>(i);
      if (rm.y[k] < lm.y[k]) throw InexactDivision("divisor does not divide dividend");
      t.y[k] = static_cast<std::uint16_t>(rm.y[k] - lm.y[k]);
    }
    Coeff c = F.mul(rc, lc_inv);
    q.emplace_back(t, c);
    r -= SuperPoly::monomial(f.p(), f.n(), t, c) * g;
  }
  return SuperPoly::from_terms(f.p(), f.n(), std::move(q));
}

// ------------------------------------------------------------------- parse

namespace {

class XYParser {
 public:
  XYParser(const std::string& s, int p, int n) : s_(s), p_(p), n_(n) {}

  SuperPoly run() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    SuperPoly acc(p_, n_);
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    }
    for (;;) {
      SuperPoly t = term();
      acc = negate ? acc - t : acc + t;
      skip();
      if (pos_ >= s_.size()) break;
      char c = s_[pos_];
      if (c != '+' && c != '-') throw ParseError(std::string("unexpected '") + c + "'", pos_);
      negate = c == '-';
      ++pos_;
    }
    return acc;
  }

 private:
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  long long number() {
    skip();
    std::size_t start = pos_;
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > (1LL << 40)) throw ParseError("number too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number", start);
    return v;
  }
  SuperPoly term() {
    SuperPoly t = SuperPoly::constant(p_, n_, 1);
    bool any = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t = SuperPoly::constant(p_, n_, number());
      any = true;
    }
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        c = peek();
        if (c != 'x' && c != 'y') throw ParseError("expected a factor after '*'", pos_);
      }
      if (c != 'x' && c != 'y') break;
      std::size_t at = pos_;
      ++pos_;
      long long idx = number();
      if (idx < 1 || idx > n_) throw ParseError("variable index out of range", at);
      long long e = 1;
      if (peek() == '^') {
        ++pos_;
        e = number();
      }
      SuperPoly f = c == 'x' ? SuperPoly::x(p_, n_, static_cast<int>(idx)) : SuperPoly::y(p_, n_, static_cast<int>(idx));
      t = t * f.pow(static_cast<unsigned>(e));
      any = true;
    }
    if (!any) throw ParseError("expected a term", pos_);
    return t;
  }

  const std::string& s_;
  int p_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace

SuperPoly parse_superpoly(const std::string& text, int p, int n) { return XYParser(text, p, n).run(); }

// -------------------------------------------------------------------- JSON

std::string to_json(const SuperPoly& f) {
  nlohmann::ordered_json j;
  j["p"] = f.p();
  j["n"] = f.n();
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [m, c] : f.terms()) {
    nlohmann::ordered_json t;
    t["c"] = static_cast<int>(c);
    t["ext"] = m.ext_indices();
    std::vector<int> ys;
    for (int i = 0; i < f.n(); ++i) ys.push_back(m.y[static_cast<std::size_t>(i)]);
    t["y"] = ys;
    j["terms"].push_back(t);
  }
  return j.dump();
}

SuperPoly superpoly_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("invalid JSON: ") + e.what());
  }
  try {
    int p = j.at("p").get<int>(), n = j.at("n").get<int>();
    require_ring(p, n);
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      Monomial m;
      int last = 0;
      for (int i : t.at("ext").get<std::vector<int>>()) {
        if (i < 1 || i > n) throw ArgumentError("exterior index out of range");
        if (i <= last) throw ArgumentError("exterior indices must be strictly increasing");
        m.ext |= 1u << (i - 1);
        last = i;
      }
      auto ys = t.at("y").get<std::vector<int>>();
      if (static_cast<int>(ys.size()) != n) throw ArgumentError("y vector length must equal n");
      for (int i = 0; i < n; ++i) {
        if (ys[static_cast<std::size_t>(i)] < 0) throw ArgumentError("negative exponent");
        m.y[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(ys[static_cast<std::size_t>(i)]);
      }
      terms.emplace_back(m, PrimeField(p).from_int(t.at("c").get<long long>()));
    }
    return SuperPoly::from_terms(p, n, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace dickson
