#include "dickson/glgroup.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "json.hpp"

#include "dickson/errors.hpp"

namespace dickson {

Composition::Composition(std::vector<int> p) : parts(std::move(p)) {
  if (parts.empty()) throw ArgumentError("empty composition");
  for (int v : parts)
    if (v < 1) throw ArgumentError("composition parts must be positive");
}

int Composition::n() const {
  int s = 0;
  for (int v : parts) s += v;
  return s;
}

std::vector<int> Composition::nu() const {
  std::vector<int> out{0};
  for (int i = 1; i <= length(); ++i) out.push_back(out.back() + block(i));
  return out;
}

bool Composition::refines_to(const Composition& o) const {
  if (n() != o.n()) return false;
  auto a = nu(), b = o.nu();
  return std::includes(a.begin(), a.end(), b.begin(), b.end());
}

std::string Composition::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ')';
  return os.str();
}

std::string Composition::to_json() const { return nlohmann::json(parts).dump(); }

Composition Composition::from_json(const std::string& text) {
  try {
    return Composition(nlohmann::json::parse(text).get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("bad composition JSON: ") + e.what());
  }
}

namespace {

// Block index (0-based from the top-left) of each coordinate.
std::vector<int> block_of(const Composition& I) {
  std::vector<int> out;
  for (int b = 1; b <= I.length(); ++b)
    for (int k = 0; k < I.block(b); ++k) out.push_back(b - 1);
  return out;
}

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::vector<GLMatrix> parabolic_generators(int p, const Composition& I, bool transposed) {
  require_supported_prime(p);
  int n = I.n();
  PrimeField F(p);
  std::vector<GLMatrix> gens;
  auto blk = block_of(I);
  auto nu = I.nu();
  for (int b = 0; b < I.length(); ++b) {
    int lo = nu[static_cast<std::size_t>(b)], hi = nu[static_cast<std::size_t>(b + 1)];
    for (int i = lo; i < hi; ++i)
      for (int j = lo; j < hi; ++j)
        if (i != j) gens.push_back(GLMatrix::transvection(p, n, i, j));
    if (p > 2) {
      std::vector<Coeff> d(static_cast<std::size_t>(n), 1);
      d[static_cast<std::size_t>(lo)] = F.primitive_root();
      gens.push_back(GLMatrix::diagonal(p, d));
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (blk[static_cast<std::size_t>(i)] < blk[static_cast<std::size_t>(j)])
        gens.push_back(GLMatrix::transvection(p, n, i, j));
  if (gens.empty()) gens.push_back(GLMatrix::identity(p, n));
  if (transposed)
    for (auto& g : gens) g = g.transpose();
  return gens;
}

bool in_parabolic(const Composition& I, const GLMatrix& g, bool transposed) {
  if (I.n() != g.n()) throw ArgumentError("composition and matrix size differ");
  auto blk = block_of(I);
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j < g.n(); ++j) {
      Coeff v = transposed ? g.at(j, i) : g.at(i, j);
      if (v && blk[static_cast<std::size_t>(i)] > blk[static_cast<std::size_t>(j)]) return false;
    }
  return true;
}

std::uint64_t gl_order(int p, int n) {
  std::uint64_t r = 1;
  for (int k = 0; k < n; ++k) r *= ipow(static_cast<std::uint64_t>(p), n) - ipow(static_cast<std::uint64_t>(p), k);
  return r;
}

std::uint64_t parabolic_order(int p, const Composition& I) {
  std::uint64_t r = 1;
  int before = 0;
  for (int b = 1; b <= I.length(); ++b) {
    r *= gl_order(p, I.block(b)) * ipow(static_cast<std::uint64_t>(p), before * I.block(b));
    before += I.block(b);
  }
  return r;
}

std::vector<GLMatrix> gl_generators(int p, int n) { return parabolic_generators(p, Composition({n})); }

std::vector<GLMatrix> unipotent_generators(int p, int n, bool transposed) {
  std::vector<GLMatrix> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gens.push_back(GLMatrix::transvection(p, n, i, j));
  if (gens.empty()) gens.push_back(GLMatrix::identity(p, n));
  if (transposed)
    for (auto& g : gens) g = g.transpose();
  return gens;
}

bool is_unipotent_upper(const GLMatrix& g) {
  for (int i = 0; i < g.n(); ++i)
    for (int j = 0; j <= i; ++j)
      if (g.at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

namespace {

using PolyMod = std::vector<Coeff>;

// a * b mod the monic polynomial x^n + sum c_i x^i.
PolyMod mulmod(const PolyMod& a, const PolyMod& b, const std::vector<Coeff>& c, const PrimeField& F) {
  std::size_t n = c.size();
  std::vector<Coeff> prod(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
  for (std::size_t k = 2 * n - 1; k >= n; --k) {
    Coeff t = prod[k];
    if (!t) continue;
    prod[k] = 0;
    for (std::size_t i = 0; i < n; ++i) prod[k - n + i] = F.sub(prod[k - n + i], F.mul(t, c[i]));
  }
  prod.resize(n);
  return prod;
}

PolyMod powmod_x(std::uint64_t e, const std::vector<Coeff>& c, const PrimeField& F) {
  std::size_t n = c.size();
  PolyMod result(n, 0), base(n, 0);
  result[0] = 1;
  if (n == 1) {
    base[0] = F.neg(c[0]);
  } else {
    base[1] = 1;
  }
  while (e) {
    if (e & 1) result = mulmod(result, base, c, F);
    base = mulmod(base, base, c, F);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      out.push_back(q);
      while (m % q == 0) m /= q;
    }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace

bool is_primitive_poly(int p, const std::vector<Coeff>& c) {
  PrimeField F(p);
  int n = static_cast<int>(c.size());
  if (n < 1 || c[0] == 0) return false;
  std::uint64_t order = ipow(static_cast<std::uint64_t>(p), n) - 1;
  PolyMod one(static_cast<std::size_t>(n), 0);
  one[0] = 1;
  if (powmod_x(order, c, F) != one) return false;
  for (auto q : prime_factors(order))
    if (powmod_x(order / q, c, F) == one) return false;
  return true;
}

std::vector<Coeff> find_primitive_poly(int p, int n) {
  require_supported_prime(p);
  if (n < 1 || n > kMaxVars) throw ArgumentError("dimension out of range");
  std::uint64_t total = ipow(static_cast<std::uint64_t>(p), n);
  for (std::uint64_t v = 0; v < total; ++v) {
    std::vector<Coeff> c(static_cast<std::size_t>(n));
    std::uint64_t w = v;
    for (int i = 0; i < n; ++i) {
      c[static_cast<std::size_t>(i)] = static_cast<Coeff>(w % static_cast<std::uint64_t>(p));
      w /= static_cast<std::uint64_t>(p);
    }
    if (is_primitive_poly(p, c)) return c;
  }
  throw ConsistencyError("no primitive polynomial found");
}

GLMatrix companion_matrix(int p, const std::vector<Coeff>& c) {
  PrimeField F(p);
  int n = static_cast<int>(c.size());
  std::vector<Coeff> a(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i + 1 < n; ++i) a[static_cast<std::size_t>((i + 1) * n + i)] = 1;
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i * n + n - 1)] = F.neg(c[static_cast<std::size_t>(i)]);
  return GLMatrix(p, n, std::move(a));
}

std::vector<Coeff> eval_poly_at_matrix(const std::vector<Coeff>& c, const GLMatrix& a) {
  int p = a.p(), n = a.n();
  PrimeField F(p);
  std::size_t nn = static_cast<std::size_t>(n * n);
  // Horner on plain arrays, since intermediate values may be singular.
  auto matmul = [&](const std::vector<Coeff>& u, const std::vector<Coeff>& v) {
    std::vector<Coeff> w(nn, 0);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) {
        Coeff t = u[static_cast<std::size_t>(i * n + k)];
        if (!t) continue;
        for (int j = 0; j < n; ++j) {
          auto& dst = w[static_cast<std::size_t>(i * n + j)];
          dst = F.add(dst, F.mul(t, v[static_cast<std::size_t>(k * n + j)]));
        }
      }
    return w;
  };
  std::vector<Coeff> acc(nn, 0);
  for (int i = 0; i < n; ++i) acc[static_cast<std::size_t>(i * n + i)] = 1;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    acc = matmul(acc, a.entries());
    for (int i = 0; i < n; ++i) {
      auto& d = acc[static_cast<std::size_t>(i * n + i)];
      d = F.add(d, c[static_cast<std::size_t>(k)]);
    }
  }
  return acc;
}

std::string tag_name(CosetTag t) {
  switch (t) {
    case CosetTag::P1n1: return "p1n1";
    case CosetTag::Pn11: return "pn11";
    case CosetTag::Un: return "un";
  }
  return "?";
}

CosetTag tag_from_name(const std::string& s) {
  if (s == "p1n1") return CosetTag::P1n1;
  if (s == "pn11") return CosetTag::Pn11;
  if (s == "un") return CosetTag::Un;
  throw ArgumentError("unknown subgroup tag: " + s);
}

Composition tag_composition(int n, CosetTag tag) {
  if (n < 2 && tag != CosetTag::Un) return Composition({n});
  switch (tag) {
    case CosetTag::P1n1: return Composition({n - 1, 1});
    case CosetTag::Pn11: return Composition({1, n - 1});
    case CosetTag::Un: break;
  }
  return Composition(std::vector<int>(static_cast<std::size_t>(n), 1));
}

bool in_subgroup(CosetTag tag, const GLMatrix& g, bool transposed) {
  if (tag == CosetTag::Un) return is_unipotent_upper(transposed ? g.transpose() : g);
  return in_parabolic(tag_composition(g.n(), tag), g, transposed);
}

std::vector<GLMatrix> subgroup_generators(int p, int n, CosetTag tag, bool transposed) {
  if (tag == CosetTag::Un) return unipotent_generators(p, n, transposed);
  return parabolic_generators(p, tag_composition(n, tag), transposed);
}

std::uint64_t subgroup_index(int p, int n, CosetTag tag) {
  if (tag == CosetTag::Un) {
    std::uint64_t r = 1;
    for (int m = 1; m <= n; ++m) r *= ipow(static_cast<std::uint64_t>(p), m) - 1;
    return r;
  }
  return gl_order(p, n) / parabolic_order(p, tag_composition(n, tag));
}

GLMatrix normalize_scalar(const GLMatrix& g) {
  PrimeField F(g.p());
  for (int i = 0; i < g.n(); ++i)
    if (g.at(i, 0)) return g.scaled(F.inv(g.at(i, 0)));
  throw ConsistencyError("zero first column in an invertible matrix");
}

std::vector<Coeff> coset_key(CosetTag tag, const GLMatrix& g, bool transposed) {
  if (transposed) return coset_key(tag, g.inverse().transpose(), false);
  int n = g.n();
  PrimeField F(g.p());
  auto normalized = [&](std::vector<Coeff> v) {
    for (Coeff c : v)
      if (c) {
        Coeff inv = F.inv(c);
        for (auto& w : v) w = F.mul(w, inv);
        break;
      }
    return v;
  };
  switch (tag) {
    case CosetTag::P1n1: {
      // g*H is determined by the line through the first column.
      std::vector<Coeff> col;
      for (int i = 0; i < n; ++i) col.push_back(g.at(i, 0));
      return normalized(col);
    }
    case CosetTag::Pn11: {
      // ... and here by the last row of g^{-1} up to scalar.
      GLMatrix gi = g.inverse();
      std::vector<Coeff> row;
      for (int j = 0; j < n; ++j) row.push_back(gi.at(n - 1, j));
      return normalized(row);
    }
    case CosetTag::Un: break;
  }
  // Right multiplication by U_n adds multiples of earlier columns to later
  // ones; clear each column at the pivot rows of the columns before it.
  std::vector<std::vector<Coeff>> cols(static_cast<std::size_t>(n), std::vector<Coeff>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = g.at(i, j);
  std::vector<int> pivot(static_cast<std::size_t>(n), -1);
  std::vector<Coeff> key;
  for (int j = 0; j < n; ++j) {
    auto& c = cols[static_cast<std::size_t>(j)];
    for (int k = 0; k < j; ++k) {
      int r = pivot[static_cast<std::size_t>(k)];
      const auto& ck = cols[static_cast<std::size_t>(k)];
      Coeff f = F.mul(c[static_cast<std::size_t>(r)], F.inv(ck[static_cast<std::size_t>(r)]));
      if (!f) continue;
      for (int i = 0; i < n; ++i)
        c[static_cast<std::size_t>(i)] = F.sub(c[static_cast<std::size_t>(i)], F.mul(f, ck[static_cast<std::size_t>(i)]));
    }
    for (int i = 0; i < n; ++i)
      if (c[static_cast<std::size_t>(i)]) {
        pivot[static_cast<std::size_t>(j)] = i;
        break;
      }
    key.insert(key.end(), c.begin(), c.end());
  }
  return key;
}

bool distinct_left_cosets(const CosetFamily& fam) {
  std::set<std::vector<Coeff>> seen;
  for (const auto& g : fam.reps)
    if (!seen.insert(coset_key(fam.tag, g, fam.transposed)).second) return false;
  return true;
}

namespace {

// A_m acting on the last m coordinates and fixing y_1..y_{n-m}.
GLMatrix embed_last(const GLMatrix& a, int n) {
  int m = a.n();
  std::vector<Coeff> e(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n - m; ++i) e[static_cast<std::size_t>(i * n + i)] = 1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) e[static_cast<std::size_t>((n - m + i) * n + (n - m + j))] = a.at(i, j);
  return GLMatrix(a.p(), n, std::move(e));
}

}  // namespace

CosetFamily coset_reps(int p, int n, CosetTag tag, bool transposed, std::optional<std::vector<Coeff>> prim) {
  require_supported_prime(p);
  CosetFamily fam{tag, p, n, transposed, prim ? *prim : find_primitive_poly(p, n), {}};
  if (static_cast<int>(fam.prim.size()) != n || !is_primitive_poly(p, fam.prim))
    throw ArgumentError("coset family needs a primitive polynomial of degree n");
  std::uint64_t order = ipow(static_cast<std::uint64_t>(p), n) - 1;
  if (tag == CosetTag::Un) {
    // (A_n^{i_n})^{-1} ... (A_1^{i_1})^{-1} with 0 <= i_m <= p^m - 2.
    std::vector<std::vector<GLMatrix>> pieces;
    for (int m = n; m >= 1; --m) {
      GLMatrix a = embed_last(companion_matrix(p, m == n ? fam.prim : find_primitive_poly(p, m)), n);
      GLMatrix ainv = a.inverse();
      std::vector<GLMatrix> powers{GLMatrix::identity(p, n)};
      for (std::uint64_t i = 1; i + 1 < ipow(static_cast<std::uint64_t>(p), m); ++i) powers.push_back(powers.back() * ainv);
      pieces.push_back(std::move(powers));
    }
    std::vector<GLMatrix> acc{GLMatrix::identity(p, n)};
    for (const auto& piece : pieces) {
      std::vector<GLMatrix> next;
      next.reserve(acc.size() * piece.size());
      for (const auto& g : acc)
        for (const auto& h : piece) next.push_back(g * h);
      acc = std::move(next);
    }
    fam.reps = std::move(acc);
  } else {
    GLMatrix a = companion_matrix(p, fam.prim);
    std::set<std::vector<Coeff>> seen;
    GLMatrix power = GLMatrix::identity(p, n);
    for (std::uint64_t i = 0; i < order; ++i, power = power * a) {
      GLMatrix g = tag == CosetTag::P1n1 ? power.inverse() : power.transpose();
      // A^i ~ cA^j, so the scalar class of the generating power is the key.
      GLMatrix canon = normalize_scalar(g);
      if (!seen.insert(canon.entries()).second) continue;
      fam.reps.push_back(canon);
    }
  }
  if (transposed)
    for (auto& g : fam.reps) g = g.inverse().transpose();
  if (fam.reps.size() != subgroup_index(p, n, tag)) throw ConsistencyError("coset family has the wrong size");
  if (!distinct_left_cosets(fam)) throw ConsistencyError("coset representatives are not distinct");
  if (tag != CosetTag::Un && fam.reps.size() % static_cast<std::size_t>(p) != 1 % static_cast<std::size_t>(p))
    throw ConsistencyError("parabolic index is not 1 mod p");
  return fam;
}

bool is_invariant(const SuperPoly& f, const std::vector<GLMatrix>& gens) {
  for (const auto& g : gens) {
    if (g.n() != f.n() || g.p() != f.p()) throw ArgumentError("matrix and polynomial rings differ");
    if (substitute(f, g) != f) return false;
  }
  return true;
}

std::vector<GLMatrix> enumerate_group(const std::vector<GLMatrix>& gens, std::size_t limit) {
  if (gens.empty()) throw ArgumentError("no generators");
  std::set<GLMatrix> seen{GLMatrix::identity(gens[0].p(), gens[0].n())};
  std::deque<GLMatrix> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    GLMatrix g = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      GLMatrix h = g * s;
      if (seen.insert(h).second) {
        if (seen.size() > limit) throw ArgumentError("group exceeds enumeration limit");
        queue.push_back(h);
      }
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace dickson
