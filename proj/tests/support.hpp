#ifndef DICKSON_TEST_SUPPORT_HPP
#define DICKSON_TEST_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "dickson/matrix.hpp"
#include "dickson/superpoly.hpp"

namespace testutil {

using dickson::Coeff;
using dickson::GLMatrix;
using dickson::Monomial;
using dickson::SuperPoly;

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random monomial of the given algebraic degree.
inline Monomial random_monomial(Rng& rng, int n, int degree, bool allow_ext) {
  Monomial m;
  int ext_count = 0;
  if (allow_ext) {
    for (int i = 0; i < n && ext_count < degree; ++i)
      if (uniform(rng, 0, 2) == 0) {
        m.ext |= 1u << i;
        ++ext_count;
      }
  }
  for (int left = degree - ext_count; left > 0; --left) ++m.y[static_cast<std::size_t>(uniform(rng, 0, n - 1))];
  return m;
}

/// Random polynomial with terms of degree at most max_degree; homogeneous
/// when degree >= 0 is given.
inline SuperPoly random_poly(Rng& rng, int p, int n, int max_degree, int terms, bool allow_ext, int degree = -1) {
  std::vector<dickson::Term> ts;
  for (int k = 0; k < terms; ++k) {
    int d = degree >= 0 ? degree : uniform(rng, 0, max_degree);
    ts.emplace_back(random_monomial(rng, n, d, allow_ext && p != 2), static_cast<Coeff>(uniform(rng, 1, p - 1)));
  }
  return SuperPoly::from_terms(p, n, ts);
}

inline GLMatrix random_matrix(Rng& rng, int p, int n) {
  for (;;) {
    std::vector<Coeff> a(static_cast<std::size_t>(n * n));
    for (auto& v : a) v = static_cast<Coeff>(uniform(rng, 0, p - 1));
    if (dickson::determinant(p, n, a)) return GLMatrix(p, n, a);
  }
}

/// Substitution by expanding every monomial as a product of linear forms.
inline SuperPoly naive_substitute(const SuperPoly& f, const GLMatrix& g) {
  int p = f.p(), n = f.n();
  std::vector<SuperPoly> xs, ys;
  for (int k = 1; k <= n; ++k) {
    SuperPoly lx(p, n), ly(p, n);
    for (int i = 1; i <= n; ++i) {
      Coeff a = g.at(i - 1, k - 1);
      if (p != 2) lx += SuperPoly::x(p, n, i).scale(a);
      ly += SuperPoly::y(p, n, i).scale(a);
    }
    xs.push_back(lx);
    ys.push_back(ly);
  }
  SuperPoly out(p, n);
  for (const auto& [m, c] : f.terms()) {
    SuperPoly t = SuperPoly::constant(p, n, c);
    for (int i : m.ext_indices()) t = t * xs[static_cast<std::size_t>(i - 1)];
    for (int k = 0; k < n; ++k) t = t * ys[static_cast<std::size_t>(k)].pow(m.y[static_cast<std::size_t>(k)]);
    out += t;
  }
  return out;
}

}  // namespace testutil

#endif
