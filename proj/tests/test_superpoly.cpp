#include <map>

#include "doctest.h"
#include "dickson/errors.hpp"
#include "dickson/matrix.hpp"
#include "dickson/superpoly.hpp"
#include "support.hpp"

using namespace dickson;
using testutil::Rng;

namespace {

SuperPoly X(int p, int n, int i) { return SuperPoly::x(p, n, i); }
SuperPoly Y(int p, int n, int i) { return SuperPoly::y(p, n, i); }

// Terms with exactly k exterior factors, so the element has a parity.
SuperPoly random_with_ext_count(Rng& rng, int p, int n, int k, int ydeg, int terms) {
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    Monomial m;
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::shuffle(idx.begin(), idx.end(), rng);
    for (int j = 0; j < k; ++j) m.ext |= 1u << idx[static_cast<std::size_t>(j)];
    for (int d = 0; d < ydeg; ++d) ++m.y[static_cast<std::size_t>(testutil::uniform(rng, 0, n - 1))];
    ts.emplace_back(m, static_cast<Coeff>(testutil::uniform(rng, 1, p - 1)));
  }
  return SuperPoly::from_terms(p, n, ts);
}

// Pascal triangle mod p, independent of Lucas' theorem
Coeff pascal(int m, int k, int p) {
  std::vector<std::vector<int>> c(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) {
    c[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i + 1), 1);
    for (int j = 1; j < i; ++j)
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
           c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]) % p;
  }
  return k > m ? 0 : static_cast<Coeff>(c[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)]);
}

}  // namespace

TEST_CASE("addition") {
  Rng rng(11);
  SuperPoly f = testutil::random_poly(rng, 3, 2, 4, 6, true);
  CHECK(f + SuperPoly(3, 2) == f);
  CHECK((Y(3, 2, 1) + Y(3, 2, 1).scale(2)).is_zero());
  CHECK(Y(2, 2, 1) + Y(2, 2, 2) + Y(2, 2, 2) == Y(2, 2, 1));
  CHECK_THROWS_AS(Y(3, 2, 1) + Y(3, 3, 1), ArgumentError);
  CHECK_THROWS_AS(Y(3, 2, 1) + Y(5, 2, 1), ArgumentError);
}

TEST_CASE("multiplication signs") {
  CHECK((X(3, 2, 1) * X(3, 2, 1)).is_zero());
  SuperPoly x2x1 = X(3, 2, 2) * X(3, 2, 1);
  CHECK(x2x1 == (X(3, 2, 1) * X(3, 2, 2)).scale(2));
  CHECK(x2x1.terms().front().second == 2);
  SuperPoly f = (Y(2, 2, 2) + Y(2, 2, 1)) * Y(2, 2, 2);
  CHECK(f == Y(2, 2, 2).pow(2) + Y(2, 2, 1) * Y(2, 2, 2));
  CHECK(f.to_string() == "y1*y2 + y2^2");
  CHECK((X(5, 3, 3) * X(5, 3, 1) * X(5, 3, 2)) == X(5, 3, 1) * X(5, 3, 2) * X(5, 3, 3));
}

TEST_CASE("exterior generators are rejected at p = 2") {
  CHECK_THROWS_AS(SuperPoly::x(2, 3, 1), ArgumentError);
  CHECK_THROWS_AS(parse_superpoly("x1*y2", 2, 2), ArgumentError);
}

TEST_CASE("ring axioms on random elements") {
  Rng rng(2024);
  for (int p : {2, 3, 5})
    for (int n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 15; ++trial) {
        auto f = testutil::random_poly(rng, p, n, 6, 5, true);
        auto g = testutil::random_poly(rng, p, n, 6, 5, true);
        auto h = testutil::random_poly(rng, p, n, 6, 5, true);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK((f + g) * h == f * h + g * h);
        CHECK(f + g == g + f);
      }
}

TEST_CASE("super-commutativity") {
  Rng rng(7);
  for (int p : {3, 5})
    for (int n = 2; n <= 3; ++n)
      for (int trial = 0; trial < 20; ++trial) {
        int a = testutil::uniform(rng, 0, n), b = testutil::uniform(rng, 0, n);
        auto f = random_with_ext_count(rng, p, n, a, testutil::uniform(rng, 0, 4), 4);
        auto g = random_with_ext_count(rng, p, n, b, testutil::uniform(rng, 0, 4), 4);
        SuperPoly gf = g * f;
        if ((a * b) % 2) gf = -gf;
        CHECK(f * g == gf);
      }
}

TEST_CASE("binomials mod p") {
  CHECK(binom_mod_p(9, 0, 3) == 1);
  CHECK(binom_mod_p(5, 1, 5) == 0);
  CHECK(binom_mod_p(7, 2, 2) == 1);
  for (int p : {2, 3, 5, 7})
    for (int m = 0; m < 40; ++m)
      for (int k = 0; k <= m + 1; ++k) CHECK(binom_mod_p(m, k, p) == pascal(m, k, p));
}

TEST_CASE("prime field") {
  PrimeField F(7);
  for (Coeff a = 1; a < 7; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
  CHECK(F.from_int(-1) == 6);
  CHECK(F.primitive_root() == 3);
  CHECK_THROWS_AS(PrimeField(4), ArgumentError);
  CHECK_THROWS_AS(PrimeField(17), ArgumentError);
}

TEST_CASE("substitution") {
  Rng rng(5);
  auto f = testutil::random_poly(rng, 3, 2, 5, 6, true);
  CHECK(substitute(f, GLMatrix::identity(3, 2)) == f);
  CHECK(substitute(Y(3, 2, 1), GLMatrix::omega(3, 2)) == Y(3, 2, 2));
  CHECK(substitute(X(3, 2, 1) * X(3, 2, 2), GLMatrix::omega(3, 2)) == (X(3, 2, 1) * X(3, 2, 2)).scale(2));
  CHECK_THROWS_AS(GLMatrix(3, {{1, 2}, {2, 1}}), ArgumentError);
}

TEST_CASE("substitution agrees with naive expansion") {
  Rng rng(99);
  for (int p : {2, 3, 5})
    for (int n = 1; n <= 4; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        auto f = testutil::random_poly(rng, p, n, 7, 6, true);
        auto g = testutil::random_matrix(rng, p, n);
        CHECK(substitute(f, g) == testutil::naive_substitute(f, g));
      }
}

TEST_CASE("substitution is a left action and a ring homomorphism") {
  Rng rng(3);
  int left_law = 0, right_law = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto f = testutil::random_poly(rng, 3, 2, 6, 6, true);
    auto f2 = testutil::random_poly(rng, 3, 2, 6, 6, true);
    auto g = testutil::random_matrix(rng, 3, 2), h = testutil::random_matrix(rng, 3, 2);
    SuperPoly lhs = substitute(substitute(f, g), h);
    left_law += lhs == substitute(f, h * g);
    right_law += lhs == substitute(f, g * h);
    CHECK(substitute(f * f2, g) == substitute(f, g) * substitute(f2, g));
    CHECK(substitute(f, g).degree() == f.degree());
  }
  CHECK(left_law == 30);
  CHECK(right_law < 30);
}

TEST_CASE("exact division") {
  int p = 2, n = 2;
  CHECK(exact_div(Y(p, n, 1).pow(2), Y(p, n, 1)) == Y(p, n, 1));
  CHECK_THROWS_AS(exact_div(Y(p, n, 1), Y(p, n, 2)), InexactDivision);
  CHECK_THROWS_AS(exact_div(Y(p, n, 1), SuperPoly(p, n)), ArgumentError);
  SuperPoly l2 = Y(p, n, 1) * Y(p, n, 2).pow(2) + Y(p, n, 1).pow(2) * Y(p, n, 2);
  SuperPoly l20 = Y(p, n, 1).pow(2) * Y(p, n, 2).pow(4) + Y(p, n, 1).pow(4) * Y(p, n, 2).pow(2);
  CHECK(exact_div(l20, l2) == l2);
  Rng rng(8);
  for (int q : {2, 3, 5})
    for (int m = 1; m <= 3; ++m)
      for (int trial = 0; trial < 10; ++trial) {
        auto f = testutil::random_poly(rng, q, m, 6, 5, false);
        auto g = testutil::random_poly(rng, q, m, 5, 4, false);
        if (g.is_zero()) continue;
        CHECK(exact_div(f * g, g) == f);
      }
}

TEST_CASE("text and JSON round trips") {
  Rng rng(13);
  for (int p : {2, 3, 5})
    for (int n = 1; n <= 3; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        auto f = testutil::random_poly(rng, p, n, 6, 6, true);
        CHECK(parse_superpoly(f.to_string(), p, n) == f);
        std::string j = to_json(f);
        CHECK(superpoly_from_json(j) == f);
        CHECK(to_json(superpoly_from_json(j)) == j);
      }
  std::string golden = R"({"p":3,"n":2,"terms":[{"c":2,"ext":[1],"y":[5,0]}]})";
  SuperPoly g = superpoly_from_json(golden);
  CHECK(g == (X(3, 2, 1) * Y(3, 2, 1).pow(5)).scale(2));
  CHECK(to_json(g) == golden);
  CHECK(parse_superpoly("y1+y1", 2, 2).is_zero());
  CHECK(parse_superpoly("2*x1*y1^5 - y2", 3, 2).to_string() == "2*x1*y1^5 + 2*y2");
  CHECK_THROWS_AS(parse_superpoly("", 3, 2), ParseError);
  CHECK_THROWS_AS(parse_superpoly("y3", 3, 2), ParseError);
  CHECK_THROWS_AS(superpoly_from_json(R"({"p":3,"n":2,"terms":[{"c":1,"ext":[2,1],"y":[0,0]}]})"), ArgumentError);
}

TEST_CASE("monomial order") {
  Monomial a, b;
  a.y[0] = 2;
  b.y[0] = 1;
  b.y[1] = 1;
  CHECK(mono_greater(a, b));
  Monomial c, d;
  c.ext = 1;
  d.ext = 2;
  CHECK(mono_greater(c, d));
  CHECK(!mono_greater(c, c));
  CHECK(ext_product_sign(2, 1) == -1);
  CHECK(ext_product_sign(1, 2) == 1);
  CHECK(ext_product_sign(5, 2) == -1);
  CHECK(ext_product_sign(3, 1) == 0);
}
