#include "doctest.h"
#include "dickson/errors.hpp"
#include "dickson/modbasis.hpp"
#include "dickson/transfer.hpp"
#include "support.hpp"

using namespace dickson;
using testutil::Rng;
using testutil::uniform;

namespace {

GenExpr d(int p, int n, int m, int i, int e = 1) { return GenExpr::symbol(p, n, GenSymbol::d(m, i), e); }

SuperPoly random_dickson(Rng& rng, int p, int n) {
  SuperPoly out(p, n);
  for (int t = 0; t < 2; ++t) {
    SuperPoly m = SuperPoly::constant(p, n, uniform(rng, 1, p - 1));
    for (int i = 0; i < n; ++i) m *= expand_symbol(p, n, GenSymbol::d(n, i)).pow(static_cast<unsigned>(uniform(rng, 0, 1)));
    out += m;
  }
  return out;
}

SuperPoly random_line_invariant(Rng& rng, int p, int n) {
  SuperPoly m = SuperPoly::constant(p, n, uniform(rng, 1, p - 1));
  m *= expand_symbol(p, n, GenSymbol::h(1)).pow(static_cast<unsigned>((p - 1) * uniform(rng, 0, 4)));
  for (int i = 1; i < n; ++i)
    m *= expand_symbol(p, n, GenSymbol::d_parab(n, i)).pow(static_cast<unsigned>(uniform(rng, 0, 2)));
  return m;
}

GLMatrix random_element(Rng& rng, const std::vector<GLMatrix>& gens) {
  GLMatrix g = GLMatrix::identity(gens[0].p(), gens[0].n());
  for (int k = 0; k < 12; ++k) g = g * gens[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(gens.size()) - 1))];
  return g;
}

}  // namespace

TEST_CASE("transfer of 1 is the index mod p") {
  for (auto [p, n] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}, {5, 2}}) {
    SuperPoly one = SuperPoly::constant(p, n, 1);
    CHECK(transfer(one, CosetTag::P1n1) == one);
    CHECK(transfer(one, CosetTag::Pn11) == one);
    // [GL : U_n] = prod (p^m - 1), which is (-1)^n mod p
    CHECK(transfer(one, CosetTag::Un) == SuperPoly::constant(p, n, n % 2 ? p - 1 : 1));
  }
}

TEST_CASE("Dickson elements pass through the parabolic transfers") {
  Rng rng(11);
  for (auto [p, n] : {std::pair{2, 3}, {3, 2}, {5, 2}}) {
    SuperPoly e = random_dickson(rng, p, n);
    CHECK(transfer(e, CosetTag::P1n1) == e);
    CHECK(transfer(e, CosetTag::Pn11) == e);
  }
}

TEST_CASE("line transfer kills the powers of h_1^{p-1} below the top") {
  int p = 3, n = 2;
  SuperPoly u = expand_symbol(p, n, GenSymbol::h(1)).pow(2);
  for (int m = 1; m <= 3; ++m) CHECK(transfer(u.pow(static_cast<unsigned>(m)), CosetTag::P1n1).is_zero());
  CHECK(transfer(u.pow(4), CosetTag::P1n1) == d(p, n, 2, 0).expand().scale(2));
}

TEST_CASE("top power of h_1^{p-1} transfers to (-1)^{n-1} d_{n,0}") {
  for (auto [p, n] : {std::pair{3, 2}, {3, 3}, {5, 2}, {2, 3}}) {
    CAPTURE(p);
    CAPTURE(n);
    CheckReport r = verify_line_transfer(p, n);
    REQUIRE(r.items.size() == 3);
    CHECK(r.items[0].ok);
    CHECK(r.items[2].ok);
    // the (p-1) d_{n,0} form holds only for n even or p = 2
    CHECK(r.items[1].ok == (n % 2 == 0 || p == 2));
  }
}

TEST_CASE("worked example: hyperplane transfer equals xi") {
  int p = 2, n = 3;
  GenExpr f = d(p, n, 2, 0, 2) * d(p, n, 2, 1, 7);
  CHECK(transfer(f.expand(), CosetTag::Pn11) == (d(p, n, 3, 0, 2) * d(p, n, 3, 1)).expand());
  CHECK(coset_reps(p, n, CosetTag::Pn11).reps.size() == 7);
}

TEST_CASE("hyperplane transfer of p-th powers vanishes") {
  for (auto [p, n] : {std::pair{2, 3}, {3, 2}, {3, 3}})
    for (int i = 0; i < n - 1; ++i) CHECK(transfer(d(p, n, n - 1, i, p).expand(), CosetTag::Pn11).is_zero());
}

TEST_CASE("verify_hyperplane_transfer passes on the small grid") {
  for (auto [p, n] : {std::pair{2, 3}, {3, 2}}) {
    CheckReport r = verify_hyperplane_transfer(p, n, 15, 5);
    for (const auto& i : r.items) {
      CAPTURE(i.name);
      CAPTURE(i.detail);
      CHECK(i.ok);
    }
  }
}

TEST_CASE("transfer output is GL-invariant and keeps the degree") {
  Rng rng(3);
  for (auto [p, n] : {std::pair{2, 3}, {3, 2}, {3, 3}})
    for (int t = 0; t < 6; ++t) {
      SuperPoly f = random_line_invariant(rng, p, n);
      SuperPoly tf = transfer(f, CosetTag::P1n1);
      CHECK(is_invariant(tf, gl_generators(p, n)));
      if (!tf.is_zero()) CHECK(tf.degree() == f.degree());
    }
}

TEST_CASE("transfer is D_n-linear") {
  Rng rng(19);
  for (auto [p, n] : {std::pair{2, 3}, {3, 2}})
    for (int t = 0; t < 8; ++t) {
      SuperPoly e = random_dickson(rng, p, n);
      SuperPoly f = random_line_invariant(rng, p, n);
      CHECK(transfer(e * f, CosetTag::P1n1) == e * transfer(f, CosetTag::P1n1));
    }
}

TEST_CASE("transfer does not depend on the coset representatives") {
  Rng rng(23);
  int p = 3, n = 2;
  std::vector<Coeff> other{2, 2};  // x^2 + 2x + 2, also primitive over F_3
  REQUIRE(is_primitive_poly(p, other));
  REQUIRE(other != find_primitive_poly(p, n));
  for (int t = 0; t < 6; ++t) {
    SuperPoly f = random_line_invariant(rng, p, n);
    SuperPoly base = transfer(f, CosetTag::P1n1);
    CHECK(transfer(f, CosetTag::P1n1, other) == base);
    CosetFamily fam = coset_reps(p, n, CosetTag::P1n1);
    auto sub = subgroup_generators(p, n, CosetTag::P1n1);
    for (auto& g : fam.reps) g = g * random_element(rng, sub);
    CHECK(transfer(f, fam) == base);
  }
  // the same for U_2 with a random element of the restriction image
  SuperPoly g = (GenExpr::symbol(p, n, GenSymbol::M(1, {0})) * GenExpr::symbol(p, n, GenSymbol::h(2), 2)).expand();
  CosetFamily fam = coset_reps(p, n, CosetTag::Un);
  SuperPoly base = transfer(g, fam);
  for (auto& r : fam.reps) r = r * random_element(rng, unipotent_generators(p, n));
  CHECK(transfer(g, fam) == base);
  CHECK(transfer(g, CosetTag::Un, other) == base);
}

TEST_CASE("non-invariant input is rejected") {
  int p = 3, n = 2;
  CHECK_THROWS_AS(transfer(SuperPoly::y(p, n, 2), CosetTag::P1n1), ArgumentError);
  CHECK_THROWS_AS(transfer(SuperPoly::y(p, n, 1), coset_reps(p, n, CosetTag::P1n1)), ArgumentError);
}

TEST_CASE("transposed convention is chosen for hatted invariants") {
  int p = 3, n = 2;
  SuperPoly f = expand_symbol(p, n, GenSymbol::h(1, true)).pow(2);
  auto c = select_convention(f, CosetTag::P1n1);
  REQUIRE(c.has_value());
  CHECK(*c);
  CHECK(transfer(f, CosetTag::P1n1).is_zero());
  CHECK_FALSE(select_convention(SuperPoly::y(p, n, 2), CosetTag::P1n1).has_value());
}

TEST_CASE("Mui class transfer over the 16 U_2 cosets") {
  int p = 3;
  CosetFamily fam = coset_reps(p, 2, CosetTag::Un);
  CHECK(fam.reps.size() == 16);
  CHECK(fam.prim == std::vector<Coeff>{2, 1});
  SuperPoly src = mui_transfer_source(p);
  CHECK(src == (SuperPoly::x(p, 2, 1) * SuperPoly::y(p, 2, 1).pow(5)));
  SuperPoly t = transfer(src, fam);
  CHECK(t == mui_transfer_value(p).expand());
  CHECK_FALSE(t.is_zero());
  // outside (d_{n,0}) there is no splitting along the M_{2,J} classes
  CHECK_FALSE(xi_exterior(src).has_value());
}

TEST_CASE("exterior transfer on the ideal (d_{n,0})") {
  for (const auto& g : sylow_image_generators(3, 2)) CHECK(is_invariant(g.expand(), unipotent_generators(3, 2)));
  CheckReport r = verify_exterior_transfer(3, 2, 10, 9);
  for (const auto& i : r.items) {
    CAPTURE(i.name);
    CAPTURE(i.detail);
    CHECK(i.ok);
  }
  SuperPoly d0 = d(3, 2, 2, 0).expand();
  CHECK(transfer(d0, CosetTag::Un) == d0);
}

TEST_CASE("GL-invariants are expressed in Dickson and Mui generators") {
  int p = 3, n = 2;
  GenExpr e = d(p, n, 2, 1) * GenExpr::symbol(p, n, GenSymbol::M(2, {0})) * GenExpr::symbol(p, n, GenSymbol::L_top(2));
  auto back = as_gl_invariant(e.expand());
  REQUIRE(back.has_value());
  CHECK(back->expand() == e.expand());
  CHECK_FALSE(as_gl_invariant(SuperPoly::y(p, n, 1)).has_value());
}
