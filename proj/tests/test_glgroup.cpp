#include <set>

#include "doctest.h"
#include "dickson/errors.hpp"
#include "dickson/glgroup.hpp"
#include "support.hpp"

using namespace dickson;
using testutil::Rng;

namespace {

// g(V^i) = V^i for the flag attached to I, checked column by column.
bool preserves_flag(const Composition& I, const GLMatrix& g) {
  auto nu = I.nu();
  for (std::size_t b = 1; b < nu.size(); ++b)
    for (int k = 0; k < nu[b]; ++k)
      for (int r = nu[b]; r < g.n(); ++r)
        if (g.at(r, k)) return false;
  return true;
}

int matrix_order(const GLMatrix& a) {
  GLMatrix id = GLMatrix::identity(a.p(), a.n()), m = a;
  int k = 1;
  while (m != id) {
    m = m * a;
    ++k;
  }
  return k;
}

std::vector<Composition> compositions_of(int n) {
  std::vector<Composition> out;
  for (int mask = 0; mask < (1 << (n - 1)); ++mask) {
    std::vector<int> parts{1};
    for (int i = 0; i < n - 1; ++i) {
      if (mask >> i & 1)
        parts.push_back(1);
      else
        ++parts.back();
    }
    out.emplace_back(parts);
  }
  return out;
}

}  // namespace

TEST_CASE("composition bookkeeping") {
  Composition I({2, 1});
  CHECK(I.n() == 3);
  CHECK(I.block(1) == 1);
  CHECK(I.nu() == std::vector<int>{0, 1, 3});
  CHECK(Composition({1, 1, 1}).refines_to(I));
  CHECK(!Composition({1, 2}).refines_to(I));
  CHECK(Composition::from_json(I.to_json()).parts == I.parts);
  CHECK_THROWS_AS(Composition({2, 0}), ArgumentError);
}

TEST_CASE("parabolic generators preserve the flag and generate P(I)") {
  for (int p : {2, 3})
    for (int n = 1; n <= 3; ++n)
      for (const auto& I : compositions_of(n)) {
        auto gens = parabolic_generators(p, I);
        for (const auto& g : gens) {
          CHECK(preserves_flag(I, g));
          CHECK(in_parabolic(I, g));
        }
        auto group = enumerate_group(gens);
        CHECK(group.size() == parabolic_order(p, I));
        for (const auto& g : parabolic_generators(p, I, true)) CHECK(in_parabolic(I, g, true));
      }
  CHECK(enumerate_group(gl_generators(3, 2)).size() == 48);
  CHECK(gl_order(2, 3) == 168);
  CHECK(enumerate_group(unipotent_generators(3, 3)).size() == 27);
}

TEST_CASE("primitive polynomials") {
  CHECK(find_primitive_poly(3, 2) == std::vector<Coeff>{2, 1});
  CHECK(find_primitive_poly(2, 1) == std::vector<Coeff>{1});
  CHECK(find_primitive_poly(2, 3) == std::vector<Coeff>{1, 1, 0});
  CHECK(!is_primitive_poly(3, {1, 0}));
  CHECK(!is_primitive_poly(3, {1, 1}));
  for (int p : {2, 3, 5})
    for (int n = 1; n <= 3; ++n) {
      auto c = find_primitive_poly(p, n);
      int expected = 1;
      for (int k = 0; k < n; ++k) expected *= p;
      CHECK(matrix_order(companion_matrix(p, c)) == expected - 1);
    }
}

TEST_CASE("companion matrices") {
  GLMatrix a = companion_matrix(3, {2, 1});
  CHECK(a == GLMatrix(3, {{0, 1}, {1, 2}}));
  CHECK(a.inverse() == GLMatrix(3, {{1, 1}, {1, 0}}));
  auto zero = eval_poly_at_matrix({1, 1, 0}, companion_matrix(2, {1, 1, 0}));
  CHECK(zero == std::vector<Coeff>(9, 0));
}

TEST_CASE("coset families") {
  CHECK(coset_reps(3, 2, CosetTag::P1n1).reps.size() == 4);
  CHECK(coset_reps(2, 3, CosetTag::Un).reps.size() == 21);
  CHECK(coset_reps(3, 2, CosetTag::Un).reps.size() == 16);
  CHECK(coset_reps(3, 3, CosetTag::Pn11).reps.size() == 13);
  CHECK(subgroup_index(3, 3, CosetTag::Un) == 416);
  for (int p : {2, 3})
    for (int n = 1; n <= 3; ++n)
      for (CosetTag tag : {CosetTag::P1n1, CosetTag::Pn11, CosetTag::Un})
        for (bool tr : {false, true}) {
          auto fam = coset_reps(p, n, tag, tr);
          CHECK(fam.reps.size() == subgroup_index(p, n, tag));
          for (std::size_t i = 0; i < fam.reps.size(); ++i)
            for (std::size_t j = i + 1; j < fam.reps.size(); ++j)
              CHECK(!in_subgroup(tag, fam.reps[i].inverse() * fam.reps[j], tr));
        }
}

TEST_CASE("cosets of GL(2,2) over the line stabilizer cover the group") {
  auto fam = coset_reps(2, 2, CosetTag::P1n1);
  CHECK(fam.reps.size() == 3);
  auto group = enumerate_group(gl_generators(2, 2));
  auto sub = enumerate_group(subgroup_generators(2, 2, CosetTag::P1n1));
  std::set<GLMatrix> cover;
  for (const auto& g : fam.reps)
    for (const auto& h : sub) cover.insert(g * h);
  CHECK(cover.size() == group.size());
}

TEST_CASE("coset sums of subgroup invariants are GL-invariant") {
  Rng rng(31);
  for (auto [p, n] : {std::pair{2, 3}, std::pair{3, 2}})
    for (CosetTag tag : {CosetTag::P1n1, CosetTag::Pn11, CosetTag::Un}) {
      auto sub = enumerate_group(subgroup_generators(p, n, tag));
      auto fam = coset_reps(p, n, tag);
      for (int trial = 0; trial < 3; ++trial) {
        auto seed = testutil::random_poly(rng, p, n, 4, 3, true);
        SuperPoly f(p, n);
        for (const auto& h : sub) f += substitute(seed, h);
        REQUIRE(is_invariant(f, subgroup_generators(p, n, tag)));
        SuperPoly t(p, n);
        for (const auto& g : fam.reps) t += substitute(f, g);
        CHECK(is_invariant(t, gl_generators(p, n)));
      }
    }
}

TEST_CASE("invariance checks") {
  SuperPoly y1 = SuperPoly::y(3, 2, 1), y2 = SuperPoly::y(3, 2, 2);
  SuperPoly l2 = y1 * y2.pow(3) - y1.pow(3) * y2;
  CHECK(is_invariant(l2.pow(2), gl_generators(3, 2)));
  CHECK(!is_invariant(l2, gl_generators(3, 2)));
  CHECK(!is_invariant(y1, {GLMatrix::transvection(3, 2, 1, 0)}));
  CHECK(is_invariant(SuperPoly::y(3, 3, 3), unipotent_generators(3, 3, true)));
  CHECK(!is_invariant(SuperPoly::y(3, 3, 3), unipotent_generators(3, 3)));
  CHECK(is_invariant(y1.pow(2), subgroup_generators(3, 2, CosetTag::P1n1)));
}
