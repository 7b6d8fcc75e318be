#include "dickson/transfer.hpp"

#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "dickson/errors.hpp"
#include "dickson/modbasis.hpp"

namespace dickson {

namespace {

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

GenExpr sym(int p, int n, const GenSymbol& s, int e = 1) { return GenExpr::symbol(p, n, s, e); }

std::mutex family_mutex;

const CosetFamily& cached_family(int p, int n, CosetTag tag, bool transposed, const std::optional<std::vector<Coeff>>& prim) {
  using Key = std::tuple<int, int, int, bool, std::vector<Coeff>>;
  static std::map<Key, CosetFamily> cache;
  std::lock_guard<std::mutex> lock(family_mutex);
  Key key{p, n, static_cast<int>(tag), transposed, prim ? *prim : std::vector<Coeff>{}};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, coset_reps(p, n, tag, transposed, prim)).first->second;
}

GenExpr random_monomial(std::mt19937_64& rng, const std::vector<GenExpr>& gens, const std::vector<int>& max_exp) {
  int p = gens[0].p(), n = gens[0].n();
  GenExpr m = GenExpr::constant(p, n, std::uniform_int_distribution<int>(1, p - 1)(rng));
  for (std::size_t k = 0; k < gens.size(); ++k)
    m = m * gens[k].pow(static_cast<unsigned>(std::uniform_int_distribution<int>(0, max_exp[k])(rng)));
  return m;
}

}  // namespace

SuperPoly transfer(const SuperPoly& f, const CosetFamily& fam) {
  if (f.p() != fam.p || f.n() != fam.n) throw ArgumentError("coset family over a different ring");
  if (!is_invariant(f, subgroup_generators(fam.p, fam.n, fam.tag, fam.transposed)))
    throw ArgumentError("element is not invariant under " + tag_name(fam.tag) + (fam.transposed ? "^t" : ""));
  SuperPoly out(f.p(), f.n());
  for (const auto& g : fam.reps) out += substitute(f, g);
  if (!is_invariant(out, gl_generators(f.p(), f.n()))) throw ConsistencyError("transfer is not GL-invariant");
  return out;
}

std::optional<bool> select_convention(const SuperPoly& f, CosetTag tag) {
  for (bool t : {false, true})
    if (is_invariant(f, subgroup_generators(f.p(), f.n(), tag, t))) return t;
  return std::nullopt;
}

SuperPoly transfer(const SuperPoly& f, CosetTag tag, std::optional<std::vector<Coeff>> prim) {
  auto t = select_convention(f, tag);
  if (!t) throw ArgumentError("element is invariant under neither " + tag_name(tag) + " nor its transpose");
  return transfer(f, cached_family(f.p(), f.n(), tag, *t, prim));
}

std::optional<GenExpr> as_gl_invariant(const SuperPoly& f) {
  return express_in(f, restriction_image_generators(GeneratorFamily::Symmetric, f.p(), f.n()).gens);
}

bool CheckReport::ok() const {
  for (const auto& i : items)
    if (!i.ok) return false;
  return true;
}

void CheckReport::add(std::string name, bool ok, std::string detail) {
  items.push_back({std::move(name), ok, std::move(detail)});
}

void CheckReport::merge(const CheckReport& o) { items.insert(items.end(), o.items.begin(), o.items.end()); }

CheckReport verify_hyperplane_transfer(int p, int n, int samples, std::uint64_t seed) {
  CheckReport r;
  std::string at = " at (" + std::to_string(p) + "," + std::to_string(n) + ")";
  GenExpr one = GenExpr::constant(p, n, 1);
  std::size_t killed = 0, total = 0;
  std::string bad;
  for (const auto& b : enumerate_basis(BasisFamily::Pn11, p, n)) {
    if (b == one) continue;
    ++total;
    SuperPoly t = transfer(b.expand(), CosetTag::Pn11);
    if (t.is_zero())
      ++killed;
    else if (bad.empty())
      bad = b.to_string() + " -> " + t.to_string();
  }
  r.add("hyperplane basis transfers to zero" + at, killed == total,
        std::to_string(killed) + "/" + std::to_string(total) + (bad.empty() ? "" : "; " + bad));

  auto gens = family_generators(BasisFamily::Pn11, p, n);
  // exponents reach p on d_{n-1,*} so the relations fire, kept small at (3,3)
  int emax = (p == 3 && n == 3) ? 3 : p + 2;
  std::vector<int> max_exp(gens.size(), emax);
  max_exp.back() = 1;
  std::mt19937_64 rng(seed);
  int agree = 0;
  std::string first_bad;
  for (int s = 0; s < samples; ++s) {
    GenExpr f = random_monomial(rng, gens, max_exp);
    if (s % 3 == 0) f += random_monomial(rng, gens, max_exp);
    SuperPoly lhs = transfer(f.expand(), CosetTag::Pn11);
    SuperPoly rhs = xi(f, BasisFamily::Pn11).expand();
    if (lhs == rhs)
      ++agree;
    else if (first_bad.empty())
      first_bad = f.to_string() + ": transfer " + lhs.to_string() + " vs xi " + rhs.to_string();
  }
  r.add("hyperplane transfer equals xi on random elements" + at, agree == samples,
        std::to_string(agree) + "/" + std::to_string(samples) + (first_bad.empty() ? "" : "; " + first_bad));
  return r;
}

CheckReport verify_line_transfer(int p, int n) {
  CheckReport r;
  std::string at = " at (" + std::to_string(p) + "," + std::to_string(n) + ")";
  int top = 0;
  for (int t = 1; t < n; ++t) top += ipow(p, t);
  SuperPoly u = expand_symbol(p, n, GenSymbol::h(1)).pow(static_cast<unsigned>(p - 1));
  SuperPoly power = u;
  int zero = 0;
  std::string bad;
  for (int m = 1; m <= top; ++m, power *= u) {
    SuperPoly t = transfer(power, CosetTag::P1n1);
    if (t.is_zero())
      ++zero;
    else if (bad.empty())
      bad = "m=" + std::to_string(m) + " -> " + t.to_string();
  }
  r.add("line transfer kills h_1^{(p-1)m}, 1 <= m <= A_1" + at, zero == top,
        std::to_string(zero) + "/" + std::to_string(top) + (bad.empty() ? "" : "; " + bad));
  SuperPoly t = transfer(power, CosetTag::P1n1);
  SuperPoly expected = expand_symbol(p, n, GenSymbol::d(n, 0)).scale(static_cast<Coeff>(p - 1));
  auto shown = [](const SuperPoly& v) {
    auto e = as_gl_invariant(v);
    return e ? e->to_string() : v.to_string();
  };
  r.add("line transfer of h_1^{p^n-1} is (p-1) d_{n,0}" + at, t == expected, t == expected ? "" : "got " + shown(t));
  SuperPoly derived = expand_symbol(p, n, GenSymbol::d(n, 0)).scale(n % 2 ? 1 : static_cast<Coeff>(p - 1));
  r.add("line transfer of h_1^{p^n-1} is (-1)^{n-1} d_{n,0}" + at, t == derived, t == derived ? "" : "got " + shown(t));
  return r;
}

SuperPoly mui_transfer_source(int p) {
  if (p == 2) throw ArgumentError("exterior classes need an odd prime");
  return expand_symbol(p, 2, GenSymbol::M(1, {0})) *
         expand_symbol(p, 2, GenSymbol::h(1)).pow(static_cast<unsigned>(p * p - 1 - p));
}

GenExpr mui_transfer_value(int p) {
  return sym(p, 2, GenSymbol::M(2, {1})) * sym(p, 2, GenSymbol::L_top(2), p - 2);
}

std::vector<GenExpr> sylow_image_generators(int p, int n) {
  if (p == 2) throw ArgumentError("exterior classes need an odd prime");
  int half = (p - 3) / 2;
  std::vector<GenExpr> out{sym(p, n, GenSymbol::M(1, {0}))};
  for (int i = 2; i <= n; ++i) out.push_back(sym(p, n, GenSymbol::M(i, {i - 1})) * sym(p, n, GenSymbol::L_top(i - 1), half));
  for (int i = 1; i <= n; ++i) out.push_back(sym(p, n, GenSymbol::h(i)));
  return out;
}

CheckReport verify_exterior_transfer(int p, int n, int samples, std::uint64_t seed) {
  if (p == 2) throw ArgumentError("exterior transfer needs an odd prime");
  CheckReport r;
  std::string at = " at (" + std::to_string(p) + "," + std::to_string(n) + ")";
  if (n == 2) {
    SuperPoly t = transfer(mui_transfer_source(p), CosetTag::Un);
    SuperPoly expected = mui_transfer_value(p).expand();
    r.add("U_2 transfer of M_{1,0} h_1^{p^2-1-p} is M_{2,1} L_2^{p-2}" + at, t == expected,
          t == expected ? "" : t.to_string());
  }
  auto gens = sylow_image_generators(p, n);
  std::vector<int> max_exp;
  for (int k = 0; k < n; ++k) max_exp.push_back(1);
  for (int i = 1; i <= n; ++i) max_exp.push_back(std::max(1, (2 * p * p) / ipow(p, i)));
  std::mt19937_64 rng(seed);
  SuperPoly d0 = expand_symbol(p, n, GenSymbol::d(n, 0));
  // the raw coset sum multiplies by [GL : U_n] = (-1)^n mod p
  PrimeField F(p);
  Coeff index = F.from_int(static_cast<long long>(cached_family(p, n, CosetTag::Un, false, std::nullopt).reps.size() % p));
  Coeff norm = F.inv(index);
  SuperPoly raw = transfer(d0, CosetTag::Un);
  r.add("U_n coset sum of d_{n,0} is [GL : U_n] d_{n,0}" + at, raw == d0.scale(index), raw.to_string());
  int agree = 0;
  std::string first_bad;
  for (int s = 0; s < samples; ++s) {
    GenExpr f = random_monomial(rng, gens, max_exp);
    if (s % 2) f += random_monomial(rng, gens, max_exp);
    SuperPoly fd = f.expand() * d0;
    SuperPoly lhs = transfer(fd, CosetTag::Un).scale(norm);
    auto x = xi_exterior(fd);
    bool same = x && x->expand() == lhs;
    if (same)
      ++agree;
    else if (first_bad.empty())
      first_bad = f.to_string() + ": transfer " + lhs.to_string() + (x ? " vs xi " + x->to_string() : " vs no splitting");
  }
  r.add("normalized U_n transfer equals xi on the ideal (d_{n,0})" + at, agree == samples,
        std::to_string(agree) + "/" + std::to_string(samples) + (first_bad.empty() ? "" : "; " + first_bad));
  return r;
}

}  // namespace dickson
