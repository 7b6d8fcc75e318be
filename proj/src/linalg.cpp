#include "dickson/linalg.hpp"

#include "dickson/errors.hpp"

namespace dickson {

Echelon::Echelon(int p, std::size_t width) : F_(p), width_(width) {}

std::vector<Coeff> Echelon::reduce(std::vector<Coeff> v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Coeff c = v[pivots_[r]];
    if (!c) continue;
    const auto& row = rows_[r];
    for (std::size_t j = pivots_[r]; j < width_; ++j)
      if (row[j]) v[j] = F_.sub(v[j], F_.mul(c, row[j]));
  }
  return v;
}

bool Echelon::insert(std::vector<Coeff> v) {
  if (v.size() != width_) throw ArgumentError("vector width mismatch");
  v = reduce(std::move(v));
  std::size_t piv = 0;
  while (piv < width_ && !v[piv]) ++piv;
  if (piv == width_) return false;
  Coeff inv = F_.inv(v[piv]);
  for (auto& c : v) c = F_.mul(c, inv);
  // Keep stored rows fully reduced at the new pivot.
  for (auto& row : rows_) {
    Coeff c = row[piv];
    if (!c) continue;
    for (std::size_t j = piv; j < width_; ++j)
      if (v[j]) row[j] = F_.sub(row[j], F_.mul(c, v[j]));
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

std::size_t MonomialIndex::index(const Monomial& m) {
  auto it = idx_.find(m);
  if (it != idx_.end()) return it->second;
  idx_.emplace(m, monos_.size());
  monos_.push_back(m);
  return monos_.size() - 1;
}

std::vector<Coeff> MonomialIndex::coords(const SuperPoly& f) {
  for (const auto& [m, c] : f.terms()) index(m);
  std::vector<Coeff> v(monos_.size(), 0);
  for (const auto& [m, c] : f.terms()) v[idx_.at(m)] = c;
  return v;
}

std::size_t poly_rank(const std::vector<SuperPoly>& fs) {
  if (fs.empty()) return 0;
  MonomialIndex idx;
  for (const auto& f : fs) idx.coords(f);
  Echelon e(fs[0].p(), idx.size());
  for (const auto& f : fs) {
    auto v = idx.coords(f);
    v.resize(idx.size(), 0);
    e.insert(std::move(v));
  }
  return e.rank();
}

namespace {

// Row-reduces a dense h x w matrix in place; returns pivot columns.
std::vector<std::size_t> rref(const PrimeField& F, std::vector<std::vector<Coeff>>& a, std::size_t w) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w && r < a.size(); ++c) {
    std::size_t piv = r;
    while (piv < a.size() && !a[piv][c]) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[r]);
    Coeff inv = F.inv(a[r][c]);
    for (auto& v : a[r]) v = F.mul(v, inv);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == r || !a[i][c]) continue;
      Coeff f = a[i][c];
      for (std::size_t j = c; j < w; ++j)
        if (a[r][j]) a[i][j] = F.sub(a[i][j], F.mul(f, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::optional<std::vector<Coeff>> solve_combination(const SuperPoly& target, const std::vector<SuperPoly>& fs) {
  int p = target.p();
  PrimeField F(p);
  MonomialIndex idx;
  std::vector<std::vector<Coeff>> cols;
  for (const auto& f : fs) cols.push_back(idx.coords(f));
  auto t = idx.coords(target);
  std::size_t h = idx.size(), k = fs.size();
  std::vector<std::vector<Coeff>> a(h, std::vector<Coeff>(k + 1, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) a[i][j] = cols[j][i];
  for (std::size_t i = 0; i < t.size(); ++i) a[i][k] = t[i];
  auto pivots = rref(F, a, k + 1);
  if (!pivots.empty() && pivots.back() == k) return std::nullopt;
  std::vector<Coeff> sol(k, 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) sol[pivots[r]] = a[r][k];
  return sol;
}

std::vector<std::vector<Coeff>> null_space(int p, std::size_t height, const std::vector<std::vector<Coeff>>& cols) {
  PrimeField F(p);
  std::size_t k = cols.size();
  std::vector<std::vector<Coeff>> a(height, std::vector<Coeff>(k, 0));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < cols[j].size() && i < height; ++i) a[i][j] = cols[j][i];
  auto pivots = rref(F, a, k);
  std::vector<bool> is_pivot(k, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Coeff>> basis;
  for (std::size_t free = 0; free < k; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Coeff> v(k, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(a[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace dickson
