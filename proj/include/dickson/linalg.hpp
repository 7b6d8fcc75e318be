#ifndef DICKSON_LINALG_HPP
#define DICKSON_LINALG_HPP

#include <optional>
#include <unordered_map>
#include <vector>

#include "dickson/superpoly.hpp"

namespace dickson {

/// Row echelon form over F_p, built incrementally.
class Echelon {
 public:
  Echelon(int p, std::size_t width);

  /// Reduces v against the stored rows; returns true and stores it when v
  /// is independent of them.
  bool insert(std::vector<Coeff> v);
  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  /// Reduced form of v.
  std::vector<Coeff> reduce(std::vector<Coeff> v) const;

 private:
  PrimeField F_;
  std::size_t width_;
  std::vector<std::vector<Coeff>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Coordinates of polynomials with respect to a shared monomial index.
class MonomialIndex {
 public:
  std::size_t index(const Monomial& m);
  std::size_t size() const { return monos_.size(); }
  const Monomial& at(std::size_t i) const { return monos_[i]; }
  std::vector<Coeff> coords(const SuperPoly& f);

 private:
  std::unordered_map<Monomial, std::size_t, MonomialHash> idx_;
  std::vector<Monomial> monos_;
};

/// Rank of a family of polynomials over F_p.
std::size_t poly_rank(const std::vector<SuperPoly>& fs);

/// Coefficients c with target = sum c_i fs[i], or nullopt. When fs is
/// dependent some solution is returned.
std::optional<std::vector<Coeff>> solve_combination(const SuperPoly& target, const std::vector<SuperPoly>& fs);

/// Basis of the null space of the column-partitioned matrix: vectors c
/// with sum_j c_j cols[j] = 0.
std::vector<std::vector<Coeff>> null_space(int p, std::size_t height, const std::vector<std::vector<Coeff>>& cols);

}  // namespace dickson

#endif
