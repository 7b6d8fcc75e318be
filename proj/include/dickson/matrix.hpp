#ifndef DICKSON_MATRIX_HPP
#define DICKSON_MATRIX_HPP

#include <string>
#include <vector>

#include "dickson/field.hpp"

namespace dickson {

/// Determinant of a row-major n x n matrix over F_p.
Coeff determinant(int p, int n, std::vector<Coeff> a);

/// Invertible n x n matrix over F_p, row-major.
class GLMatrix {
 public:
  /// Throws ArgumentError on a singular or malformed matrix.
  GLMatrix(int p, int n, std::vector<Coeff> rowmajor);
  GLMatrix(int p, const std::vector<std::vector<long long>>& rows);

  static GLMatrix identity(int p, int n);
  /// 1's along the antidiagonal.
  static GLMatrix omega(int p, int n);
  /// I + c E_ij, 0-based indices.
  static GLMatrix transvection(int p, int n, int i, int j, Coeff c = 1);
  static GLMatrix diagonal(int p, const std::vector<Coeff>& d);

  int p() const { return p_; }
  int n() const { return n_; }
  Coeff at(int i, int j) const { return a_[static_cast<std::size_t>(i * n_ + j)]; }
  const std::vector<Coeff>& entries() const { return a_; }

  GLMatrix operator*(const GLMatrix& o) const;
  GLMatrix inverse() const;
  GLMatrix transpose() const;
  GLMatrix scaled(Coeff c) const;
  GLMatrix pow(long long e) const;
  Coeff det() const;

  bool operator==(const GLMatrix& o) const { return p_ == o.p_ && n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const GLMatrix& o) const { return !(*this == o); }
  bool operator<(const GLMatrix& o) const { return a_ < o.a_; }

  /// Row-major JSON array of arrays.
  std::string to_json() const;
  static GLMatrix from_json(int p, const std::string& text);

 private:
  int p_;
  int n_;
  std::vector<Coeff> a_;
};

}  // namespace dickson

#endif
