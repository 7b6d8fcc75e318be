#include "dickson/matrix.hpp"

#include "json.hpp"

#include "dickson/errors.hpp"

namespace dickson {

Coeff determinant(int p, int n, std::vector<Coeff> a) {
  PrimeField F(p);
  Coeff det = 1;
  auto at = [&](int i, int j) -> Coeff& { return a[static_cast<std::size_t>(i * n + j)]; };
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (at(r, c)) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(c, j));
      det = F.neg(det);
    }
    det = F.mul(det, at(c, c));
    Coeff inv = F.inv(at(c, c));
    for (int r = c + 1; r < n; ++r) {
      if (!at(r, c)) continue;
      Coeff f = F.mul(at(r, c), inv);
      for (int j = c; j < n; ++j) at(r, j) = F.sub(at(r, j), F.mul(f, at(c, j)));
    }
  }
  return det;
}

GLMatrix::GLMatrix(int p, int n, std::vector<Coeff> rowmajor) : p_(p), n_(n), a_(std::move(rowmajor)) {
  require_supported_prime(p);
  if (n < 1 || a_.size() != static_cast<std::size_t>(n * n)) throw ArgumentError("matrix shape mismatch");
  for (auto& v : a_) v = static_cast<Coeff>(v % p);
  if (determinant(p, n, a_) == 0) throw ArgumentError("singular matrix");
}

static std::vector<Coeff> flatten(int p, const std::vector<std::vector<long long>>& rows) {
  PrimeField F(p);
  std::vector<Coeff> out;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw ArgumentError("matrix must be square");
    for (long long v : r) out.push_back(F.from_int(v));
  }
  return out;
}

GLMatrix::GLMatrix(int p, const std::vector<std::vector<long long>>& rows)
    : GLMatrix(p, static_cast<int>(rows.size()), flatten(p, rows)) {}

GLMatrix GLMatrix::identity(int p, int n) {
  std::vector<Coeff> a(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i * n + i)] = 1;
  return GLMatrix(p, n, std::move(a));
}

GLMatrix GLMatrix::omega(int p, int n) {
  std::vector<Coeff> a(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i * n + (n - 1 - i))] = 1;
  return GLMatrix(p, n, std::move(a));
}

GLMatrix GLMatrix::transvection(int p, int n, int i, int j, Coeff c) {
  if (i == j) throw ArgumentError("transvection needs i != j");
  std::vector<Coeff> a(static_cast<std::size_t>(n * n), 0);
  for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k * n + k)] = 1;
  a[static_cast<std::size_t>(i * n + j)] = static_cast<Coeff>(c % p);
  return GLMatrix(p, n, std::move(a));
}

GLMatrix GLMatrix::diagonal(int p, const std::vector<Coeff>& d) {
  int n = static_cast<int>(d.size());
  std::vector<Coeff> a(static_cast<std::size_t>(n * n), 0);
  for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k * n + k)] = d[static_cast<std::size_t>(k)];
  return GLMatrix(p, n, std::move(a));
}

GLMatrix GLMatrix::operator*(const GLMatrix& o) const {
  if (p_ != o.p_ || n_ != o.n_) throw ArgumentError("matrix ring mismatch");
  std::vector<Coeff> c(a_.size(), 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      int s = 0;
      for (int k = 0; k < n_; ++k) s += at(i, k) * o.at(k, j);
      c[static_cast<std::size_t>(i * n_ + j)] = static_cast<Coeff>(s % p_);
    }
  return GLMatrix(p_, n_, std::move(c));
}

GLMatrix GLMatrix::inverse() const {
  PrimeField F(p_);
  int w = 2 * n_;
  std::vector<Coeff> m(static_cast<std::size_t>(n_ * w), 0);
  auto at2 = [&](int i, int j) -> Coeff& { return m[static_cast<std::size_t>(i * w + j)]; };
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) at2(i, j) = at(i, j);
    at2(i, n_ + i) = 1;
  }
  for (int c = 0; c < n_; ++c) {
    int piv = c;
    while (!at2(piv, c)) ++piv;
    if (piv != c)
      for (int j = 0; j < w; ++j) std::swap(at2(piv, j), at2(c, j));
    Coeff inv = F.inv(at2(c, c));
    for (int j = 0; j < w; ++j) at2(c, j) = F.mul(at2(c, j), inv);
    for (int r = 0; r < n_; ++r) {
      if (r == c || !at2(r, c)) continue;
      Coeff f = at2(r, c);
      for (int j = 0; j < w; ++j) at2(r, j) = F.sub(at2(r, j), F.mul(f, at2(c, j)));
    }
  }
  std::vector<Coeff> out(static_cast<std::size_t>(n_ * n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i * n_ + j)] = at2(i, n_ + j);
  return GLMatrix(p_, n_, std::move(out));
}

GLMatrix GLMatrix::transpose() const {
  std::vector<Coeff> t(a_.size());
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) t[static_cast<std::size_t>(j * n_ + i)] = at(i, j);
  return GLMatrix(p_, n_, std::move(t));
}

GLMatrix GLMatrix::scaled(Coeff c) const {
  PrimeField F(p_);
  std::vector<Coeff> t(a_);
  for (auto& v : t) v = F.mul(v, c);
  return GLMatrix(p_, n_, std::move(t));
}

GLMatrix GLMatrix::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  GLMatrix r = identity(p_, n_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Coeff GLMatrix::det() const { return determinant(p_, n_, a_); }

std::string GLMatrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < n_; ++i) {
    nlohmann::json r = nlohmann::json::array();
    for (int j = 0; j < n_; ++j) r.push_back(static_cast<int>(at(i, j)));
    rows.push_back(r);
  }
  return rows.dump();
}

GLMatrix GLMatrix::from_json(int p, const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<std::vector<long long>> rows;
  for (const auto& r : j) rows.push_back(r.get<std::vector<long long>>());
  return GLMatrix(p, rows);
}

}  // namespace dickson
