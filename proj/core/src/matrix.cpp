#include "gfcpd/matrix.hpp"

#include <stdexcept>

namespace gfcpd {

std::vector<felt> Matrix::col(int j) const {
  std::vector<felt> c(rows);
  for (int i = 0; i < rows; ++i) c[i] = at(i, j);
  return c;
}

bool Matrix::is_zero() const {
  for (felt x : a)
    if (x) return false;
  return true;
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix mat_mul(const Field& f, const Matrix& x, const Matrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("mat_mul: shape mismatch");
  Matrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const felt s = x.at(i, k);
      if (!s) continue;
      for (int j = 0; j < y.cols; ++j)
        z.at(i, j) = f.add(z.at(i, j), f.mul(s, y.at(k, j)));
    }
  return z;
}

Matrix mat_add(const Field& f, const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("mat_add: shape mismatch");
  Matrix z(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = f.add(x.a[i], y.a[i]);
  return z;
}

Matrix mat_sub(const Field& f, const Matrix& x, const Matrix& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw std::invalid_argument("mat_sub: shape mismatch");
  Matrix z(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = f.sub(x.a[i], y.a[i]);
  return z;
}

Matrix mat_scale(const Field& f, felt s, const Matrix& x) {
  Matrix z(x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) z.a[i] = f.mul(s, x.a[i]);
  return z;
}

Matrix transpose(const Matrix& x) {
  Matrix z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
  return z;
}

Matrix outer(const Field& f, std::span<const felt> u, std::span<const felt> v) {
  Matrix z(int(u.size()), int(v.size()));
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u[i]) continue;
    for (std::size_t j = 0; j < v.size(); ++j) z.at(int(i), int(j)) = f.mul(u[i], v[j]);
  }
  return z;
}

std::vector<felt> mat_vec(const Field& f, const Matrix& x, std::span<const felt> v) {
  if (std::size_t(x.cols) != v.size()) throw std::invalid_argument("mat_vec: shape mismatch");
  std::vector<felt> out(x.rows, 0);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (v[j]) out[i] = f.add(out[i], f.mul(x.at(i, j), v[j]));
  return out;
}

std::vector<felt> vec_mat(const Field& f, std::span<const felt> v, const Matrix& x) {
  if (std::size_t(x.rows) != v.size()) throw std::invalid_argument("vec_mat: shape mismatch");
  std::vector<felt> out(x.cols, 0);
  for (int i = 0; i < x.rows; ++i) {
    if (!v[i]) continue;
    for (int j = 0; j < x.cols; ++j) out[j] = f.add(out[j], f.mul(v[i], x.at(i, j)));
  }
  return out;
}

}  // namespace gfcpd
