#pragma once

#include <span>
#include <vector>

#include "gfcpd/field.hpp"

namespace gfcpd {

// Dense row-major matrix of field-element codes.
struct Matrix {
  int rows = 0, cols = 0;
  std::vector<felt> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

  felt& at(int i, int j) { return a[std::size_t(i) * cols + j]; }
  felt at(int i, int j) const { return a[std::size_t(i) * cols + j]; }

  std::span<felt> row(int i) { return {a.data() + std::size_t(i) * cols, std::size_t(cols)}; }
  std::span<const felt> row(int i) const {
    return {a.data() + std::size_t(i) * cols, std::size_t(cols)};
  }
  std::vector<felt> col(int j) const;

  bool is_zero() const;
  bool operator==(const Matrix&) const = default;

  static Matrix identity(int n);
};

Matrix mat_mul(const Field& f, const Matrix& x, const Matrix& y);
Matrix mat_add(const Field& f, const Matrix& x, const Matrix& y);
Matrix mat_sub(const Field& f, const Matrix& x, const Matrix& y);
Matrix mat_scale(const Field& f, felt s, const Matrix& x);
Matrix transpose(const Matrix& x);
// u x v outer product, |u| x |v|
Matrix outer(const Field& f, std::span<const felt> u, std::span<const felt> v);
std::vector<felt> mat_vec(const Field& f, const Matrix& x, std::span<const felt> v);
std::vector<felt> vec_mat(const Field& f, std::span<const felt> v, const Matrix& x);

}  // namespace gfcpd
