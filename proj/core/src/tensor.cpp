#include "gfcpd/tensor.hpp"

#include <stdexcept>

namespace gfcpd {

bool Tensor3::is_zero() const {
  for (felt x : a)
    if (x) return false;
  return true;
}

Tensor3 reconstruct(const Field& f, const Cpd& cpd, int n0, int n1, int n2) {
  if (cpd.a.rows != cpd.b.rows || cpd.a.rows != cpd.c.rows)
    throw std::invalid_argument("reconstruct: factor row counts differ");
  if (cpd.a.cols != n0 || cpd.b.cols != n1 || cpd.c.cols != n2)
    throw std::invalid_argument("reconstruct: factor widths do not match shape");
  Tensor3 t(n0, n1, n2);
  for (int r = 0; r < cpd.rank(); ++r)
    for (int i = 0; i < n0; ++i) {
      const felt ai = cpd.a.at(r, i);
      if (!ai) continue;
      for (int j = 0; j < n1; ++j) {
        const felt ab = f.mul(ai, cpd.b.at(r, j));
        if (!ab) continue;
        for (int k = 0; k < n2; ++k)
          t.at(i, j, k) = f.add(t.at(i, j, k), f.mul(ab, cpd.c.at(r, k)));
      }
    }
  return t;
}

Matrix flatten_mode(const Tensor3& t, int mode) {
  switch (mode) {
    case 0: {
      Matrix m(t.n0, t.n1 * t.n2);
      for (int i = 0; i < t.n0; ++i)
        for (int j = 0; j < t.n1; ++j)
          for (int k = 0; k < t.n2; ++k) m.at(i, j * t.n2 + k) = t.at(i, j, k);
      return m;
    }
    case 1: {
      Matrix m(t.n1, t.n0 * t.n2);
      for (int j = 0; j < t.n1; ++j)
        for (int i = 0; i < t.n0; ++i)
          for (int k = 0; k < t.n2; ++k) m.at(j, i * t.n2 + k) = t.at(i, j, k);
      return m;
    }
    case 2: {
      Matrix m(t.n2, t.n0 * t.n1);
      for (int k = 0; k < t.n2; ++k)
        for (int i = 0; i < t.n0; ++i)
          for (int j = 0; j < t.n1; ++j) m.at(k, i * t.n1 + j) = t.at(i, j, k);
      return m;
    }
    default:
      throw std::invalid_argument("mode must be 0, 1 or 2");
  }
}

Tensor3 unflatten_mode(const Matrix& m, int mode, int d0, int d1, int d2) {
  Tensor3 t(d0, d1, d2);
  switch (mode) {
    case 0:
      for (int i = 0; i < d0; ++i)
        for (int j = 0; j < d1; ++j)
          for (int k = 0; k < d2; ++k) t.at(i, j, k) = m.at(i, j * d2 + k);
      return t;
    case 1:
      for (int j = 0; j < d1; ++j)
        for (int i = 0; i < d0; ++i)
          for (int k = 0; k < d2; ++k) t.at(i, j, k) = m.at(j, i * d2 + k);
      return t;
    case 2:
      for (int k = 0; k < d2; ++k)
        for (int i = 0; i < d0; ++i)
          for (int j = 0; j < d1; ++j) t.at(i, j, k) = m.at(k, i * d1 + j);
      return t;
    default:
      throw std::invalid_argument("mode must be 0, 1 or 2");
  }
}

Tensor3 apply_mode(const Field& f, const Matrix& g, const Tensor3& t, int mode) {
  const int len = mode == 0 ? t.n0 : mode == 1 ? t.n1 : t.n2;
  if (g.cols != len) throw std::invalid_argument("apply_mode: shape mismatch");
  Matrix flat = flatten_mode(t, mode);
  Matrix out = mat_mul(f, g, flat);
  int d0 = t.n0, d1 = t.n1, d2 = t.n2;
  (mode == 0 ? d0 : mode == 1 ? d1 : d2) = g.rows;
  return unflatten_mode(out, mode, d0, d1, d2);
}

Matrix slice0(const Tensor3& t, int i) {
  Matrix m(t.n1, t.n2);
  for (int j = 0; j < t.n1; ++j)
    for (int k = 0; k < t.n2; ++k) m.at(j, k) = t.at(i, j, k);
  return m;
}

}  // namespace gfcpd
