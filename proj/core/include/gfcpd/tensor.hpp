#pragma once

#include "gfcpd/matrix.hpp"

namespace gfcpd {

// Dense n0 x n1 x n2 tensor of field-element codes, (i, j, k) row-major.
struct Tensor3 {
  int n0 = 0, n1 = 0, n2 = 0;
  std::vector<felt> a;

  Tensor3() = default;
  Tensor3(int d0, int d1, int d2)
      : n0(d0), n1(d1), n2(d2), a(std::size_t(d0) * d1 * d2, 0) {}

  felt& at(int i, int j, int k) {
    return a[(std::size_t(i) * n1 + j) * n2 + k];
  }
  felt at(int i, int j, int k) const {
    return a[(std::size_t(i) * n1 + j) * n2 + k];
  }

  bool is_zero() const;
  bool operator==(const Tensor3&) const = default;
};

// Rank-R decomposition: factor matrices a (R x n0), b (R x n1), c (R x n2),
// representing sum_r a_r x b_r x c_r.
struct Cpd {
  Matrix a, b, c;
  int rank() const { return a.rows; }
};

// Entry (i,j,k) = sum_r A(r,i) B(r,j) C(r,k).  Throws on factor-width /
// shape mismatch.
Tensor3 reconstruct(const Field& f, const Cpd& cpd, int n0, int n1, int n2);

// Mode-d flattening: row i is slice i flattened row-major over the remaining
// two modes in ascending mode order.
Matrix flatten_mode(const Tensor3& t, int mode);
Tensor3 unflatten_mode(const Matrix& m, int mode, int d0, int d1, int d2);

// Applies g along one mode: out has mode-d length g.rows where the input has
// mode-d length g.cols.
Tensor3 apply_mode(const Field& f, const Matrix& g, const Tensor3& t, int mode);

// Mode-0 slice i as an n1 x n2 matrix.
Matrix slice0(const Tensor3& t, int i);

}  // namespace gfcpd
