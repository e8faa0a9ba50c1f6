#pragma once

#include <random>

#include "gfcpd/instances.hpp"
#include "gfcpd/linalg.hpp"
#include "gfcpd/solver.hpp"

// Shared test utilities and independent brute-force oracles.  Everything here
// deliberately avoids the code paths under test: searches enumerate raw
// element codes and check reconstructions entry by entry.
namespace th {

using namespace gfcpd;

inline Matrix random_matrix(const Field& f, int m, int n, std::mt19937_64& rng) {
  Matrix x(m, n);
  for (auto& v : x.a) v = felt(rng() % f.q());
  return x;
}

inline Tensor3 random_tensor(const Field& f, int n0, int n1, int n2,
                             std::mt19937_64& rng) {
  Tensor3 t(n0, n1, n2);
  for (auto& v : t.a) v = felt(rng() % f.q());
  return t;
}

inline Matrix random_invertible(const Field& f, int n, std::mt19937_64& rng) {
  for (;;) {
    Matrix x = random_matrix(f, n, n, rng);
    if (rank(f, x) == n) return x;
  }
}

inline bool rows_all_normalized(const Matrix& m) {
  for (int i = 0; i < m.rows; ++i) {
    int lead = -1;
    for (int j = 0; j < m.cols; ++j)
      if (m.at(i, j)) {
        lead = j;
        break;
      }
    if (lead < 0 || m.at(i, lead) != 1) return false;
  }
  return true;
}

inline int count_monomial_cols(const Matrix& m) {
  int count = 0;
  for (int j = 0; j < m.cols; ++j) {
    int nz = 0;
    for (int i = 0; i < m.rows; ++i)
      if (m.at(i, j)) ++nz;
    if (nz == 1) ++count;
  }
  return count;
}

// Visits every m x n matrix over the field (q^(mn) of them).
template <typename Fn>
void for_all_matrices(const Field& f, int m, int n, Fn&& fn) {
  const std::uint64_t total = checked_pow(f.q(), unsigned(m * n));
  Matrix x(m, n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t t = code;
    for (auto& v : x.a) {
      v = felt(t % f.q());
      t /= f.q();
    }
    fn(x);
  }
}

// Exhaustive rank-r decomposability of the raw tensor, no compression and no
// reduced-system machinery: A and B rows range over canonically normalized
// vectors (sufficient by scale invariance), C rows over all vectors.
inline bool full_search_exists(const Field& f, const Tensor3& t, int r) {
  if (r == 0) return t.is_zero();
  if (t.is_zero()) return true;
  const VectorStream as(f, t.n0, VecMode::normalized);
  const VectorStream bs(f, t.n1, VecMode::normalized);
  const VectorStream cs(f, t.n2, VecMode::all);
  const std::uint64_t na = checked_pow(as.size(), unsigned(r));
  const std::uint64_t nb = checked_pow(bs.size(), unsigned(r));
  const std::uint64_t nc = checked_pow(cs.size(), unsigned(r));
  Cpd cpd{Matrix(r, t.n0), Matrix(r, t.n1), Matrix(r, t.n2)};
  auto fill = [&](const VectorStream& vs, Matrix& m, std::uint64_t idx) {
    for (int row = r - 1; row >= 0; --row) {
      vs.at(idx % vs.size(), m.row(row).data());
      idx /= vs.size();
    }
  };
  for (std::uint64_t ia = 0; ia < na; ++ia) {
    fill(as, cpd.a, ia);
    for (std::uint64_t ib = 0; ib < nb; ++ib) {
      fill(bs, cpd.b, ib);
      for (std::uint64_t ic = 0; ic < nc; ++ic) {
        fill(cs, cpd.c, ic);
        if (reconstruct(f, cpd, t.n0, t.n1, t.n2) == t) return true;
      }
    }
  }
  return false;
}

}  // namespace th
