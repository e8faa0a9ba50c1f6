#include "gfcpd/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace gfcpd {

namespace {

// ---------------------------------------------------------------------------
// generic table-driven kernel

std::optional<RrefCertificate> rref_generic(const Field& f, const Matrix& m,
                                            int rank_cap, RrefStats* stats) {
  const int mr = m.rows, nc = m.cols;
  Matrix F = m;
  Matrix C = Matrix::identity(mr);
  Matrix J = Matrix::identity(mr);
  std::vector<int> pivcol;
  pivcol.reserve(std::min(mr, nc));
  int piv = 0;
  long rounds = 0;

  auto finish_stats = [&] {
    if (stats) stats->pivot_rounds += rounds;
  };

  for (int j = 0; j < nc && piv < mr; ++j) {
    int sel = -1;
    for (int i = piv; i < mr; ++i)
      if (F.at(i, j)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    ++rounds;
    if (sel != piv) {
      for (int t = j; t < nc; ++t) std::swap(F.at(sel, t), F.at(piv, t));
      for (int t = 0; t < mr; ++t) std::swap(J.at(sel, t), J.at(piv, t));
      for (int t = 0; t < mr; ++t) std::swap(C.at(t, sel), C.at(t, piv));
    }
    const felt sigma = F.at(piv, j);
    if (sigma != 1) {
      const felt si = f.inv(sigma);
      for (int t = j; t < nc; ++t) F.at(piv, t) = f.mul(si, F.at(piv, t));
      for (int t = 0; t < mr; ++t) J.at(piv, t) = f.mul(si, J.at(piv, t));
      for (int t = 0; t < mr; ++t) C.at(t, piv) = f.mul(sigma, C.at(t, piv));
    }
    for (int k = piv + 1; k < mr; ++k) {
      const felt s = F.at(k, j);
      if (!s) continue;
      for (int t = j; t < nc; ++t)
        F.at(k, t) = f.sub(F.at(k, t), f.mul(s, F.at(piv, t)));
      for (int t = 0; t < mr; ++t)
        J.at(k, t) = f.sub(J.at(k, t), f.mul(s, J.at(piv, t)));
      for (int t = 0; t < mr; ++t)
        C.at(t, piv) = f.add(C.at(t, piv), f.mul(s, C.at(t, k)));
    }
    pivcol.push_back(j);
    ++piv;
    if (piv > rank_cap) {
      finish_stats();
      return std::nullopt;
    }
  }

  for (int i = piv - 1; i >= 0; --i) {
    const int j = pivcol[i];
    for (int k = 0; k < i; ++k) {
      const felt s = F.at(k, j);
      if (!s) continue;
      for (int t = j; t < nc; ++t)
        F.at(k, t) = f.sub(F.at(k, t), f.mul(s, F.at(i, t)));
      for (int t = 0; t < mr; ++t)
        J.at(k, t) = f.sub(J.at(k, t), f.mul(s, J.at(i, t)));
      for (int t = 0; t < mr; ++t)
        C.at(t, i) = f.add(C.at(t, i), f.mul(s, C.at(t, k)));
    }
  }

  finish_stats();
  RrefCertificate cert;
  cert.r = piv;
  cert.c = std::move(C);
  cert.j = std::move(J);
  cert.f = Matrix(piv, nc);
  for (int i = 0; i < piv; ++i)
    for (int j = 0; j < nc; ++j) cert.f.at(i, j) = F.at(i, j);
  return cert;
}

// ---------------------------------------------------------------------------
// GF(2) bit-packed kernel: rows are 64-bit words, row operations are XORs

struct BitRows {
  int rows = 0, cols = 0, words = 0;
  std::vector<std::uint64_t> w;

  BitRows(int r, int c)
      : rows(r), cols(c), words((c + 63) / 64), w(std::size_t(r) * words, 0) {}

  static BitRows from(const Matrix& m) {
    BitRows b(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j)
        if (m.at(i, j)) b.set(i, j);
    return b;
  }
  static BitRows ident(int n) {
    BitRows b(n, n);
    for (int i = 0; i < n; ++i) b.set(i, i);
    return b;
  }

  bool get(int i, int j) const {
    return (w[std::size_t(i) * words + j / 64] >> (j % 64)) & 1;
  }
  void set(int i, int j) { w[std::size_t(i) * words + j / 64] |= 1ull << (j % 64); }
  void xor_row(int dst, int src) {
    std::uint64_t* d = w.data() + std::size_t(dst) * words;
    const std::uint64_t* s = w.data() + std::size_t(src) * words;
    for (int t = 0; t < words; ++t) d[t] ^= s[t];
  }
  void swap_rows(int i, int j) {
    if (i == j) return;
    std::uint64_t* a = w.data() + std::size_t(i) * words;
    std::uint64_t* b = w.data() + std::size_t(j) * words;
    for (int t = 0; t < words; ++t) std::swap(a[t], b[t]);
  }
};

std::optional<RrefCertificate> rref_gf2(const Matrix& m, int rank_cap,
                                        RrefStats* stats) {
  const int mr = m.rows, nc = m.cols;
  BitRows F = BitRows::from(m);
  BitRows J = BitRows::ident(mr);
  BitRows CT = BitRows::ident(mr);  // transpose of C; column ops become row ops
  std::vector<int> pivcol;
  pivcol.reserve(std::min(mr, nc));
  int piv = 0;
  long rounds = 0;

  auto finish_stats = [&] {
    if (stats) stats->pivot_rounds += rounds;
  };

  for (int j = 0; j < nc && piv < mr; ++j) {
    int sel = -1;
    for (int i = piv; i < mr; ++i)
      if (F.get(i, j)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    ++rounds;
    F.swap_rows(sel, piv);
    J.swap_rows(sel, piv);
    CT.swap_rows(sel, piv);
    for (int k = piv + 1; k < mr; ++k) {
      if (!F.get(k, j)) continue;
      F.xor_row(k, piv);
      J.xor_row(k, piv);
      CT.xor_row(piv, k);
    }
    pivcol.push_back(j);
    ++piv;
    if (piv > rank_cap) {
      finish_stats();
      return std::nullopt;
    }
  }

  for (int i = piv - 1; i >= 0; --i) {
    const int j = pivcol[i];
    for (int k = 0; k < i; ++k) {
      if (!F.get(k, j)) continue;
      F.xor_row(k, i);
      J.xor_row(k, i);
      CT.xor_row(i, k);
    }
  }

  finish_stats();
  RrefCertificate cert;
  cert.r = piv;
  cert.c = Matrix(mr, mr);
  cert.j = Matrix(mr, mr);
  for (int i = 0; i < mr; ++i)
    for (int j = 0; j < mr; ++j) {
      if (CT.get(j, i)) cert.c.at(i, j) = 1;
      if (J.get(i, j)) cert.j.at(i, j) = 1;
    }
  cert.f = Matrix(piv, nc);
  for (int i = 0; i < piv; ++i)
    for (int j = 0; j < nc; ++j)
      if (F.get(i, j)) cert.f.at(i, j) = 1;
  return cert;
}

}  // namespace

std::optional<RrefCertificate> rref_with_certificate(const Field& f, const Matrix& m,
                                                     int rank_cap, RrefStats* stats) {
  if (rank_cap < 0) throw std::invalid_argument("rank_cap must be >= 0");
  if (f.q() == 2) return rref_gf2(m, rank_cap, stats);
  return rref_generic(f, m, rank_cap, stats);
}

int rank(const Field& f, const Matrix& m) {
  auto cert = rref_with_certificate(f, m, std::min(m.rows, m.cols));
  return cert->r;
}

std::pair<Matrix, Matrix> full_rank_factorization(const Field& f, const Matrix& m) {
  auto cert = rref_with_certificate(f, m, std::min(m.rows, m.cols));
  Matrix c0(m.rows, cert->r);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < cert->r; ++j) c0.at(i, j) = cert->c.at(i, j);
  return {std::move(c0), std::move(cert->f)};
}

std::optional<Matrix> solve_right(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows) throw std::invalid_argument("solve_right: row mismatch");
  auto cert = rref_with_certificate(f, a, std::min(a.rows, a.cols));
  const int r = cert->r;
  Matrix jb = mat_mul(f, cert->j, b);
  for (int i = r; i < jb.rows; ++i)
    for (int j = 0; j < jb.cols; ++j)
      if (jb.at(i, j)) return std::nullopt;
  // f is rref: pivot rows of x copy jb, free rows stay zero
  Matrix x(a.cols, b.cols);
  for (int t = 0; t < r; ++t) {
    int pc = -1;
    for (int j = 0; j < cert->f.cols; ++j)
      if (cert->f.at(t, j)) {
        pc = j;
        break;
      }
    for (int j = 0; j < b.cols; ++j) x.at(pc, j) = jb.at(t, j);
  }
  return x;
}

RankLe1Stream::RankLe1Stream(const Field& f, int m, int n)
    : f_(f),
      m_(m),
      n_(n),
      u_(f, m, VecMode::normalized),
      v_(f, n, VecMode::nonzero),
      size_(1 + u_.size() * v_.size()) {}

Matrix RankLe1Stream::at(std::uint64_t i) const {
  if (i == 0) return Matrix(m_, n_);
  --i;
  std::vector<felt> u = u_.at(i / v_.size());
  std::vector<felt> v = v_.at(i % v_.size());
  return outer(f_, u, v);
}

FullrankSummandStream::FullrankSummandStream(const Field& f, const Matrix& m)
    : f_(f), rows_(m.rows), cols_(m.cols), z_(f, 0, 0) {
  auto [c0, f0] = full_rank_factorization(f, m);
  const int r = c0.cols;
  c0_ = std::move(c0);
  f0_ = std::move(f0);
  z_ = RankLe1Stream(f, r, r);
}

Matrix FullrankSummandStream::at(std::uint64_t i) const {
  // c0 * (u x v) * f0 = (c0*u) x (v*f0), cheaper than forming Z
  Matrix z = z_.at(i);
  if (z.is_zero()) return Matrix(rows_, cols_);
  return mat_mul(f_, mat_mul(f_, c0_, z), f0_);
}

Add1rankSummandStream::Add1rankSummandStream(const Field& f, const Matrix& m, int r)
    : f_(f), rows_(m.rows), cols_(m.cols), za_(f, 0, 0), zb_(f, 0, 0) {
  auto [c0, f0] = full_rank_factorization(f, m);
  if (c0.cols != r - 1)
    throw std::invalid_argument("add1rank summands require rank(m) == r - 1");
  c0_ = std::move(c0);
  f0_ = std::move(f0);
  za_ = RankLe1Stream(f, r - 1, cols_);
  zb_ = RankLe1Stream(f, rows_, r - 1);
}

Matrix Add1rankSummandStream::at(std::uint64_t i) const {
  if (i < za_.size()) return mat_mul(f_, c0_, za_.at(i));
  return mat_mul(f_, zb_.at(i - za_.size()), f0_);
}

GreedyMonomial greedy_monomial(const Field& f, const Matrix& w) {
  const int m = w.rows, n = w.cols;
  // multiset of canonically normalized columns
  std::map<std::vector<felt>, int> mult;
  for (int j = 0; j < n; ++j) {
    std::vector<felt> c = w.col(j);
    bool zero = true;
    for (felt x : c)
      if (x) {
        zero = false;
        break;
      }
    if (zero) throw std::invalid_argument("greedy_monomial: all-zero column");
    canonical_normalize_inplace(f, c);
    ++mult[c];
  }

  // incremental row-reduced basis of span(V) for membership tests
  std::vector<std::vector<felt>> basis;  // leading 1 at pairwise distinct positions
  std::vector<int> lead;
  auto residual = [&](std::vector<felt> v) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const felt s = v[lead[b]];
      if (!s) continue;
      for (int t = 0; t < m; ++t) v[t] = f.sub(v[t], f.mul(s, basis[b][t]));
    }
    return v;
  };

  std::vector<std::vector<felt>> chosen;
  for (;;) {
    const std::vector<felt>* best = nullptr;
    int best_mult = 0;
    std::vector<felt> best_res;
    for (const auto& [v, cnt] : mult) {  // map order = lex ascending
      if (best && cnt <= best_mult) continue;
      std::vector<felt> res = residual(v);
      bool zero = true;
      for (felt x : res)
        if (x) {
          zero = false;
          break;
        }
      if (zero) continue;  // already in span(V)
      best = &v;
      best_mult = cnt;
      best_res = std::move(res);
    }
    if (!best) break;
    chosen.push_back(*best);
    int l = 0;
    while (!best_res[l]) ++l;
    const felt s = f.inv(best_res[l]);
    for (int t = 0; t < m; ++t) best_res[t] = f.mul(s, best_res[t]);
    lead.push_back(l);
    basis.push_back(std::move(best_res));
  }

  const int k = int(chosen.size());
  Matrix mv(m, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < m; ++i) mv.at(i, j) = chosen[j][i];
  auto cert = rref_with_certificate(f, mv, k);
  // columns are independent, so rref(mv) = [I_k; 0] and s = j
  return GreedyMonomial{std::move(cert->j), k};
}

}  // namespace gfcpd
