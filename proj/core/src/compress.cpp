#include "gfcpd/compress.hpp"

#include <stdexcept>

namespace gfcpd {

std::optional<ModeReduction> mode_reduce(const Field& f, const Tensor3& t, int mode,
                                         int rank_cap) {
  Matrix flat = flatten_mode(t, mode);
  auto cert = rref_with_certificate(f, flat, rank_cap);
  if (!cert) return std::nullopt;
  ModeReduction out;
  out.rank = cert->r;
  int d0 = t.n0, d1 = t.n1, d2 = t.n2;
  (mode == 0 ? d0 : mode == 1 ? d1 : d2) = cert->r;
  out.reduced = unflatten_mode(cert->f, mode, d0, d1, d2);
  out.gamma = std::move(cert->j);
  out.gamma_inv = std::move(cert->c);
  return out;
}

std::optional<Compression> compress(const Field& f, const Tensor3& t, int rank_cap) {
  Compression comp;
  Tensor3 cur = t;
  for (int mode = 0; mode < 3; ++mode) {
    auto red = mode_reduce(f, cur, mode, rank_cap);
    if (!red) return std::nullopt;
    comp.gamma[mode] = std::move(red->gamma);
    comp.gamma_inv[mode] = std::move(red->gamma_inv);
    comp.rank[mode] = red->rank;
    cur = std::move(red->reduced);
  }
  comp.core = std::move(cur);
  return comp;
}

namespace {

Matrix leading_cols(const Matrix& m, int r) {
  Matrix out(m.rows, r);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < r; ++j) out.at(i, j) = m.at(i, j);
  return out;
}

}  // namespace

Tensor3 decompress(const Field& f, const Compression& comp) {
  Tensor3 t = comp.core;
  for (int mode = 2; mode >= 0; --mode)
    t = apply_mode(f, leading_cols(comp.gamma_inv[mode], comp.rank[mode]), t, mode);
  return t;
}

Cpd lift(const Field& f, const Cpd& core_cpd, const Compression& comp) {
  if (core_cpd.a.cols != comp.core.n0 || core_cpd.b.cols != comp.core.n1 ||
      core_cpd.c.cols != comp.core.n2)
    throw std::invalid_argument("lift: factor widths do not match core shape");
  Cpd out;
  out.a = mat_mul(f, core_cpd.a, transpose(leading_cols(comp.gamma_inv[0], comp.rank[0])));
  out.b = mat_mul(f, core_cpd.b, transpose(leading_cols(comp.gamma_inv[1], comp.rank[1])));
  out.c = mat_mul(f, core_cpd.c, transpose(leading_cols(comp.gamma_inv[2], comp.rank[2])));
  return out;
}

}  // namespace gfcpd
