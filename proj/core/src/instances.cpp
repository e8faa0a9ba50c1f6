#include "gfcpd/instances.hpp"

#include <random>
#include <stdexcept>

namespace gfcpd {

std::pair<Tensor3, Cpd> random_instance(const Field& f, int n0, int n1, int n2,
                                        int rank, std::uint64_t seed) {
  if (n0 < 0 || n1 < 0 || n2 < 0 || rank < 0)
    throw std::invalid_argument("random_instance: negative shape or rank");
  std::mt19937_64 rng(seed);
  const std::uint32_t q = f.q();
  auto fill = [&](Matrix& m) {
    for (auto& x : m.a) x = felt(rng() % q);
  };
  Cpd witness{Matrix(rank, n0), Matrix(rank, n1), Matrix(rank, n2)};
  fill(witness.a);
  fill(witness.b);
  fill(witness.c);
  Tensor3 t = reconstruct(f, witness, n0, n1, n2);
  return {std::move(t), std::move(witness)};
}

Tensor3 mm_tensor(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1)
    throw std::invalid_argument("mm_tensor: dimensions must be >= 1");
  Tensor3 t(a * b, b * c, c * a);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      for (int k = 0; k < c; ++k) t.at(i * b + j, j * c + k, k * a + i) = 1;
  return t;
}

bool verify(const Field& f, const Tensor3& t, const Cpd& cpd) {
  if (cpd.a.cols != t.n0 || cpd.b.cols != t.n1 || cpd.c.cols != t.n2)
    throw std::invalid_argument("verify: factor widths do not match the tensor");
  return reconstruct(f, cpd, t.n0, t.n1, t.n2) == t;
}

}  // namespace gfcpd
