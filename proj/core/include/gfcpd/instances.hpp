#pragma once

#include <cstdint>
#include <utility>

#include "gfcpd/tensor.hpp"

namespace gfcpd {

// Tensor with a known witness decomposition: every factor entry is drawn from
// a seeded mt19937_64 (fixed across platforms), so instances replay
// byte-for-byte from (field, shape, rank, seed).
std::pair<Tensor3, Cpd> random_instance(const Field& f, int n0, int n1, int n2,
                                        int rank, std::uint64_t seed);

// The <a,b,c> matrix-multiplication tensor: shape (ab, bc, ca) with a 1 at
// (row (i,j), column (j,k), depth (k,i)) for the terms of the trilinear
// product form.  Entries are 0/1 codes, valid in any field.
Tensor3 mm_tensor(int a, int b, int c);

// Exact entrywise check reconstruct(cpd) == t; throws on shape mismatch.
bool verify(const Field& f, const Tensor3& t, const Cpd& cpd);

}  // namespace gfcpd
