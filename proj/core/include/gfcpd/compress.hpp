#pragma once

#include <array>
#include <optional>

#include "gfcpd/linalg.hpp"
#include "gfcpd/tensor.hpp"

namespace gfcpd {

struct ModeReduction {
  Tensor3 reduced;
  Matrix gamma;      // invertible, gamma * flattening = rref
  Matrix gamma_inv;
  int rank = 0;
};

// Replaces the mode-d slices by the nonzero rref rows of the mode-d
// flattening.  Returns nothing when the flattening rank exceeds rank_cap
// (the early-termination signal: no rank-<=cap decomposition can exist).
std::optional<ModeReduction> mode_reduce(const Field& f, const Tensor3& t, int mode,
                                         int rank_cap);

// Core tensor plus the change-of-basis certificates of the three mode
// reductions, applied in mode order 0, 1, 2.
struct Compression {
  Tensor3 core;
  std::array<Matrix, 3> gamma;
  std::array<Matrix, 3> gamma_inv;
  std::array<int, 3> rank{0, 0, 0};
};

std::optional<Compression> compress(const Field& f, const Tensor3& t, int rank_cap);

// Inverse of compress: applies gamma_inv[:, :rank] along each mode.
Tensor3 decompress(const Field& f, const Compression& comp);

// Converts a decomposition of the core into one of the original tensor:
// each factor is multiplied by the transposed leading rank_d columns of
// gamma_d_inv.
Cpd lift(const Field& f, const Cpd& core_cpd, const Compression& comp);

}  // namespace gfcpd
