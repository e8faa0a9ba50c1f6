#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>

#include "gfcpd/compress.hpp"

namespace gfcpd {

enum class Strategy { brute, fix_two, fix_one };

struct SolveOptions {
  Strategy strategy = Strategy::fix_one;
  int threads = 1;
  // With several workers any valid decomposition may be returned; this forces
  // the first one in canonical enumeration order (always true for 1 thread).
  bool deterministic = false;
  bool symmetry_breaking = true;
};

struct SolveStats {
  std::uint64_t a_candidates = 0;   // fixed tuples examined (A, or (A,B) pairs)
  std::uint64_t rejected_tail = 0;  // A rejected by the D_i = 0 tail check
  // candidates tested in the reduced-system casework, indexed by P
  // (0, 1, 2, and >2 lumped into [3])
  std::array<std::uint64_t, 4> case_candidates{};
  std::array<int, 3> mode_rank{-1, -1, -1};
  double seconds = 0.0;
  double core_seconds = 0.0;

  void merge(const SolveStats& o);
};

struct SolveReport {
  std::optional<Cpd> cpd;
  SolveStats stats;
  bool found() const { return cpd.has_value(); }
};

// Decides whether t admits a decomposition into exactly r rank-1 terms (equal
// to "at most r": surplus terms may be zero) and returns one if it exists.
// Compresses at cap r first, runs the chosen core strategy, lifts, and
// verifies exact reconstruction on every success path.
SolveReport solve(const Field& f, const Tensor3& t, int r,
                  const SolveOptions& opt = {});

// Smallest r <= r_max admitting a decomposition, searched in increasing order
// from max of the mode ranks (lower ranks are infeasible: core slices are
// linearly independent).
std::optional<std::pair<int, Cpd>> min_rank(const Field& f, const Tensor3& t,
                                            int r_max, const SolveOptions& opt = {});

// Core strategies, exposed for cross-checking.  Preconditions: the core
// tensor should come from compress (sides <= r), but each strategy remains
// correct for arbitrary inputs.

// Exhaustive scan over A, B with canonically normalized rows and C row-by-row
// over all vectors.  Desk-scale oracle.
std::optional<Cpd> solve_core_brute(const Field& f, const Tensor3& core, int r,
                                    const SolveOptions& opt = {},
                                    SolveStats* stats = nullptr);

// Fixes A and B (normalized rows, optionally lexicographically nondecreasing
// (A_r, B_r) pairs) and recovers C through a linear system.
std::optional<Cpd> solve_core_fix_two(const Field& f, const Tensor3& core, int r,
                                      const SolveOptions& opt = {},
                                      SolveStats* stats = nullptr);

// Fixes A only: applies the greedy monomial transform to A^T, reduces to the
// per-equation system over rank-<=1 unknowns, and solves it by the casework
// over the number P of non-monomial columns.
std::optional<Cpd> solve_core_fix_one(const Field& f, const Tensor3& core, int r,
                                      const SolveOptions& opt = {},
                                      SolveStats* stats = nullptr);

// The residual system produced by fixing A: for each live equation i,
//   X_i + sum_p alpha[p][i] * Y_p = d[i]
// where X_i splits into the chi_i monomial-column unknowns of equation i and
// every unknown matrix has rank <= 1.
struct ReducedSystem {
  int k = 0;                // live equations
  int r1 = 0, r2 = 0;       // unknown matrix shape
  int total_cols = 0;       // R: P + sum_i chi_i
  std::vector<Matrix> d;    // k right-hand sides (r1 x r2)
  // per equation i: (column index, nonzero coefficient) of its monomial cols
  std::vector<std::vector<std::pair<int, felt>>> monomial_cols;
  std::vector<int> nonmono_col;          // original column index per p
  std::vector<std::vector<felt>> alpha;  // per p: k coefficients
};

// Assignment of all total_cols matrices (each of rank <= 1), or nothing.
std::optional<std::vector<Matrix>> solve_reduced(const Field& f,
                                                 const ReducedSystem& sys,
                                                 SolveStats* stats = nullptr);

// Splits rank-<=1 matrices into row pairs: b_r x c_r = ms[r]; zero matrices
// map to zero rows.  Throws if some input has rank > 1.
std::pair<Matrix, Matrix> split_rank1(const Field& f, const std::vector<Matrix>& ms);

}  // namespace gfcpd
