#pragma once

#include <cstdint>
#include <optional>

#include "gfcpd/matrix.hpp"

namespace gfcpd {

// Output of Gaussian elimination with certificates: c and j are m x m with
// c*j = I, f holds the r nonzero rows of rref(m), and m = c[:, :r] * f.
struct RrefCertificate {
  Matrix c;
  Matrix j;
  Matrix f;
  int r = 0;
};

struct RrefStats {
  long pivot_rounds = 0;
};

// Row reduction with early termination by rank.  Returns the certificate when
// rank(m) <= rank_cap; otherwise returns nothing after at most rank_cap + 1
// pivot rounds (absence is the early-exit signal, not an error).  Pivot rows
// are chosen smallest-index-first so certificates are reproducible; GF(2)
// inputs take a bit-packed word-parallel path that yields identical output.
std::optional<RrefCertificate> rref_with_certificate(const Field& f, const Matrix& m,
                                                     int rank_cap,
                                                     RrefStats* stats = nullptr);

int rank(const Field& f, const Matrix& m);

// m = c0 * f0 with c0 (m x r), f0 (r x n), r = rank(m).
std::pair<Matrix, Matrix> full_rank_factorization(const Field& f, const Matrix& m);

// Any x with a*x = b, or nothing if the system is inconsistent.  Free
// variables are set to 0 under the rref pivot structure of a.
std::optional<Matrix> solve_right(const Field& f, const Matrix& a, const Matrix& b);

// All m x n matrices of rank <= 1: the zero matrix first, then u x v over
// canonically normalized u and nonzero v, each rank-1 matrix exactly once.
// Total: 1 + (q^m - 1)(q^n - 1)/(q - 1).  Random access by index.
class RankLe1Stream {
 public:
  RankLe1Stream(const Field& f, int m, int n);
  std::uint64_t size() const { return size_; }
  Matrix at(std::uint64_t i) const;

 private:
  Field f_;
  int m_, n_;
  VectorStream u_, v_;
  std::uint64_t size_;
};

// Candidate superset of the single summands appearing in decompositions of m
// (rank r) into r rank-<=1 terms: { c0 * Z * f0 : rank(Z) <= 1, Z r x r }.
// May contain duplicates.
class FullrankSummandStream {
 public:
  FullrankSummandStream(const Field& f, const Matrix& m);
  std::uint64_t size() const { return z_.size(); }
  Matrix at(std::uint64_t i) const;

 private:
  Field f_;
  int rows_, cols_;
  Matrix c0_, f0_;
  RankLe1Stream z_;
};

// Candidate superset for one summand in decompositions of m (rank r-1) into
// r rank-<=1 terms: { c0 * Z } with Z (r-1) x n union { W * f0 } with
// W m x (r-1), each factor of rank <= 1.  Throws if rank(m) != r - 1.
class Add1rankSummandStream {
 public:
  Add1rankSummandStream(const Field& f, const Matrix& m, int r);
  std::uint64_t size() const { return za_.size() + zb_.size(); }
  Matrix at(std::uint64_t i) const;

 private:
  Field f_;
  int rows_, cols_;
  Matrix c0_, f0_;
  RankLe1Stream za_, zb_;
};

struct GreedyMonomial {
  Matrix s;  // invertible, s * m_v = [I_k; 0] for the chosen basis columns
  int k = 0; // rank of the input
};

// Greedy choice of an invertible s maximizing the number of monomial columns
// of s*w.  Guarantees at least ceil(k * max(1, n / ((q^k - 1)/(q - 1))))
// monomial columns.  Ties between candidate columns of equal multiplicity are
// broken toward the lexicographically smallest normalized column; basis
// columns keep greedy insertion order.  Throws if w has an all-zero column.
GreedyMonomial greedy_monomial(const Field& f, const Matrix& w);

}  // namespace gfcpd
