#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gfcpd/tensor.hpp"

namespace gfcpd {

// Malformed header, out-of-range element code, length mismatch.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Matrix text format: first line "rows cols", then one line per row of
// space-separated element codes.
Matrix parse_matrix_text(const Field& f, std::string_view text);
std::string render_matrix_text(const Matrix& m);

// Tensor text format: line 1 is the field ("p" or "p^k"), line 2 is
// "n0 n1 n2", then n0*n1*n2 whitespace-separated codes in (i,j,k) row-major
// order.
struct TensorFile {
  Field field;
  Tensor3 tensor;
};
TensorFile parse_tensor(std::string_view text,
                        const std::vector<felt>* modulus = nullptr);
std::string render_tensor(const Field& f, const Tensor3& t);

// CPD text format: line 1 is the field, line 2 "R n0 n1 n2", then the three
// factor matrices A (R x n0), B (R x n1), C (R x n2) in matrix text format.
struct CpdFile {
  Field field;
  Cpd cpd;
  std::array<int, 3> shape{0, 0, 0};
};
CpdFile parse_cpd(std::string_view text,
                  const std::vector<felt>* modulus = nullptr);
std::string render_cpd(const Field& f, const Cpd& cpd, int n0, int n1, int n2);

}  // namespace gfcpd
