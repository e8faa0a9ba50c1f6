#pragma once

#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace gfcpd::cost {

// Exact rationals throughout; values are rendered to floats only for display.
using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

// Enumeration-work unit q^n / (q-1)^k.
rational f(long n, long k, long q);

// Guaranteed monomial-column count ceil(k * max(1, r / ((q^k - 1)/(q - 1)))).
long mu(long r, long k, long q);

// Residual-system cost by the number p of non-monomial columns:
//   p = 0 : 1
//   p = 1 : f(2(r - k + 1), 1)
//   p >= 2: f(2pr - 3(p + k) + 6, p)
rational pexp(long r, long k, long p, long q);

// Summed constant factor of the fix-one strategy:
//   f(2r, r+1) + sum_{K=2}^{r} f(K(2r - K + 1), K + r) * pexp(r, K, r - mu(r, K))
rational fix_one_constant(long r, long q);

// Constant factor of the fix-two strategy: f(2r^2, 2r).
rational fix_two_constant(long r, long q);

// Upper bound q^(mr + rn) / (|GL_r| (q-1)^m) on the number of rank-r m x n
// matrices with canonically normalized rows; |GL_r| = prod_i (q^r - q^i).
rational matcount_bound(long m, long n, long r, long q);

// Exponent pair (n, k) of the dominant fix-one term as q grows (mu -> k).
std::pair<long, long> fix_one_dominant_exponents(long r);
std::pair<long, long> fix_two_exponents(long r);

double to_double(const rational& x);
std::string format_sig3(const rational& x);  // 3 significant figures

// Both constant-factor grids for r = 1..5, q in {2, 3}, plus the symbolic
// large-field column.
std::string render_table();

}  // namespace gfcpd::cost
