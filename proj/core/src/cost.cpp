#include "gfcpd/cost.hpp"

#include <cstdio>
#include <stdexcept>

namespace gfcpd::cost {

namespace {

bigint ipow(long base, long exp) {
  if (exp < 0) throw std::invalid_argument("negative exponent");
  bigint r = 1;
  for (long i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

rational f(long n, long k, long q) {
  if (q < 2) throw std::invalid_argument("q must be >= 2");
  return rational(ipow(q, n), ipow(q - 1, k));
}

long mu(long r, long k, long q) {
  if (k < 1 || k > r) throw std::invalid_argument("mu requires 1 <= k <= r");
  const bigint n = (ipow(q, k) - 1) / (q - 1);
  if (n >= r) return k;                      // max(1, r/n) = 1
  const bigint num = bigint(k) * r;          // ceil(k*r / n)
  return long((num + n - 1) / n);
}

rational pexp(long r, long k, long p, long q) {
  if (p < 0) throw std::invalid_argument("p must be >= 0");
  if (p == 0) return rational(1);
  if (p == 1) return f(2 * (r - k + 1), 1, q);
  return f(2 * p * r - 3 * (p + k) + 6, p, q);
}

rational fix_one_constant(long r, long q) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  rational total = f(2 * r, r + 1, q);  // K = 1 term (mu(r,1) = r)
  for (long k = 2; k <= r; ++k)
    total += f(k * (2 * r - k + 1), k + r, q) * pexp(r, k, r - mu(r, k, q), q);
  return total;
}

rational fix_two_constant(long r, long q) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  return f(2 * r * r, 2 * r, q);
}

rational matcount_bound(long m, long n, long r, long q) {
  if (r < 0 || r > m || r > n) throw std::invalid_argument("need 0 <= r <= min(m, n)");
  bigint gl = 1;
  const bigint qr = ipow(q, r);
  for (long i = 0; i < r; ++i) gl *= qr - ipow(q, i);
  return rational(ipow(q, m * r + r * n), gl * ipow(q - 1, m));
}

std::pair<long, long> fix_one_dominant_exponents(long r) {
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  long best_n = 2 * r, best_k = r + 1;  // K = 1 term
  for (long k = 2; k <= r; ++k) {
    const long p = r - k;  // mu -> k for large q
    long pn = 0, pk = 0;
    if (p == 1) {
      pn = 2 * (r - k + 1);
      pk = 1;
    } else if (p >= 2) {
      pn = 2 * p * r - 3 * (p + k) + 6;
      pk = p;
    }
    const long n = k * (2 * r - k + 1) + pn;
    const long kk = k + r + pk;
    if (n > best_n) {
      best_n = n;
      best_k = kk;
    }
  }
  return {best_n, best_k};
}

std::pair<long, long> fix_two_exponents(long r) { return {2 * r * r, 2 * r}; }

double to_double(const rational& x) { return x.convert_to<double>(); }

std::string format_sig3(const rational& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", to_double(x));
  return buf;
}

std::string render_table() {
  std::string out;
  char line[160];
  out += "Approximate constant factor for solving rank-R CPD of an RxRxR tensor\n\n";
  const char* headers[2] = {"fix-one", "fix-two"};
  for (int which = 0; which < 2; ++which) {
    std::snprintf(line, sizeof line, "%s:\n  %-4s %-12s %-12s %s\n", headers[which],
                  "R", "F_2", "F_3", "large");
    out += line;
    for (long r = 1; r <= 5; ++r) {
      const rational v2 =
          which == 0 ? fix_one_constant(r, 2) : fix_two_constant(r, 2);
      const rational v3 =
          which == 0 ? fix_one_constant(r, 3) : fix_two_constant(r, 3);
      const auto [en, ek] =
          which == 0 ? fix_one_dominant_exponents(r) : fix_two_exponents(r);
      std::snprintf(line, sizeof line, "  %-4ld %-12s %-12s f(%ld,%ld)\n", r,
                    format_sig3(v2).c_str(), format_sig3(v3).c_str(), en, ek);
      out += line;
    }
    out += "\n";
  }
  return out;
}

}  // namespace gfcpd::cost
