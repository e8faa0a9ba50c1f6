#include "gfcpd/field.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace gfcpd {

std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base)
      throw std::overflow_error("checked_pow: result exceeds 64 bits");
    r *= base;
  }
  return r;
}

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// Dense polynomials over GF(p), coefficients lowest degree first.
using Poly = std::vector<int>;

int poly_deg(const Poly& a) {
  for (int i = int(a.size()) - 1; i >= 0; --i)
    if (a[i]) return i;
  return -1;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = int((c[i + j] + std::int64_t(a[i]) * b[j]) % p);
  }
  return c;
}

// a mod m in place; m monic.
void poly_mod(Poly& a, const Poly& m, int p) {
  const int dm = poly_deg(m);
  for (int i = poly_deg(a); i >= dm; --i) {
    int c = a[i];
    if (!c) continue;
    for (int t = 0; t <= dm; ++t) {
      int& x = a[i - dm + t];
      x = int(((x - std::int64_t(c) * m[t]) % p + p) % p);
    }
  }
}

bool poly_is_irreducible(const Poly& f, int p) {
  const int k = poly_deg(f);
  if (k < 1) return false;
  // trial division by every monic polynomial of degree 1..k/2
  for (int d = 1; 2 * d <= k; ++d) {
    const std::uint64_t count = checked_pow(p, unsigned(d));
    for (std::uint64_t code = 0; code < count; ++code) {
      Poly g(d + 1, 0);
      g[d] = 1;
      std::uint64_t t = code;
      for (int i = 0; i < d; ++i) {
        g[i] = int(t % p);
        t /= p;
      }
      Poly r = f;
      poly_mod(r, g, p);
      if (poly_deg(r) < 0) return false;
    }
  }
  return true;
}

// Lexicographically smallest (coefficients compared lowest degree first)
// monic irreducible polynomial of degree k over GF(p).
Poly smallest_irreducible(int p, int k) {
  const std::uint64_t count = checked_pow(p, unsigned(k));
  std::vector<int> dig(k);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t t = idx;
    for (int j = 0; j < k; ++j) {
      dig[j] = int(t % p);
      t /= p;
    }
    Poly f(k + 1, 0);
    f[k] = 1;
    // dig is little-endian in idx; the low-degree coefficient varies slowest
    for (int j = 0; j < k; ++j) f[j] = dig[k - 1 - j];
    if (poly_is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found");  // unreachable
}

std::uint32_t poly_encode(const Poly& a, int p, int k) {
  std::uint32_t code = 0, place = 1;
  for (int i = 0; i < k; ++i) {
    code += std::uint32_t(i < int(a.size()) ? a[i] : 0) * place;
    place *= p;
  }
  return code;
}

Poly poly_decode(std::uint32_t code, int p, int k) {
  Poly a(k, 0);
  for (int i = 0; i < k; ++i) {
    a[i] = int(code % p);
    code /= p;
  }
  return a;
}

std::uint32_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint32_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = r * a % m;
    a = a * a % m;
    e >>= 1;
  }
  return std::uint32_t(r);
}

constexpr std::uint32_t kTableLimit = 256;
constexpr std::uint32_t kPrimeLimit = 1u << 16;

}  // namespace

Field Field::make(std::uint32_t p, std::uint32_t k,
                  const std::vector<felt>* modulus) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (k < 1) throw std::invalid_argument("extension degree must be >= 1");
  if (p >= kPrimeLimit) throw std::invalid_argument("field order out of supported range");

  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q64 *= p;
    if (k > 1 && q64 > kTableLimit)
      throw std::invalid_argument("extension field order must be <= 256");
  }

  auto d = std::make_shared<Data>();
  d->p = p;
  d->k = k;
  d->q = std::uint32_t(q64);

  if (k == 1) {
    if (modulus && !(modulus->size() == 2 && (*modulus)[0] == 0 && (*modulus)[1] == 1))
      throw std::invalid_argument("modulus override is only meaningful for k > 1");
    d->modulus = {0, 1};  // placeholder x - 0, unused
  } else {
    Poly m;
    if (modulus) {
      if (modulus->size() != k + 1)
        throw std::invalid_argument("modulus must have k+1 coefficients");
      m.assign(modulus->begin(), modulus->end());
      for (int c : m)
        if (c < 0 || std::uint32_t(c) >= p)
          throw std::invalid_argument("modulus coefficients must be < p");
      if (m[k] != 1) throw std::invalid_argument("modulus must be monic");
      if (!poly_is_irreducible(m, int(p)))
        throw std::invalid_argument("modulus is reducible over GF(p)");
    } else {
      m = smallest_irreducible(int(p), int(k));
    }
    d->modulus.assign(m.begin(), m.end());
  }

  if (d->q <= kTableLimit) {
    const std::uint32_t q = d->q;
    d->tables = true;
    d->add_t.resize(std::size_t(q) * q);
    d->mul_t.resize(std::size_t(q) * q);
    d->neg_t.resize(q);
    d->inv_t.assign(q, 0);
    if (k == 1) {
      for (std::uint32_t a = 0; a < q; ++a) {
        d->neg_t[a] = felt(a == 0 ? 0 : p - a);
        for (std::uint32_t b = 0; b < q; ++b) {
          d->add_t[std::size_t(a) * q + b] = felt((a + b) % p);
          d->mul_t[std::size_t(a) * q + b] = felt(a * b % p);
        }
      }
    } else {
      Poly m(d->modulus.begin(), d->modulus.end());
      for (std::uint32_t a = 0; a < q; ++a) {
        Poly pa = poly_decode(a, int(p), int(k));
        Poly na(k, 0);
        for (std::uint32_t i = 0; i < k; ++i) na[i] = int((p - pa[i]) % p);
        d->neg_t[a] = felt(poly_encode(na, int(p), int(k)));
        for (std::uint32_t b = 0; b < q; ++b) {
          Poly pb = poly_decode(b, int(p), int(k));
          Poly s(k, 0);
          for (std::uint32_t i = 0; i < k; ++i) s[i] = int((pa[i] + pb[i]) % p);
          d->add_t[std::size_t(a) * q + b] = felt(poly_encode(s, int(p), int(k)));
          Poly prod = poly_mul(pa, pb, int(p));
          poly_mod(prod, m, int(p));
          d->mul_t[std::size_t(a) * q + b] = felt(poly_encode(prod, int(p), int(k)));
        }
      }
    }
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b)
        if (d->mul_t[std::size_t(a) * q + b] == 1) {
          d->inv_t[a] = felt(b);
          break;
        }
  }

  return Field(std::move(d));
}

Field Field::parse(std::string_view text, const std::vector<felt>* modulus) {
  auto parse_u32 = [](std::string_view s) -> std::uint32_t {
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      throw std::invalid_argument("bad field spec: expected p or p^k");
    return v;
  };
  auto caret = text.find('^');
  if (caret == std::string_view::npos) return make(parse_u32(text), 1, modulus);
  return make(parse_u32(text.substr(0, caret)), parse_u32(text.substr(caret + 1)),
              modulus);
}

std::string Field::name() const {
  std::string s = std::to_string(p());
  if (k() > 1) s += "^" + std::to_string(k());
  return s;
}

felt Field::inv(felt a) const {
  if (a == 0) throw std::domain_error("division by zero in GF(q)");
  const Data& d = *d_;
  if (d.tables) return d.inv_t[a];
  return felt(mod_pow(a, d.p - 2, d.p));  // Fermat; p prime
}

bool is_monomial(std::span<const felt> v) {
  int nz = 0;
  for (felt x : v)
    if (x && ++nz > 1) return false;
  return nz == 1;
}

void canonical_normalize_inplace(const Field& f, std::span<felt> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) {
      if (v[i] != 1) {
        felt s = f.inv(v[i]);
        for (std::size_t j = i; j < v.size(); ++j) v[j] = f.mul(s, v[j]);
      }
      return;
    }
  }
  throw std::invalid_argument("cannot normalize the zero vector");
}

std::vector<felt> canonical_normalize(const Field& f, std::span<const felt> v) {
  std::vector<felt> out(v.begin(), v.end());
  canonical_normalize_inplace(f, out);
  return out;
}

VectorStream::VectorStream(const Field& f, int n, VecMode mode)
    : f_(f), n_(n), mode_(mode) {
  if (n < 0) throw std::invalid_argument("vector length must be >= 0");
  const std::uint64_t qn = checked_pow(f.q(), unsigned(n));
  switch (mode) {
    case VecMode::all: size_ = qn; break;
    case VecMode::nonzero: size_ = qn - 1; break;
    case VecMode::normalized: size_ = (qn - 1) / (f.q() - 1); break;
  }
}

void VectorStream::at(std::uint64_t index, felt* out) const {
  if (index >= size_) throw std::out_of_range("vector index out of range");
  const std::uint64_t q = f_.q();
  switch (mode_) {
    case VecMode::nonzero:
      ++index;
      [[fallthrough]];
    case VecMode::all: {
      for (int pos = n_ - 1; pos >= 0; --pos) {
        out[pos] = felt(index % q);
        index /= q;
      }
      return;
    }
    case VecMode::normalized: {
      // blocks by leading-zero count z = n-1, n-2, ..., 0 of sizes 1, q, q^2...
      int t = 0;
      std::uint64_t block = 1;
      while (index >= block) {
        index -= block;
        block *= q;
        ++t;
      }
      const int z = n_ - 1 - t;
      std::fill(out, out + n_, felt(0));
      out[z] = 1;
      for (int pos = n_ - 1; pos > z; --pos) {
        out[pos] = felt(index % q);
        index /= q;
      }
      return;
    }
  }
}

std::vector<felt> VectorStream::at(std::uint64_t index) const {
  std::vector<felt> v(n_);
  at(index, v.data());
  return v;
}

}  // namespace gfcpd
