#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gfcpd {

// Canonical element code, always in [0, q).  For extension fields the code is
// the base-p digit vector of the polynomial representative, so 0 and 1 encode
// the additive and multiplicative identities in every supported field.
using felt = std::uint16_t;

// b^e with an overflow check; throws std::overflow_error.
std::uint64_t checked_pow(std::uint64_t base, unsigned exp);

// Finite field GF(p^k).
//
// Sizes q <= 256 are backed by full add/mul/neg/inv lookup tables (built once
// at construction); larger prime fields (k == 1, p < 2^16) use modular
// arithmetic.  A Field is immutable after construction, cheap to copy, and
// safe to share across threads.
class Field {
 public:
  Field() = default;

  // p prime, k >= 1.  For k > 1 the modulus (k+1 coefficients of a monic
  // irreducible polynomial over GF(p), lowest degree first) may be supplied;
  // otherwise the lexicographically smallest irreducible one is found by
  // trial division.  Throws std::invalid_argument on non-prime p, an
  // unsupported size, or a bad modulus.
  static Field make(std::uint32_t p, std::uint32_t k,
                    const std::vector<felt>* modulus = nullptr);

  // Parses "p" or "p^k" (e.g. "2", "3", "2^3").
  static Field parse(std::string_view text,
                     const std::vector<felt>* modulus = nullptr);

  std::uint32_t p() const { return d_->p; }
  std::uint32_t k() const { return d_->k; }
  std::uint32_t q() const { return d_->q; }
  // k+1 coefficients, lowest degree first; {0, 1} placeholder when k == 1.
  const std::vector<felt>& modulus() const { return d_->modulus; }
  std::string name() const;  // "p" or "p^k"

  felt add(felt a, felt b) const {
    const Data& d = *d_;
    if (d.tables) return d.add_t[std::size_t(a) * d.q + b];
    return felt((std::uint32_t(a) + b) % d.p);
  }
  felt neg(felt a) const {
    const Data& d = *d_;
    if (d.tables) return d.neg_t[a];
    return a == 0 ? felt(0) : felt(d.p - a);
  }
  felt sub(felt a, felt b) const { return add(a, neg(b)); }
  felt mul(felt a, felt b) const {
    const Data& d = *d_;
    if (d.tables) return d.mul_t[std::size_t(a) * d.q + b];
    return felt((std::uint32_t(a) * b) % d.p);
  }
  felt inv(felt a) const;  // throws std::domain_error on 0
  felt div(felt a, felt b) const { return mul(a, inv(b)); }

  bool operator==(const Field& o) const {
    return d_->p == o.d_->p && d_->k == o.d_->k && d_->modulus == o.d_->modulus;
  }

 private:
  struct Data {
    std::uint32_t p = 2, k = 1, q = 2;
    std::vector<felt> modulus;
    bool tables = false;
    std::vector<felt> add_t, mul_t;  // q*q
    std::vector<felt> neg_t, inv_t;  // q
  };
  explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

// True iff exactly one entry is nonzero.
bool is_monomial(std::span<const felt> v);

// Scales v so its first nonzero entry becomes 1; throws on the zero vector.
void canonical_normalize_inplace(const Field& f, std::span<felt> v);
std::vector<felt> canonical_normalize(const Field& f, std::span<const felt> v);

enum class VecMode { all, nonzero, normalized };

// Deterministic lexicographic enumeration of vectors in F^n, restartable from
// any integer offset (workers may partition [0, size()) freely).
//   all        : every vector, q^n of them
//   nonzero    : every nonzero vector, q^n - 1
//   normalized : canonically normalized vectors, (q^n - 1)/(q - 1); one
//                representative per 1-dimensional subspace
class VectorStream {
 public:
  VectorStream(const Field& f, int n, VecMode mode);
  std::uint64_t size() const { return size_; }
  int length() const { return n_; }
  void at(std::uint64_t index, felt* out) const;
  std::vector<felt> at(std::uint64_t index) const;

 private:
  Field f_;
  int n_;
  VecMode mode_;
  std::uint64_t size_;
};

}  // namespace gfcpd
