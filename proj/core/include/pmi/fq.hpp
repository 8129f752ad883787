#pragma once

#include <cstdint>
#include <stdexcept>

namespace pmi {

// Trial-division primality test; the census primes are all small.
bool is_prime(std::uint32_t n);

/// A checked prime modulus q, 2 <= q <= 2^31 - 1.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint32_t q);
  std::uint32_t value() const { return q_; }
  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint32_t q_;
};

// Raw residue arithmetic on values already reduced to [0, q).
// q < 2^31, so sums fit in 32 bits and products in 64 bits.
inline std::uint32_t add_mod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  std::uint32_t s = a + b;
  return s >= q ? s - q : s;
}
inline std::uint32_t sub_mod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  return a >= b ? a - b : a + (q - b);
}
inline std::uint32_t neg_mod(std::uint32_t a, std::uint32_t q) { return a ? q - a : 0; }
inline std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t q) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q);
}

// Multiplicative inverse by extended Euclid; throws std::domain_error on a == 0.
std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q);

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t q);

// Reduce an arbitrary signed integer into [0, q).
inline std::uint32_t reduce_mod(std::int64_t v, std::uint32_t q) {
  std::int64_t r = v % static_cast<std::int64_t>(q);
  if (r < 0) r += q;
  return static_cast<std::uint32_t>(r);
}

/// Immutable element of F_q. Arithmetic between different moduli is an error.
class FieldElement {
 public:
  FieldElement(std::uint32_t value, PrimeModulus m)
      : v_(value % m.value()), q_(m) {}

  static FieldElement from_int(std::int64_t v, PrimeModulus m) {
    return FieldElement(reduce_mod(v, m.value()), m);
  }

  std::uint32_t value() const { return v_; }
  PrimeModulus modulus() const { return q_; }
  bool is_zero() const { return v_ == 0; }

  FieldElement inv() const {
    return FieldElement(inv_mod(v_, q_.value()), q_);
  }

  friend FieldElement operator+(FieldElement a, FieldElement b) {
    check_same(a, b);
    return FieldElement(add_mod(a.v_, b.v_, a.q_.value()), a.q_);
  }
  friend FieldElement operator-(FieldElement a, FieldElement b) {
    check_same(a, b);
    return FieldElement(sub_mod(a.v_, b.v_, a.q_.value()), a.q_);
  }
  friend FieldElement operator*(FieldElement a, FieldElement b) {
    check_same(a, b);
    return FieldElement(mul_mod(a.v_, b.v_, a.q_.value()), a.q_);
  }
  FieldElement operator-() const { return FieldElement(neg_mod(v_, q_.value()), q_); }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  static void check_same(const FieldElement& a, const FieldElement& b) {
    if (a.q_.value() != b.q_.value())
      throw std::invalid_argument("FieldElement: modulus mismatch");
  }

  std::uint32_t v_;
  PrimeModulus q_;
};

}  // namespace pmi
