#include "pmi/fq.hpp"

namespace pmi {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeModulus::PrimeModulus(std::uint32_t q) : q_(q) {
  if (q > 0x7fffffffu || !is_prime(q))
    throw std::invalid_argument("PrimeModulus: q must be prime and < 2^31");
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
  if (a == 0) throw std::domain_error("inv_mod: division by zero in F_q");
  // Extended Euclid on (a, q); q prime so gcd is 1.
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = q, new_r = a % q;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    t -= quot * new_t;
    std::swap(t, new_t);
    r -= quot * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += q;
  return static_cast<std::uint32_t>(t);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t q) {
  std::uint32_t base = a % q, acc = 1 % q;
  while (e) {
    if (e & 1) acc = mul_mod(acc, base, q);
    base = mul_mod(base, base, q);
    e >>= 1;
  }
  return acc;
}

}  // namespace pmi
