#pragma once

#include <cstdint>

#include "tdga/coeff_ring.hpp"

namespace tdga {

// Z/p for a prime p < 2^32.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t reduce(long long x) const;
  std::uint64_t reduce(const Integer& x) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  // Fermat inverse; a must be nonzero.
  std::uint64_t inv(std::uint64_t a) const;

 private:
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace tdga
