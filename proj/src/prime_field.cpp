#include "tdga/prime_field.hpp"

#include <string>

#include "tdga/errors.hpp"

namespace tdga {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p >= (std::uint64_t{1} << 32) || !is_prime(p)) {
    throw DomainError("modulus " + std::to_string(p) + " is not a prime below 2^32");
  }
}

std::uint64_t PrimeField::reduce(long long x) const {
  long long m = static_cast<long long>(p_);
  long long r = x % m;
  return static_cast<std::uint64_t>(r < 0 ? r + m : r);
}

std::uint64_t PrimeField::reduce(const Integer& x) const {
  Integer r = x % p_;
  if (r < 0) r += p_;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t result = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw DomainError("zero is not invertible mod " + std::to_string(p_));
  return pow(a, p_ - 2);
}

}  // namespace tdga
