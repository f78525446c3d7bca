#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace charkernel {

/// Prime factorization as (prime, exponent) pairs in increasing prime order.
using Factorization = std::vector<std::pair<std::uint64_t, unsigned>>;

bool is_prime(std::uint64_t n);
Factorization factorize(std::uint64_t n);
std::vector<std::uint64_t> prime_divisors(std::uint64_t n);

/// Exponent of p in n (n > 0).
unsigned p_valuation(std::uint64_t n, std::uint64_t p);
/// Largest power of p dividing n.
std::uint64_t p_part(std::uint64_t n, std::uint64_t p);
inline std::uint64_t p_prime_part(std::uint64_t n, std::uint64_t p) {
  return n / p_part(n, p);
}
bool is_power_of(std::uint64_t n, std::uint64_t p);

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, unsigned exp);

std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse modulo a prime m; a must be nonzero mod m.
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t m);

}  // namespace charkernel
