#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

// Small-integer number theory used across the library. All routines are exact
// on 64-bit inputs; products go through 128-bit intermediates.
namespace ptgs::nt {

bool is_prime(std::uint64_t n);

/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// base^exp, throwing OverflowError when the result leaves 64 bits.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

/// Non-negative residue of a modulo n (n > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

/// Multiplicative order of a modulo n. Requires gcd(a, n) = 1 and n >= 1.
std::uint64_t mult_order(std::uint64_t a, std::uint64_t n);

/// Inverse of a modulo n, or nullopt when gcd(a, n) != 1.
std::optional<std::uint64_t> inverse_mod(std::int64_t a, std::uint64_t n);

/// Decompose q = p^m with p an odd prime.
std::optional<std::pair<std::uint64_t, unsigned>> odd_prime_power(std::uint64_t q);

/// Subgroup <a> of the unit group Z_n^*, sorted.
std::vector<std::uint64_t> cyclic_subgroup(std::uint64_t a, std::uint64_t n);

}  // namespace ptgs::nt
