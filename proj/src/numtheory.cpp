#include "ptgs/numtheory.hpp"

#include <algorithm>
#include <numeric>

#include "ptgs/error.hpp"

namespace ptgs::nt {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % d == 0) return n == d;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw OverflowError("integer power exceeds 64 bits");
    }
  }
  return result;
}

std::uint64_t mult_order(std::uint64_t a, std::uint64_t n) {
  if (n == 1) return 1;
  if (std::gcd(a % n, n) != 1) throw PreconditionError("mult_order: base not a unit");
  // phi(n) via factorization, then strip prime factors.
  std::uint64_t phi = n;
  for (auto p : prime_factors(n)) phi = phi / p * (p - 1);
  std::uint64_t ord = phi;
  for (auto p : prime_factors(phi)) {
    while (ord % p == 0 && powmod(a, ord / p, n) == 1) ord /= p;
  }
  return ord;
}

std::optional<std::uint64_t> inverse_mod(std::int64_t a, std::uint64_t n) {
  std::int64_t m = static_cast<std::int64_t>(n);
  std::int64_t r0 = mod(a, m), r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    std::int64_t qt = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - qt * s1);
  }
  if (r0 != 1) return std::nullopt;
  return static_cast<std::uint64_t>(mod(s0, m));
}

std::optional<std::pair<std::uint64_t, unsigned>> odd_prime_power(std::uint64_t q) {
  if (q < 3 || q % 2 == 0) return std::nullopt;
  auto ps = prime_factors(q);
  if (ps.size() != 1) return std::nullopt;
  unsigned m = 0;
  while (q > 1) {
    q /= ps[0];
    ++m;
  }
  return std::make_pair(ps[0], m);
}

std::vector<std::uint64_t> cyclic_subgroup(std::uint64_t a, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n == 1) return {0};
  std::uint64_t x = 1 % n;
  do {
    out.push_back(x);
    x = mulmod(x, a, n);
  } while (x != 1 % n && out.size() <= n);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ptgs::nt
