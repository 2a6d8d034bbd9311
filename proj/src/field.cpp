#include "ptgs/field.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

#include "ptgs/error.hpp"
#include "ptgs/numtheory.hpp"

namespace ptgs {

namespace {

using Poly = std::vector<std::int64_t>;

// Product of a and b modulo the monic polynomial f (coefficients c_0..c_m).
Poly poly_mulmod(const Poly& a, const Poly& b, const std::vector<int>& f, int p) {
  const std::size_t m = f.size() - 1;
  std::vector<std::int64_t> prod(2 * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (std::size_t d = 2 * m - 1; d >= m; --d) {
    std::int64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::size_t j = 0; j < m; ++j) {
      prod[d - m + j] = ((prod[d - m + j] - c * f[j]) % p + p) % p;
    }
  }
  return Poly(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(m));
}

Poly poly_x_pow(std::uint64_t e, const std::vector<int>& f, int p) {
  const std::size_t m = f.size() - 1;
  Poly result(m, 0), base(m, 0);
  result[0] = 1;
  if (m == 1) {
    base[0] = ((-f[0]) % p + p) % p;
  } else {
    base[1] = 1;
  }
  while (e > 0) {
    if (e & 1) result = poly_mulmod(result, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

bool is_one(const Poly& a) {
  if (a[0] != 1) return false;
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

}  // namespace

bool is_primitive_polynomial(int p, const std::vector<int>& modulus) {
  if (modulus.size() < 2 || modulus.back() != 1) return false;
  for (int c : modulus) {
    if (c < 0 || c >= p) return false;
  }
  if (modulus[0] == 0) return false;
  const unsigned m = static_cast<unsigned>(modulus.size() - 1);
  const std::uint64_t n = nt::ipow(static_cast<std::uint64_t>(p), m) - 1;
  if (!is_one(poly_x_pow(n, modulus, p))) return false;
  for (auto r : nt::prime_factors(n)) {
    if (is_one(poly_x_pow(n / r, modulus, p))) return false;
  }
  return true;
}

std::int64_t Field::max_order() {
  if (const char* env = std::getenv("PTGS_MAX_FIELD_ORDER")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw PreconditionError("PTGS_MAX_FIELD_ORDER is not an integer");
    }
  }
  return 14348907;  // 3^15
}

FieldPtr Field::create(int p, int m, std::optional<std::vector<int>> modulus) {
  if (p == 2) throw PreconditionError("characteristic 2 is not supported");
  if (p < 3 || !nt::is_prime(static_cast<std::uint64_t>(p))) {
    throw PreconditionError("field_create: " + std::to_string(p) + " is not an odd prime");
  }
  if (m < 1) throw PreconditionError("field_create: degree must be at least 1");
  std::uint64_t q = nt::ipow(static_cast<std::uint64_t>(p), static_cast<unsigned>(m));
  if (static_cast<std::int64_t>(q) > max_order()) {
    throw PreconditionError("field_create: order " + std::to_string(q) + " exceeds the configured maximum");
  }

  std::vector<int> f;
  if (modulus) {
    f = *modulus;
    if (f.size() != static_cast<std::size_t>(m) + 1 || f.back() != 1) {
      throw PreconditionError("field_create: modulus must be monic of degree m");
    }
    if (!is_primitive_polynomial(p, f)) throw PreconditionError("field_create: supplied modulus is not primitive");
  } else {
    // Tuples (c_{m-1}, ..., c_0) in ascending order: c_{m-1} is the most
    // significant digit of the counter.
    f.assign(static_cast<std::size_t>(m) + 1, 0);
    f[m] = 1;
    bool found = false;
    for (std::uint64_t k = 0; k < q && !found; ++k) {
      std::uint64_t t = k;
      for (int i = 0; i < m; ++i) {
        f[i] = static_cast<int>(t % p);
        t /= p;
      }
      found = is_primitive_polynomial(p, f);
    }
    if (!found) throw InconsistencyError("no primitive polynomial found");
  }

  auto F = std::shared_ptr<Field>(new Field());
  F->p_ = p;
  F->m_ = m;
  F->q_ = static_cast<std::int64_t>(q);
  F->n_ = static_cast<std::int32_t>(q - 1);
  F->modulus_ = f;
  F->log_.assign(q, -1);
  F->antilog_.assign(q - 1, 0);

  // Walk powers of x: multiply the polynomial integer by x and reduce.
  std::vector<std::int64_t> digits(m, 0);
  digits[0] = 1;
  std::vector<std::int64_t> pw(m, 1);
  for (int i = 1; i < m; ++i) pw[i] = pw[i - 1] * p;
  for (std::int32_t i = 0; i < F->n_; ++i) {
    std::int64_t v = 0;
    for (int j = 0; j < m; ++j) v += digits[j] * pw[j];
    if (F->log_[v] != -1) throw InconsistencyError("field_create: modulus is not primitive");
    F->log_[v] = i;
    F->antilog_[i] = static_cast<std::int32_t>(v);
    std::int64_t top = digits[m - 1];
    for (int j = m - 1; j > 0; --j) digits[j] = digits[j - 1];
    digits[0] = 0;
    for (int j = 0; j < m; ++j) digits[j] = ((digits[j] - top * f[j]) % p + p) % p;
  }
  if (F->antilog_.size() > 1 && F->log_[1] != 0) throw InconsistencyError("field_create: table walk broken");

  F->zech_.assign(F->n_, -1);
  std::int32_t sentinels = 0;
  for (std::int32_t i = 0; i < F->n_; ++i) {
    std::int64_t s = F->int_add(F->antilog_[i], 1);
    F->zech_[i] = F->log_[s];
    if (s == 0) ++sentinels;
  }
  if (sentinels != 1 || F->zech_[F->n_ / 2] != -1) {
    throw InconsistencyError("field_create: Zech sentinel is not unique at n/2");
  }
  return F;
}

std::int64_t Field::int_add(std::int64_t a, std::int64_t b) const {
  std::int64_t out = 0, scale = 1;
  while (a > 0 || b > 0) {
    std::int64_t d = (a % p_ + b % p_) % p_;
    out += d * scale;
    scale *= p_;
    a /= p_;
    b /= p_;
  }
  return out;
}

FieldElement Field::gen_power(std::int64_t i) const {
  return FieldElement::power(static_cast<std::int32_t>(nt::mod(i, n_)));
}

FieldElement Field::add(FieldElement a, FieldElement b) const {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // g^a + g^b = g^a (1 + g^{b-a}).
  std::int32_t d = b.log - a.log;
  if (d < 0) d += n_;
  std::int32_t z = zech_[d];
  if (z < 0) return FieldElement::zero();
  std::int32_t r = a.log + z;
  if (r >= n_) r -= n_;
  return FieldElement::power(r);
}

FieldElement Field::neg(FieldElement a) const {
  if (a.is_zero()) return a;
  std::int32_t r = a.log + n_ / 2;
  if (r >= n_) r -= n_;
  return FieldElement::power(r);
}

FieldElement Field::mul(FieldElement a, FieldElement b) const {
  if (a.is_zero() || b.is_zero()) return FieldElement::zero();
  std::int64_t r = static_cast<std::int64_t>(a.log) + b.log;
  if (r >= n_) r -= n_;
  return FieldElement::power(static_cast<std::int32_t>(r));
}

FieldElement Field::inv(FieldElement a) const {
  if (a.is_zero()) throw PreconditionError("inverse of zero");
  return FieldElement::power(a.log == 0 ? 0 : n_ - a.log);
}

FieldElement Field::pow(FieldElement a, std::int64_t k) const {
  if (a.is_zero()) {
    if (k < 0) throw PreconditionError("negative power of zero");
    return k == 0 ? one() : a;
  }
  auto e = static_cast<std::int64_t>(
      (static_cast<__int128>(a.log) * nt::mod(k, n_)) % n_);
  return FieldElement::power(static_cast<std::int32_t>(e));
}

FieldElement Field::frobenius(FieldElement a, std::int64_t k) const {
  if (a.is_zero()) return a;
  std::uint64_t pk = nt::powmod(static_cast<std::uint64_t>(p_), static_cast<std::uint64_t>(nt::mod(k, m_)),
                                static_cast<std::uint64_t>(n_));
  return FieldElement::power(static_cast<std::int32_t>(nt::mulmod(a.log, pk, n_)));
}

bool Field::is_square(FieldElement a) const {
  if (a.is_zero()) throw PreconditionError("is_square: argument is zero");
  return a.log % 2 == 0;
}

bool Field::in_subfield(FieldElement a, int d) const {
  if (d <= 0 || m_ % d != 0) throw PreconditionError("in_subfield: degree does not divide m");
  if (a.is_zero()) return true;
  std::int64_t sub = nt::ipow(p_, d) - 1;
  return a.log % (n_ / sub) == 0;
}

FieldElement Field::rel_trace(int d, FieldElement x, int top) const {
  if (top == 0) top = m_;
  if (d <= 0 || top % d != 0 || m_ % top != 0) throw PreconditionError("rel_trace: degree tower mismatch");
  if (!in_subfield(x, top)) throw PreconditionError("rel_trace: argument outside the top field");
  FieldElement acc = FieldElement::zero();
  for (int i = 0; i < top / d; ++i) acc = add(acc, frobenius(x, static_cast<std::int64_t>(d) * i));
  return acc;
}

std::int64_t Field::to_int(FieldElement a) const { return a.is_zero() ? 0 : antilog_[a.log]; }

FieldElement Field::from_int(std::int64_t v) const {
  if (v < 0 || v >= q_) throw PreconditionError("from_int: value out of range");
  return {log_[v]};
}

std::vector<int> Field::to_poly(FieldElement a) const {
  std::int64_t v = to_int(a);
  std::vector<int> out(m_, 0);
  for (int i = 0; i < m_; ++i) {
    out[i] = static_cast<int>(v % p_);
    v /= p_;
  }
  return out;
}

FieldPtr cached_field(int p, int m) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, m}];
  if (!slot) slot = Field::create(p, m);
  return slot;
}

}  // namespace ptgs
