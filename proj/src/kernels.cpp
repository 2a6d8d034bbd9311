#include "ptgs/kernels.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>

#include "ptgs/error.hpp"
#include "ptgs/numtheory.hpp"

namespace ptgs::kernels {

namespace {

constexpr __int128 kInt64Max = std::numeric_limits<std::int64_t>::max();

struct Sparse {
  std::vector<std::int64_t> idx;
  std::vector<std::int64_t> val;
};

Sparse sparsify(const Coeffs& a) {
  Sparse s;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) {
      s.idx.push_back(static_cast<std::int64_t>(i));
      s.val.push_back(a[i]);
    }
  }
  return s;
}

std::int64_t to_int64_checked(__int128 v) {
  if (v > kInt64Max || v < -kInt64Max) throw OverflowError("group ring coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

Coeffs cyclic_convolve_wide(const Coeffs& a, const Coeffs& b) {
  const std::size_t n = a.size();
  std::vector<__int128> acc(n, 0);
  Sparse sa = sparsify(a), sb = sparsify(b);
  for (std::size_t i = 0; i < sa.idx.size(); ++i) {
    for (std::size_t j = 0; j < sb.idx.size(); ++j) {
      std::size_t k = static_cast<std::size_t>((sa.idx[i] + sb.idx[j]) % static_cast<std::int64_t>(n));
      acc[k] += static_cast<__int128>(sa.val[i]) * sb.val[j];
    }
  }
  Coeffs out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = to_int64_checked(acc[k]);
  return out;
}

}  // namespace

__int128 product_bound(const Coeffs& a, const Coeffs& b) {
  auto stats = [](const Coeffs& v) {
    __int128 mx = 0;
    std::int64_t nnz = 0;
    for (auto c : v) {
      __int128 m = c < 0 ? -static_cast<__int128>(c) : static_cast<__int128>(c);
      mx = std::max(mx, m);
      nnz += c != 0;
    }
    return std::make_pair(mx, nnz);
  };
  auto [ma, na] = stats(a);
  auto [mb, nb] = stats(b);
  __int128 prod = ma * mb;
  // ma, mb < 2^63 so prod < 2^126; a further factor can overflow.
  __int128 cnt = std::min(na, nb);
  if (cnt != 0 && prod > (std::numeric_limits<__int128>::max() / cnt)) return std::numeric_limits<__int128>::max();
  return prod * cnt;
}

Coeffs cyclic_convolve_serial(const Coeffs& a, const Coeffs& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw PreconditionError("cyclic convolution: length mismatch");
  Coeffs out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t k = i + j;
      if (k >= n) k -= n;
      out[k] += a[i] * b[j];
    }
  }
  return out;
}

Coeffs cyclic_convolve_parallel(const Coeffs& a, const Coeffs& b) {
  const std::int64_t n = static_cast<std::int64_t>(a.size());
  if (static_cast<std::int64_t>(b.size()) != n) throw PreconditionError("cyclic convolution: length mismatch");
  // Gather from the sparser operand: out[k] = sum_j s_j * d[k - j].
  const bool a_sparser = std::count(a.begin(), a.end(), 0) >= std::count(b.begin(), b.end(), 0);
  const Coeffs& dense = a_sparser ? b : a;
  Sparse sp = sparsify(a_sparser ? a : b);
  const std::int64_t nnz = static_cast<std::int64_t>(sp.idx.size());
  Coeffs out(n, 0);
  const std::int64_t block = 1024;
  const std::int64_t nblocks = (n + block - 1) / block;
  const std::int64_t* d = dense.data();
#pragma omp parallel for schedule(static)
  for (std::int64_t blk = 0; blk < nblocks; ++blk) {
    const std::int64_t k0 = blk * block;
    const std::int64_t k1 = std::min(n, k0 + block);
    std::int64_t* o = out.data();
    for (std::int64_t t = 0; t < nnz; ++t) {
      const std::int64_t j = sp.idx[t];
      const std::int64_t s = sp.val[t];
      // k in [k0, k1): source index k - j, wrapped into [0, n).
      std::int64_t split = std::clamp(j, k0, k1);
      for (std::int64_t k = k0; k < split; ++k) o[k] += s * d[k - j + n];
      for (std::int64_t k = split; k < k1; ++k) o[k] += s * d[k - j];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Number-theoretic transform

namespace {

struct NttPrime {
  std::uint32_t mod;
  std::uint32_t root;
};

constexpr std::array<NttPrime, 3> kPrimes = {{{998244353u, 3u}, {167772161u, 3u}, {469762049u, 3u}}};

std::uint64_t pw(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

void ntt(std::vector<std::uint64_t>& a, bool invert, const NttPrime& P) {
  const std::size_t n = a.size();
  const std::uint64_t mod = P.mod;
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pw(P.root, (mod - 1) / len, mod);
    if (invert) w = pw(w, mod - 2, mod);
    for (std::size_t i = 0; i < n; i += len) {
      std::uint64_t wn = 1;
      for (std::size_t j = 0; j < len / 2; ++j) {
        std::uint64_t u = a[i + j], v = a[i + j + len / 2] * wn % mod;
        a[i + j] = u + v < mod ? u + v : u + v - mod;
        a[i + j + len / 2] = u >= v ? u - v : u + mod - v;
        wn = wn * w % mod;
      }
    }
  }
  if (invert) {
    std::uint64_t inv_n = pw(n, mod - 2, mod);
    for (auto& x : a) x = x * inv_n % mod;
  }
}

std::vector<std::uint64_t> cyclic_mod_prime(const Coeffs& a, const Coeffs& b, const NttPrime& P) {
  const std::size_t n = a.size();
  std::size_t len = 1;
  while (len < 2 * n) len <<= 1;
  if ((P.mod - 1) % len != 0) throw PreconditionError("NTT length exceeds prime capacity");
  auto load = [&](const Coeffs& v) {
    std::vector<std::uint64_t> out(len, 0);
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t r = v[i] % static_cast<std::int64_t>(P.mod);
      out[i] = static_cast<std::uint64_t>(r < 0 ? r + P.mod : r);
    }
    return out;
  };
  auto fa = load(a), fb = load(b);
  ntt(fa, false, P);
  ntt(fb, false, P);
  for (std::size_t i = 0; i < len; ++i) fa[i] = fa[i] * fb[i] % P.mod;
  ntt(fa, true, P);
  std::vector<std::uint64_t> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t v = fa[i];
    if (i + n < len) v = (v + fa[i + n]) % P.mod;
    out[i] = v;
  }
  return out;
}

}  // namespace

Coeffs cyclic_convolve_ntt(const Coeffs& a, const Coeffs& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw PreconditionError("cyclic convolution: length mismatch");
  std::array<std::vector<std::uint64_t>, 3> r;
#pragma omp parallel for schedule(static)
  for (int t = 0; t < 3; ++t) r[t] = cyclic_mod_prime(a, b, kPrimes[t]);

  // Garner reconstruction into [0, M), then recentre into (-M/2, M/2].
  const unsigned __int128 m0 = kPrimes[0].mod, m1 = kPrimes[1].mod, m2 = kPrimes[2].mod;
  const std::uint64_t inv_m0_mod_m1 = pw(kPrimes[0].mod, kPrimes[1].mod - 2, kPrimes[1].mod);
  const std::uint64_t m01_mod_m2 = static_cast<std::uint64_t>(m0 * m1 % m2);
  const std::uint64_t inv_m01_mod_m2 = pw(m01_mod_m2, kPrimes[2].mod - 2, kPrimes[2].mod);
  const unsigned __int128 M = m0 * m1 * m2;
  Coeffs out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t x0 = r[0][i];
    std::uint64_t t1 = (r[1][i] + kPrimes[1].mod - x0 % kPrimes[1].mod) % kPrimes[1].mod * inv_m0_mod_m1 % kPrimes[1].mod;
    unsigned __int128 x01 = x0 + static_cast<unsigned __int128>(t1) * m0;
    std::uint64_t x01_mod_m2 = static_cast<std::uint64_t>(x01 % m2);
    std::uint64_t t2 = (r[2][i] + kPrimes[2].mod - x01_mod_m2) % kPrimes[2].mod * inv_m01_mod_m2 % kPrimes[2].mod;
    unsigned __int128 x = x01 + static_cast<unsigned __int128>(t2) * m0 * m1;
    __int128 s = x > M / 2 ? -static_cast<__int128>(M - x) : static_cast<__int128>(x);
    out[i] = to_int64_checked(s);
  }
  return out;
}

Coeffs cyclic_convolve(const Coeffs& a, const Coeffs& b, const ConvolutionPolicy& policy) {
  if (a.size() != b.size()) throw PreconditionError("cyclic convolution: length mismatch");
  __int128 bound = product_bound(a, b);
  if (bound > kInt64Max) return cyclic_convolve_wide(a, b);
  if (static_cast<std::int64_t>(a.size()) > policy.ntt_threshold) return cyclic_convolve_ntt(a, b);
  return policy.parallel ? cyclic_convolve_parallel(a, b) : cyclic_convolve_serial(a, b);
}

// ---------------------------------------------------------------------------
// Additive group of a field

namespace {

inline std::int64_t additive_sum(const Field& F, std::int64_t x, std::int64_t y) {
  FieldElement s = F.add(FieldElement{static_cast<std::int32_t>(x - 1)}, FieldElement{static_cast<std::int32_t>(y - 1)});
  return s.log + 1;
}

void check_additive(const Field& F, const Coeffs& a, const Coeffs& b) {
  if (static_cast<std::int64_t>(a.size()) != F.order() || static_cast<std::int64_t>(b.size()) != F.order()) {
    throw PreconditionError("additive convolution: length is not the field order");
  }
}

}  // namespace

Coeffs additive_convolve_serial(const Field& F, const Coeffs& a, const Coeffs& b) {
  check_additive(F, a, b);
  const std::size_t q = a.size();
  Coeffs out(q, 0);
  for (std::size_t x = 0; x < q; ++x) {
    if (a[x] == 0) continue;
    for (std::size_t y = 0; y < q; ++y) {
      if (b[y] == 0) continue;
      out[additive_sum(F, static_cast<std::int64_t>(x), static_cast<std::int64_t>(y))] += a[x] * b[y];
    }
  }
  return out;
}

namespace {

// Largest prime P < 2^62 with P = 1 mod p, and an element of order p.
struct DigitPrime {
  std::uint64_t mod = 0;
  std::uint64_t omega = 0;
};

DigitPrime digit_prime(int p) {
  DigitPrime d;
  for (std::uint64_t k = ((1ULL << 62) - 1) / p; k > 0; --k) {
    if (nt::is_prime(k * p + 1)) {
      d.mod = k * p + 1;
      break;
    }
  }
  for (std::uint64_t g = 2;; ++g) {
    std::uint64_t w = nt::powmod(g, (d.mod - 1) / p, d.mod);
    if (w != 1) {
      d.omega = w;
      return d;
    }
  }
}

// In-place length-p DFT along every digit of a polynomial-form index.
void digit_transform(std::vector<std::uint64_t>& x, int p, int m, std::uint64_t omega, std::uint64_t mod) {
  std::vector<std::uint64_t> pw_tab(p);
  pw_tab[0] = 1;
  for (int i = 1; i < p; ++i) pw_tab[i] = nt::mulmod(pw_tab[i - 1], omega, mod);
  const std::int64_t q = static_cast<std::int64_t>(x.size());
  std::int64_t stride = 1;
  for (int d = 0; d < m; ++d, stride *= p) {
    const std::int64_t block = stride * p;
#pragma omp parallel
    {
      std::vector<std::uint64_t> line(p), out(p);
#pragma omp for schedule(static)
      for (std::int64_t base = 0; base < q; base += block) {
        for (std::int64_t off = 0; off < stride; ++off) {
          for (int j = 0; j < p; ++j) line[j] = x[base + off + j * stride];
          for (int k = 0; k < p; ++k) {
            unsigned __int128 acc = 0;
            for (int j = 0; j < p; ++j) {
              acc += static_cast<unsigned __int128>(line[j]) * pw_tab[(static_cast<std::int64_t>(j) * k) % p];
              if ((j & 31) == 31) acc %= mod;
            }
            out[k] = static_cast<std::uint64_t>(acc % mod);
          }
          for (int k = 0; k < p; ++k) x[base + off + k * stride] = out[k];
        }
      }
    }
  }
}

}  // namespace

Coeffs additive_convolve_transform(const Field& F, const Coeffs& a, const Coeffs& b) {
  check_additive(F, a, b);
  const DigitPrime dp = digit_prime(F.p());
  if (2 * product_bound(a, b) >= static_cast<__int128>(dp.mod)) {
    throw OverflowError("additive transform: coefficients may exceed the transform modulus");
  }
  const std::int64_t q = F.order();
  const auto& antilog = F.antilog_table();
  // Reindex by polynomial form: exponent index 1 + i sits at antilog[i].
  auto load = [&](const Coeffs& c) {
    std::vector<std::uint64_t> x(q, 0);
    for (std::int64_t i = 0; i < q; ++i) {
      const std::int64_t pos = i == 0 ? 0 : antilog[i - 1];
      x[pos] = c[i] >= 0 ? static_cast<std::uint64_t>(c[i]) : dp.mod - static_cast<std::uint64_t>(-c[i]);
    }
    return x;
  };
  auto xa = load(a), xb = load(b);
  digit_transform(xa, F.p(), F.m(), dp.omega, dp.mod);
  digit_transform(xb, F.p(), F.m(), dp.omega, dp.mod);
  for (std::int64_t i = 0; i < q; ++i) xa[i] = nt::mulmod(xa[i], xb[i], dp.mod);
  digit_transform(xa, F.p(), F.m(), nt::powmod(dp.omega, F.p() - 1, dp.mod), dp.mod);
  const std::uint64_t q_inv = nt::powmod(static_cast<std::uint64_t>(q) % dp.mod, dp.mod - 2, dp.mod);
  Coeffs out(q);
  for (std::int64_t i = 0; i < q; ++i) {
    const std::int64_t pos = i == 0 ? 0 : antilog[i - 1];
    const std::uint64_t v = nt::mulmod(xa[pos], q_inv, dp.mod);
    out[i] = v > dp.mod / 2 ? -static_cast<std::int64_t>(dp.mod - v) : static_cast<std::int64_t>(v);
  }
  return out;
}

Coeffs additive_convolve(const Field& F, const Coeffs& a, const Coeffs& b, const ConvolutionPolicy& policy) {
  check_additive(F, a, b);
  const __int128 bound = product_bound(a, b);
  if (bound > kInt64Max) throw OverflowError("additive convolution: coefficients may exceed 64 bits");
  if (!policy.parallel) return additive_convolve_serial(F, a, b);
  // The transform costs about 3 q m p steps against up to q^2 for the gather.
  const std::int64_t q = F.order();
  if (q >= policy.additive_transform_threshold && static_cast<std::int64_t>(F.p()) * F.m() * 16 < q &&
      2 * bound < (static_cast<__int128>(1) << 61)) {
    return additive_convolve_transform(F, a, b);
  }
  Sparse sa = sparsify(a), sb = sparsify(b);
  const std::int64_t na = static_cast<std::int64_t>(sa.idx.size());
  Coeffs out(q, 0);
#pragma omp parallel
  {
    Coeffs local(q, 0);
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < na; ++i) {
      for (std::size_t j = 0; j < sb.idx.size(); ++j) {
        local[additive_sum(F, sa.idx[i], sb.idx[j])] += sa.val[i] * sb.val[j];
      }
    }
#pragma omp critical
    for (std::int64_t k = 0; k < q; ++k) out[k] += local[k];
  }
  return out;
}

}  // namespace ptgs::kernels
