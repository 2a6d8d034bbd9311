#pragma once

#include <cstdint>
#include <vector>

#include "ptgs/field.hpp"

// Exact integer convolution kernels. Every entry point has a serial reference
// version kept for testing and benchmarking; the default versions use OpenMP.
namespace ptgs::kernels {

using Coeffs = std::vector<std::int64_t>;

struct ConvolutionPolicy {
  /// Cyclic lengths above this go through the number-theoretic transform.
  std::int64_t ntt_threshold = 20000;
  bool parallel = true;
  /// Field orders at or above this use the digit-wise transform when it is
  /// cheaper than the sparse gather.
  std::int64_t additive_transform_threshold = 729;
};

/// Upper bound on |coefficient| of a*b, computed in 128 bits.
__int128 product_bound(const Coeffs& a, const Coeffs& b);

/// Cyclic convolution over Z_n, n = a.size() = b.size(). Throws OverflowError
/// when a coefficient of the exact result does not fit in 64 bits.
Coeffs cyclic_convolve(const Coeffs& a, const Coeffs& b, const ConvolutionPolicy& policy = {});

/// Plain double loop; the ground truth for the other cyclic kernels.
Coeffs cyclic_convolve_serial(const Coeffs& a, const Coeffs& b);

/// Sparse gather over output blocks, OpenMP-parallel. No overflow checks.
Coeffs cyclic_convolve_parallel(const Coeffs& a, const Coeffs& b);

/// Three-prime NTT with CRT reconstruction. Exact while |result| < 2^63.
Coeffs cyclic_convolve_ntt(const Coeffs& a, const Coeffs& b);

/// Convolution in the additive group of F. Index 0 is the zero element and
/// index 1 + i is g^i.
Coeffs additive_convolve(const Field& F, const Coeffs& a, const Coeffs& b, const ConvolutionPolicy& policy = {});
Coeffs additive_convolve_serial(const Field& F, const Coeffs& a, const Coeffs& b);

/// Length-p transforms along each base-p digit of the polynomial form, modulo
/// a prime P = 1 mod p below 2^62. Throws OverflowError unless the result is
/// certified to lie in (-P/2, P/2).
Coeffs additive_convolve_transform(const Field& F, const Coeffs& a, const Coeffs& b);

}  // namespace ptgs::kernels
