#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

namespace ptgs {

/// Nonzero elements are stored as g^log for the fixed primitive element g;
/// log = -1 encodes zero.
struct FieldElement {
  std::int32_t log = -1;

  static constexpr FieldElement zero() { return {-1}; }
  static constexpr FieldElement power(std::int32_t i) { return {i}; }
  constexpr bool is_zero() const { return log < 0; }
  auto operator<=>(const FieldElement&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_{p^m} in Zech-logarithm representation. Immutable after construction.
///
/// Elements also have a polynomial form: the integer sum c_i p^i for the
/// residue c_0 + c_1 x + ... of the defining polynomial. That integer is the
/// "vector index" used for additive-group indexing and graph vertex labels.
class Field {
 public:
  /// Build F_{p^m}. Without a modulus, the first primitive monic polynomial in
  /// ascending (c_{m-1}, ..., c_0) order is used. modulus is c_0..c_m.
  static FieldPtr create(int p, int m, std::optional<std::vector<int>> modulus = std::nullopt);

  /// Largest accepted p^m; PTGS_MAX_FIELD_ORDER overrides the default 3^15.
  static std::int64_t max_order();

  int p() const { return p_; }
  int m() const { return m_; }
  std::int64_t order() const { return q_; }
  /// Size of the multiplicative group, p^m - 1.
  std::int32_t n() const { return n_; }
  const std::vector<int>& modulus() const { return modulus_; }

  FieldElement one() const { return FieldElement::power(0); }
  FieldElement minus_one() const { return FieldElement::power(n_ / 2); }
  FieldElement gen_power(std::int64_t i) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement sub(FieldElement a, FieldElement b) const { return add(a, neg(b)); }
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, std::int64_t k) const;
  /// a^{p^k}.
  FieldElement frobenius(FieldElement a, std::int64_t k) const;
  bool is_square(FieldElement a) const;

  /// Sum of x^{p^{d i}} for i < top/d, where x lies in the subfield of degree
  /// top (top = 0 means m). With top = m this is the trace onto F_{p^d}.
  FieldElement rel_trace(int d, FieldElement x, int top = 0) const;

  /// Zech logarithm Z(i) with g^Z(i) = 1 + g^i, or -1 at i = n/2.
  std::int32_t zech(std::int32_t i) const { return zech_[i]; }

  /// Polynomial-form integer of an element (0 for zero).
  std::int64_t to_int(FieldElement a) const;
  FieldElement from_int(std::int64_t v) const;
  /// Coefficients c_0..c_{m-1} of the polynomial form.
  std::vector<int> to_poly(FieldElement a) const;

  /// Membership in the subfield F_{p^d} (d | m).
  bool in_subfield(FieldElement a, int d) const;

  const std::vector<std::int32_t>& log_table() const { return log_; }
  const std::vector<std::int32_t>& antilog_table() const { return antilog_; }

 private:
  Field() = default;
  std::int64_t int_add(std::int64_t a, std::int64_t b) const;

  int p_ = 0;
  int m_ = 0;
  std::int64_t q_ = 0;
  std::int32_t n_ = 0;
  std::vector<int> modulus_;
  std::vector<std::int32_t> log_;      // indexed by polynomial integer
  std::vector<std::int32_t> antilog_;  // g^i as polynomial integer
  std::vector<std::int32_t> zech_;
};

/// Process-wide cache of default-modulus fields.
FieldPtr cached_field(int p, int m);

/// True iff the monic polynomial c_0..c_m over Z_p is primitive.
bool is_primitive_polynomial(int p, const std::vector<int>& modulus);

}  // namespace ptgs
