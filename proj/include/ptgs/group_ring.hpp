#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ptgs/field.hpp"
#include "ptgs/kernels.hpp"

namespace ptgs {

using Subset = std::vector<std::int64_t>;  // sorted, duplicate-free indices

struct GroupDescriptor {
  enum class Kind { cyclic, field_additive };
  Kind kind = Kind::cyclic;
  std::int64_t order = 1;
  FieldPtr field;  // set for field_additive

  static GroupDescriptor cyclic(std::int64_t n);
  static GroupDescriptor additive(FieldPtr F);
  bool operator==(const GroupDescriptor& o) const;
};

/// Integer combination of group elements. For cyclic groups index i is i in
/// Z_n; for the additive group of a field index 0 is zero and 1 + i is g^i.
struct GroupRingElement {
  GroupDescriptor group;
  kernels::Coeffs coeffs;

  GroupRingElement() = default;
  GroupRingElement(GroupDescriptor g, kernels::Coeffs c);

  static GroupRingElement zero(const GroupDescriptor& g);
  static GroupRingElement identity(const GroupDescriptor& g);
  static GroupRingElement all_ones(const GroupDescriptor& g);
  static GroupRingElement from_subset(const GroupDescriptor& g, const Subset& s);

  std::int64_t sum() const;
  bool is_zero_one() const;
  /// Indices with nonzero coefficient.
  Subset support() const;

  bool operator==(const GroupRingElement& o) const { return group == o.group && coeffs == o.coeffs; }
};

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b);
GroupRingElement operator*(std::int64_t c, const GroupRingElement& a);

GroupRingElement convolve(const GroupRingElement& a, const GroupRingElement& b,
                          const kernels::ConvolutionPolicy& policy = {});

/// A^{(t)}: coefficient of h is the sum of a_g over g with g^t = h. For the
/// additive group of a field, g^t means the t-fold sum t*g.
GroupRingElement power_map(const GroupRingElement& a, std::int64_t t);

/// A^{(t)} for a subset of Z_n, returned as a sorted multiset-free set. Throws
/// if the map is not injective on s.
Subset power_map_set(const Subset& s, std::int64_t t, std::int64_t n);

/// Every coefficient divisible by d.
bool scalar_divisible(const GroupRingElement& a, std::int64_t d);

/// D D^{(-1)} = (k - lambda) + lambda G. Throws PreconditionError when
/// k(k-1) != lambda(v-1) or v != |G|.
bool is_difference_set(const GroupRingElement& d, std::int64_t v, std::int64_t k, std::int64_t lambda);

/// D D^{(-1)} = k + lambda (G - N) for a subgroup N of order n, |G| = m n.
bool is_relative_difference_set(const GroupRingElement& d, const Subset& subgroup, std::int64_t m, std::int64_t n,
                                std::int64_t k, std::int64_t lambda);

/// Q with Q A = P, where A is a (v,k,lambda) difference set, or nullopt when
/// the rational quotient is not integral. The quotient is re-multiplied and
/// compared with P before it is returned.
std::optional<GroupRingElement> ds_quotient(const GroupRingElement& p, const GroupRingElement& a, std::int64_t v,
                                            std::int64_t k, std::int64_t lambda,
                                            const kernels::ConvolutionPolicy& policy = {});

/// Image of a subset of Z_small inside Z_big via j -> j * (big / small).
Subset embed_subgroup(const Subset& s, std::int64_t small, std::int64_t big);

/// Complement of s inside Z_n.
Subset complement(const Subset& s, std::int64_t n);

}  // namespace ptgs
