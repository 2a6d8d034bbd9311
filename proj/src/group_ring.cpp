#include "ptgs/group_ring.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "ptgs/error.hpp"
#include "ptgs/numtheory.hpp"

namespace ptgs {

GroupDescriptor GroupDescriptor::cyclic(std::int64_t n) {
  if (n < 1) throw PreconditionError("cyclic group order must be positive");
  return {Kind::cyclic, n, nullptr};
}

GroupDescriptor GroupDescriptor::additive(FieldPtr F) {
  if (!F) throw PreconditionError("additive group needs a field");
  return {Kind::field_additive, F->order(), F};
}

bool GroupDescriptor::operator==(const GroupDescriptor& o) const {
  if (kind != o.kind || order != o.order) return false;
  if (kind == Kind::cyclic) return true;
  return field == o.field || (field->p() == o.field->p() && field->modulus() == o.field->modulus());
}

GroupRingElement::GroupRingElement(GroupDescriptor g, kernels::Coeffs c) : group(std::move(g)), coeffs(std::move(c)) {
  if (static_cast<std::int64_t>(coeffs.size()) != group.order) {
    throw PreconditionError("group ring element length does not match group order");
  }
}

GroupRingElement GroupRingElement::zero(const GroupDescriptor& g) { return {g, kernels::Coeffs(g.order, 0)}; }

GroupRingElement GroupRingElement::identity(const GroupDescriptor& g) {
  auto e = zero(g);
  e.coeffs[0] = 1;
  return e;
}

GroupRingElement GroupRingElement::all_ones(const GroupDescriptor& g) { return {g, kernels::Coeffs(g.order, 1)}; }

GroupRingElement GroupRingElement::from_subset(const GroupDescriptor& g, const Subset& s) {
  auto e = zero(g);
  for (auto i : s) {
    if (i < 0 || i >= g.order) throw PreconditionError("subset index out of range");
    e.coeffs[i] = 1;
  }
  return e;
}

std::int64_t GroupRingElement::sum() const {
  std::int64_t s = 0;
  for (auto c : coeffs) {
    if (__builtin_add_overflow(s, c, &s)) throw OverflowError("coefficient sum exceeds 64 bits");
  }
  return s;
}

bool GroupRingElement::is_zero_one() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](std::int64_t c) { return c == 0 || c == 1; });
}

Subset GroupRingElement::support() const {
  Subset s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0) s.push_back(static_cast<std::int64_t>(i));
  }
  return s;
}

namespace {

void require_same(const GroupRingElement& a, const GroupRingElement& b) {
  if (!(a.group == b.group)) throw PreconditionError("group ring operands live in different groups");
}

std::int64_t group_add(const GroupDescriptor& g, std::int64_t x, std::int64_t y) {
  if (g.kind == GroupDescriptor::Kind::cyclic) return (x + y) % g.order;
  return g.field->add(FieldElement{static_cast<std::int32_t>(x - 1)}, FieldElement{static_cast<std::int32_t>(y - 1)}).log + 1;
}

}  // namespace

GroupRingElement operator+(const GroupRingElement& a, const GroupRingElement& b) {
  require_same(a, b);
  GroupRingElement r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    if (__builtin_add_overflow(r.coeffs[i], b.coeffs[i], &r.coeffs[i])) throw OverflowError("group ring addition overflow");
  }
  return r;
}

GroupRingElement operator-(const GroupRingElement& a, const GroupRingElement& b) {
  require_same(a, b);
  GroupRingElement r = a;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
    if (__builtin_sub_overflow(r.coeffs[i], b.coeffs[i], &r.coeffs[i])) throw OverflowError("group ring subtraction overflow");
  }
  return r;
}

GroupRingElement operator*(std::int64_t c, const GroupRingElement& a) {
  GroupRingElement r = a;
  for (auto& x : r.coeffs) {
    if (__builtin_mul_overflow(x, c, &x)) throw OverflowError("group ring scaling overflow");
  }
  return r;
}

GroupRingElement convolve(const GroupRingElement& a, const GroupRingElement& b, const kernels::ConvolutionPolicy& policy) {
  require_same(a, b);
  if (a.group.kind == GroupDescriptor::Kind::cyclic) {
    return {a.group, kernels::cyclic_convolve(a.coeffs, b.coeffs, policy)};
  }
  return {a.group, kernels::additive_convolve(*a.group.field, a.coeffs, b.coeffs, policy)};
}

GroupRingElement power_map(const GroupRingElement& a, std::int64_t t) {
  auto r = GroupRingElement::zero(a.group);
  const std::int64_t n = a.group.order;
  if (a.group.kind == GroupDescriptor::Kind::cyclic) {
    const std::int64_t tm = nt::mod(t, n);
    for (std::int64_t i = 0; i < n; ++i) {
      if (a.coeffs[i] == 0) continue;
      auto h = static_cast<std::int64_t>(static_cast<__int128>(i) * tm % n);
      if (__builtin_add_overflow(r.coeffs[h], a.coeffs[i], &r.coeffs[h])) throw OverflowError("power map overflow");
    }
    return r;
  }
  const Field& F = *a.group.field;
  const std::int64_t c = nt::mod(t, F.p());
  const FieldElement scalar = c == 0 ? FieldElement::zero() : F.from_int(c);
  for (std::int64_t i = 0; i < n; ++i) {
    if (a.coeffs[i] == 0) continue;
    std::int64_t h = F.mul(FieldElement{static_cast<std::int32_t>(i - 1)}, scalar).log + 1;
    if (__builtin_add_overflow(r.coeffs[h], a.coeffs[i], &r.coeffs[h])) throw OverflowError("power map overflow");
  }
  return r;
}

Subset power_map_set(const Subset& s, std::int64_t t, std::int64_t n) {
  Subset out;
  out.reserve(s.size());
  const std::int64_t tm = nt::mod(t, n);
  for (auto i : s) out.push_back(static_cast<std::int64_t>(static_cast<__int128>(i) * tm % n));
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw PreconditionError("power map is not injective on the set");
  }
  return out;
}

bool scalar_divisible(const GroupRingElement& a, std::int64_t d) {
  if (d < 1) throw PreconditionError("divisor must be positive");
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [d](std::int64_t c) { return c % d == 0; });
}

bool is_difference_set(const GroupRingElement& d, std::int64_t v, std::int64_t k, std::int64_t lambda) {
  if (v != d.group.order) throw PreconditionError("difference set: v differs from group order");
  if (k * (k - 1) != lambda * (v - 1)) throw PreconditionError("difference set: k(k-1) != lambda(v-1)");
  if (!d.is_zero_one() || d.sum() != k) return false;
  auto prod = convolve(d, power_map(d, -1));
  for (std::int64_t i = 0; i < v; ++i) {
    if (prod.coeffs[i] != (i == 0 ? k : lambda)) return false;
  }
  return true;
}

bool is_relative_difference_set(const GroupRingElement& d, const Subset& subgroup, std::int64_t m, std::int64_t n,
                                std::int64_t k, std::int64_t lambda) {
  const auto& g = d.group;
  if (m * n != g.order) throw PreconditionError("relative difference set: |G| != m n");
  if (static_cast<std::int64_t>(subgroup.size()) != n) throw PreconditionError("relative difference set: |N| != n");
  std::vector<char> in_n(g.order, 0);
  for (auto x : subgroup) in_n.at(x) = 1;
  if (!in_n[0]) throw PreconditionError("relative difference set: N lacks the identity");
  for (auto x : subgroup) {
    for (auto y : subgroup) {
      if (!in_n[group_add(g, x, y)]) throw PreconditionError("relative difference set: N is not a subgroup");
    }
  }
  if (m <= 1 || k * (k - 1) != lambda * n * (m - 1)) {
    throw PreconditionError("relative difference set: parameters inconsistent");
  }
  if (!d.is_zero_one() || d.sum() != k) return false;
  auto prod = convolve(d, power_map(d, -1));
  for (std::int64_t i = 0; i < g.order; ++i) {
    std::int64_t want = i == 0 ? k : (in_n[i] ? 0 : lambda);
    if (prod.coeffs[i] != want) return false;
  }
  return true;
}

std::optional<GroupRingElement> ds_quotient(const GroupRingElement& p, const GroupRingElement& a, std::int64_t v,
                                            std::int64_t k, std::int64_t lambda,
                                            const kernels::ConvolutionPolicy& policy) {
  require_same(p, a);
  if (!is_difference_set(a, v, k, lambda)) throw PreconditionError("ds_quotient: divisor is not a difference set");
  const std::int64_t m = k - lambda;
  if (m == 0) throw PreconditionError("ds_quotient: trivial difference set (k = lambda) is not invertible");
  // (m + lambda G)^{-1} = (1/m)(1 - (lambda/k^2) G), and k^2 = m + lambda v.
  auto t = convolve(p, power_map(a, -1), policy);
  const __int128 sp = p.sum();
  std::int64_t denom;
  if (__builtin_mul_overflow(m, k, &denom)) throw OverflowError("ds_quotient: m k overflows");
  kernels::Coeffs q(v);
  for (std::int64_t i = 0; i < v; ++i) {
    __int128 x = static_cast<__int128>(k) * t.coeffs[i] - static_cast<__int128>(lambda) * sp;
    if (x % denom != 0) return std::nullopt;
    __int128 y = x / denom;
    if (y > INT64_MAX || y < -INT64_MAX) throw OverflowError("ds_quotient: quotient coefficient overflow");
    q[i] = static_cast<std::int64_t>(y);
  }
  GroupRingElement quotient(p.group, std::move(q));
  if (!(convolve(quotient, a, policy) == p)) return std::nullopt;
  return quotient;
}

Subset embed_subgroup(const Subset& s, std::int64_t small, std::int64_t big) {
  if (small < 1 || big % small != 0) throw PreconditionError("embedding: order does not divide");
  Subset out;
  for (auto j : s) out.push_back(j * (big / small));
  return out;
}

Subset complement(const Subset& s, std::int64_t n) {
  std::vector<char> in(n, 0);
  for (auto x : s) in.at(x) = 1;
  Subset out;
  for (std::int64_t i = 0; i < n; ++i) {
    if (!in[i]) out.push_back(i);
  }
  return out;
}

}  // namespace ptgs
