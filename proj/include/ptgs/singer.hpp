#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ptgs/field.hpp"
#include "ptgs/group_ring.hpp"

namespace ptgs {

/// F_{q^l} over F_q with q = p^e.
struct Tower {
  int p = 3;
  int e = 1;
  int l = 1;

  std::int64_t q() const;
  /// (q^l - 1)/(q - 1).
  std::int64_t v() const;
  /// q^l - 1.
  std::int64_t n() const;
  int degree() const { return e * l; }
  /// q^{(l-1)/2}; requires l odd.
  std::int64_t half_power() const;
  void validate() const;
  bool operator==(const Tower&) const = default;
};

/// Singer objects of a layer F_{q^l}. The layer may sit inside a larger field
/// (field->m() a multiple of e*l); exponents are then taken with respect to
/// h = g^stride, which generates the layer's multiplicative group.
struct SingerBundle {
  Tower tower;
  FieldPtr field;
  std::int64_t stride = 1;
  Subset R;               // exponents of h with relative trace 1, in Z_{q^l - 1}
  Subset S;               // R mod v
  std::vector<std::int64_t> W;  // signed projection, only for odd l
  Subset trace_zero;      // cosets of F_q^* with trace 0

  std::int64_t v() const { return tower.v(); }
};

/// Singer bundle of the layer of degree e*l inside F (default: the
/// default-modulus field of that degree).
SingerBundle make_singer_bundle(const Tower& t, FieldPtr F = nullptr);

/// Cached bundle over the default-modulus field.
std::shared_ptr<const SingerBundle> singer_bundle(const Tower& t);

struct SingerReport {
  bool rds = false;
  bool ds = false;
  bool complement_ds = false;
  bool weighing = false;  // vacuous true for even l
  bool strong_multiplier = false;
  bool weighing_cross_check = false;
  bool all() const { return rds && ds && complement_ds && weighing && strong_multiplier && weighing_cross_check; }
};

SingerReport verify_singer(const SingerBundle& b);

/// Certified constructions; throw InconsistencyError if a check fails.
Subset singer_rds(const Tower& t);
Subset singer_ds(const Tower& t);
std::vector<std::int64_t> singer_weighing(const Tower& t);

/// W recomputed coset by coset from the quadratic character of the trace-1
/// representative (independent of the R-projection route).
std::vector<std::int64_t> weighing_by_sign_rule(const SingerBundle& b);

struct GmwComponents {
  int p = 3, e = 1, t = 1, s = 1;
  FieldPtr field;      // F_{q^{st}}
  SingerBundle inner;  // F_{q^t} inside field
  SingerBundle outer;  // F_{q^{st}} over F_q
  Subset rtilde;       // relative-trace-1 exponents of F_{q^{st}} over F_{q^t}, mod v_st
  std::int64_t v_st = 1, v_t = 1;
  bool decomposition_holds = false;
  bool trace_composition_holds = false;
  bool rtilde_rds = false;
};

GmwComponents gmw_components(int p, int e, int t, int s, bool verify = true);

/// Field of degree d whose generator is g^{(p^m-1)/(p^d-1)} of F, built from
/// that element's minimal polynomial.
FieldPtr subfield(const Field& F, int d);

}  // namespace ptgs
