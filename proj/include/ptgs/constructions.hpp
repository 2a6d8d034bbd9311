#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptgs/scheme.hpp"
#include "ptgs/singer.hpp"

namespace ptgs {

/// An Arasu-Dillon-Player pair: A * dual = S^{(-1)} * S^{(2)} in Z[Z_v].
struct AdpRecord {
  Tower tower;
  FieldPtr field;  // the presentation S was computed in
  Subset A;
  Subset dual;
  std::string origin;  // power | half_power | lifted | quotient
  std::string name;    // e.g. "S^(4)"; the dual is "A(4)"
  std::int64_t exponent = 0;
  bool adp_certified = true;  // false when a lift skipped the quotient check
};

/// Singer parameters (v, q^{l-1}, q^{l-2}(q-1)).
struct DsParams {
  std::int64_t v, k, lambda;
};
DsParams singer_params(const Tower& t);

/// B = (S^{(-1)} S^{(2)}) / A when that quotient is a 0/1 set; nullopt
/// otherwise. Throws PreconditionError unless A is a difference set with
/// Singer parameters, and InconsistencyError if the companion division
/// (A S) / S^{(2)} fails where the first one succeeded.
std::optional<AdpRecord> check_adp(const SingerBundle& b, const Subset& A);

/// S^{(t)} tested as ADP; t must be prime to v.
std::optional<AdpRecord> adp_from_exponent(const SingerBundle& b, std::int64_t t);

/// S^{(1 + q^r)}, requiring gcd(1 + q^r, v) = 1.
AdpRecord adp_power_family(const Tower& t, int r);
/// S^{((1 + 3^r)/2)} over F_3, requiring gcd(r, l) = 1.
AdpRecord adp_half_power_family(int l, int r);

/// Lifts of an ADP set A of the inner layer to F_{q^{st}}:
/// Rtilde^{(-1)} A and Rtilde^{(2)} A. ADP certification of the outputs runs
/// only when v_st < certify_limit.
std::pair<AdpRecord, AdpRecord> lift_adp(const GmwComponents& g, const Subset& A,
                                         std::int64_t certify_limit = 10000);

/// D(A) verified by the weighing route and by the additive expansion when the
/// field is at most expansion_limit; disagreement throws InconsistencyError.
SchemeRecord scheme_from_adp(const AdpRecord& a, std::int64_t expansion_limit = 20000);

/// n | v and 2 in <p> inside Z_n^*. Pure modular arithmetic, so it works for
/// towers far beyond field-table sizes.
bool cyclotomic_params_valid(const Tower& t, std::uint64_t n);

/// D(gamma^{-1}(X)) for X in Z_n, verified.
SchemeRecord cyclotomic_scheme(const Tower& t, std::int64_t n, const Subset& X);

struct LangevinParams {
  int p = 0;
  int pp = 0;  // p'
  int m = 1;
  std::int64_t l = 0;
  std::uint64_t order = 0;  // order of p mod p'^m
  bool order_ok = false;
  std::int64_t h = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  bool constructive = false;  // 4 p^h = 1 + p'
  bool desk_feasible = false;
  std::vector<Subset> candidates;  // subsets of Z_{p'}
  std::vector<std::string> candidate_names;
  std::string status;  // ok | order_mismatch | non_constructive | no_solution
};

/// Class number of Q(sqrt(-d)) for d = 3 mod 4 by counting reduced primitive
/// forms of discriminant -d.
std::int64_t class_number(std::int64_t d);

LangevinParams solve_langevin(int p, int pp, int m);

struct LangevinResult {
  SchemeRecord scheme;
  LangevinParams params;
  std::vector<bool> candidate_verdicts;
  int chosen = -1;
  bool ambiguous = false;
  Subset X_small;  // T + P^{(2)} in Z_{p'^m}
};

LangevinResult langevin_scheme(int p, int pp, int m, const Subset& T);

/// D(Rtilde^{(-1)} X) and D(Rtilde^{(2)} X) in F_{q^{st}}. X is relative to
/// the inner generator g^{(q^{st}-1)/(q^t-1)}.
std::pair<SchemeRecord, SchemeRecord> gmw_lift_scheme(const GmwComponents& g, const Subset& X);

/// D(X1 u X2) when X1, X2 are disjoint, D(X1 n X2) when they cover Z_v.
SchemeRecord union_scheme(const Tower& t, const Subset& X1, const Subset& X2, FieldPtr F = nullptr);

bool is_strong_multiplier(const Subset& s, std::int64_t t, std::int64_t v);

}  // namespace ptgs
