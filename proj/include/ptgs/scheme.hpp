#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ptgs/field.hpp"
#include "ptgs/group_ring.hpp"
#include "ptgs/singer.hpp"

namespace ptgs {

enum class Provenance { paley, adp, cyclotomic, langevin, gmw_lift, union_of, search, manual };

/// Independent verification routes for the scheme equation
/// (1 + 2D^{(-1)})(1 + 2D) = |G| + (|G| - 1)G.
enum class Route {
  additive_expansion,     // expand the equation in Z[F^+]
  singer_divisibility,    // q^{(l-1)/2} | D^{(-1)} R in Z[F^*]
  weighing_divisibility,  // q^{(l-1)/2} | X^{(-1)} W in Z[F^*/F_q^*]
  dual_equation,          // D^{(-1)} R = q^{(l-1)/2} Dhat + c F^* with Dhat a set
};

std::string to_string(Provenance p);
Provenance provenance_from_string(const std::string& s);
/// Stable wire tokens: eq1, thm35, thm38, eq5.
std::string route_token(Route r);
Route route_from_token(const std::string& s);

/// A candidate or verified scheme. D holds exponents i of g^i in Z_{q^l - 1}.
struct SchemeRecord {
  Tower tower;
  FieldPtr field;
  Subset D;
  std::optional<Subset> X;
  Provenance provenance = Provenance::manual;
  std::set<Route> verified_by;
  std::string label;
  /// Built from X with even l, where |D| = (q^l - 1)/2 is not guaranteed.
  bool size_unverified = false;
};

/// D(X): g^i in D iff (i even) == (i mod v in X).
SchemeRecord build_scheme(const Tower& t, const Subset& X, FieldPtr F = nullptr,
                          Provenance prov = Provenance::manual);

/// Wrap an explicit exponent set.
SchemeRecord scheme_from_set(const Tower& t, Subset D, FieldPtr F = nullptr, Provenance prov = Provenance::manual);

/// Quadratic residues of F_{p^m}, as a scheme over tower (p, 1, m).
SchemeRecord paley_scheme(int p, int m);

/// Singer bundle matching the scheme's field presentation.
std::shared_ptr<const SingerBundle> bundle_for(const FieldPtr& F, const Tower& t);

bool is_projective_half_point_set(const Tower& t, const Subset& D);

bool satisfies_additive_equation(const SchemeRecord& s, const kernels::ConvolutionPolicy& policy = {});
/// Throws PreconditionError when D is not a half-point set or l is even.
bool satisfies_singer_divisibility(const SchemeRecord& s);
/// Uses s.X when present, else the recovered X.
bool satisfies_weighing_divisibility(const SchemeRecord& s);
bool weighing_divisible(const SingerBundle& b, const Subset& X);
bool satisfies_dual_equation(const SchemeRecord& s);

/// X = {i mod v : i even, g^i in D}.
Subset recover_projective_set(const SchemeRecord& s);

/// Dhat = (D^{(-1)} R - c F^*)/q^{(l-1)/2}, or nullopt when that is not a 0/1
/// vector.
std::optional<Subset> dual_exponents(const SchemeRecord& s);
SchemeRecord dual_scheme(const SchemeRecord& s);

/// Run the routes, stamp the passing ones, and return whether all passed.
/// Routes whose precondition fails are treated as failures.
bool certify(SchemeRecord& s, const std::set<Route>& routes);

/// Exponent set of -D, c D (c = g^shift) and D^{p^k}.
Subset negate_exponents(const Subset& D, std::int64_t n);
Subset scale_exponents(const Subset& D, std::int64_t shift, std::int64_t n);
Subset frobenius_exponents(const Subset& D, int p, int k, std::int64_t n);

}  // namespace ptgs
