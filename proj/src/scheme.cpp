#include "ptgs/scheme.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ptgs/error.hpp"
#include "ptgs/numtheory.hpp"

namespace ptgs {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::paley: return "paley";
    case Provenance::adp: return "adp";
    case Provenance::cyclotomic: return "cyclotomic";
    case Provenance::langevin: return "langevin";
    case Provenance::gmw_lift: return "gmw_lift";
    case Provenance::union_of: return "union";
    case Provenance::search: return "search";
    case Provenance::manual: return "manual";
  }
  return "manual";
}

Provenance provenance_from_string(const std::string& s) {
  for (auto p : {Provenance::paley, Provenance::adp, Provenance::cyclotomic, Provenance::langevin, Provenance::gmw_lift,
                 Provenance::union_of, Provenance::search, Provenance::manual}) {
    if (to_string(p) == s) return p;
  }
  throw PreconditionError("unknown provenance '" + s + "'");
}

std::string route_token(Route r) {
  switch (r) {
    case Route::additive_expansion: return "eq1";
    case Route::singer_divisibility: return "thm35";
    case Route::weighing_divisibility: return "thm38";
    case Route::dual_equation: return "eq5";
  }
  return "eq1";
}

Route route_from_token(const std::string& s) {
  for (auto r : {Route::additive_expansion, Route::singer_divisibility, Route::weighing_divisibility,
                 Route::dual_equation}) {
    if (route_token(r) == s) return r;
  }
  throw PreconditionError("unknown verification method '" + s + "'");
}

namespace {

FieldPtr field_for(const Tower& t, FieldPtr F) {
  t.validate();
  if (!F) return cached_field(t.p, t.degree());
  if (F->p() != t.p || F->m() != t.degree()) throw PreconditionError("scheme field does not match the tower");
  return F;
}

void require_odd_l(const Tower& t, const char* what) {
  if (t.l % 2 == 0) throw PreconditionError(std::string(what) + ": requires odd l");
}

}  // namespace

SchemeRecord build_scheme(const Tower& t, const Subset& X, FieldPtr F, Provenance prov) {
  SchemeRecord s;
  s.tower = t;
  s.field = field_for(t, F);
  const std::int64_t v = t.v(), n = t.n();
  std::vector<char> in_x(v, 0);
  for (auto x : X) {
    if (x < 0 || x >= v) throw PreconditionError("build_scheme: X element out of range");
    in_x[x] = 1;
  }
  for (std::int64_t i = 0; i < n; ++i) {
    if ((i % 2 == 0) == static_cast<bool>(in_x[i % v])) s.D.push_back(i);
  }
  Subset xs = X;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  s.X = xs;
  s.provenance = prov;
  s.size_unverified = t.l % 2 == 0;
  return s;
}

SchemeRecord scheme_from_set(const Tower& t, Subset D, FieldPtr F, Provenance prov) {
  SchemeRecord s;
  s.tower = t;
  s.field = field_for(t, F);
  std::sort(D.begin(), D.end());
  if (std::adjacent_find(D.begin(), D.end()) != D.end()) throw PreconditionError("scheme: duplicate exponent");
  if (!D.empty() && (D.front() < 0 || D.back() >= t.n())) throw PreconditionError("scheme: exponent out of range");
  s.D = std::move(D);
  s.provenance = prov;
  return s;
}

SchemeRecord paley_scheme(int p, int m) {
  Tower t{p, 1, m};
  Subset D;
  for (std::int64_t i = 0; i < t.n(); i += 2) D.push_back(i);
  auto s = scheme_from_set(t, std::move(D), nullptr, Provenance::paley);
  if (m % 2 == 1) {
    Subset all(t.v());
    for (std::int64_t i = 0; i < t.v(); ++i) all[i] = i;
    s.X = all;
  }
  s.label = "paley";
  return s;
}

std::shared_ptr<const SingerBundle> bundle_for(const FieldPtr& F, const Tower& t) {
  if (F == cached_field(t.p, t.degree())) return singer_bundle(t);
  static std::mutex mu;
  static std::map<std::pair<const Field*, std::tuple<int, int, int>>, std::shared_ptr<const SingerBundle>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{F.get(), {t.p, t.e, t.l}}];
  if (!slot) slot = std::make_shared<const SingerBundle>(make_singer_bundle(t, F));
  return slot;
}

bool is_projective_half_point_set(const Tower& t, const Subset& D) {
  const std::int64_t n = t.n(), v = t.v(), q = t.q();
  std::vector<char> in(n, 0);
  for (auto d : D) {
    if (d < 0 || d >= n) return false;
    in[d] = 1;
  }
  // Union of cosets of the squares of F_q^*, i.e. closed under i -> i + 2v.
  for (std::int64_t i = 0; i < n; ++i) {
    if (in[i] && !in[(i + 2 * v) % n]) return false;
  }
  for (std::int64_t j = 0; j < v; ++j) {
    std::int64_t cnt = 0;
    for (std::int64_t u = 0; u < q - 1; ++u) cnt += in[j + v * u];
    if (2 * cnt != q - 1) return false;
  }
  return true;
}

bool satisfies_additive_equation(const SchemeRecord& s, const kernels::ConvolutionPolicy& policy) {
  auto G = GroupDescriptor::additive(s.field);
  auto d = GroupRingElement::zero(G);
  for (auto i : s.D) d.coeffs[i + 1] = 1;
  auto e = GroupRingElement::identity(G);
  auto lhs = convolve(e + 2 * power_map(d, -1), e + 2 * d, policy);
  const std::int64_t q = G.order;
  for (std::int64_t i = 0; i < q; ++i) {
    if (lhs.coeffs[i] != (i == 0 ? 2 * q - 1 : q - 1)) return false;
  }
  return true;
}

namespace {

GroupRingElement inverse_times_r(const SchemeRecord& s) {
  const Tower& t = s.tower;
  auto b = bundle_for(s.field, t);
  auto G = GroupDescriptor::cyclic(t.n());
  auto d = GroupRingElement::from_subset(G, s.D);
  return convolve(power_map(d, -1), GroupRingElement::from_subset(G, b->R));
}

void require_half_point(const SchemeRecord& s, const char* what) {
  require_odd_l(s.tower, what);
  if (!is_projective_half_point_set(s.tower, s.D)) {
    throw PreconditionError(std::string(what) + ": D is not a projective half-point set");
  }
}

}  // namespace

bool satisfies_singer_divisibility(const SchemeRecord& s) {
  require_half_point(s, "singer divisibility");
  return scalar_divisible(inverse_times_r(s), s.tower.half_power());
}

bool weighing_divisible(const SingerBundle& b, const Subset& X) {
  require_odd_l(b.tower, "weighing divisibility");
  auto G = GroupDescriptor::cyclic(b.v());
  auto x = GroupRingElement::from_subset(G, X);
  auto prod = convolve(power_map(x, -1), GroupRingElement(G, b.W));
  return scalar_divisible(prod, b.tower.half_power());
}

bool satisfies_weighing_divisibility(const SchemeRecord& s) {
  require_odd_l(s.tower, "weighing divisibility");
  Subset X;
  if (s.X) {
    X = *s.X;
    // The route certifies D(X); make sure D really is D(X).
    if (build_scheme(s.tower, X, s.field).D != s.D) throw PreconditionError("weighing divisibility: D is not D(X)");
  } else {
    X = recover_projective_set(s);
  }
  return weighing_divisible(*bundle_for(s.field, s.tower), X);
}

Subset recover_projective_set(const SchemeRecord& s) {
  require_half_point(s, "recover X");
  const std::int64_t v = s.tower.v();
  Subset X;
  for (auto i : s.D) {
    if (i % 2 == 0) X.push_back(i % v);
  }
  std::sort(X.begin(), X.end());
  X.erase(std::unique(X.begin(), X.end()), X.end());
  return X;
}

std::optional<Subset> dual_exponents(const SchemeRecord& s) {
  require_half_point(s, "dual");
  const Tower& t = s.tower;
  const std::int64_t h = t.half_power();
  const std::int64_t c = (static_cast<std::int64_t>(nt::ipow(t.q(), t.l - 1)) - h) / 2;
  auto prod = inverse_times_r(s);
  Subset out;
  for (std::int64_t i = 0; i < t.n(); ++i) {
    std::int64_t x = prod.coeffs[i] - c;
    if (x % h != 0) return std::nullopt;
    x /= h;
    if (x != 0 && x != 1) return std::nullopt;
    if (x == 1) out.push_back(i);
  }
  return out;
}

bool satisfies_dual_equation(const SchemeRecord& s) {
  auto d = dual_exponents(s);
  return d && static_cast<std::int64_t>(d->size()) * 2 == s.tower.n();
}

SchemeRecord dual_scheme(const SchemeRecord& s) {
  auto d = dual_exponents(s);
  if (!d) throw PreconditionError("dual: quotient is not integral, D is not a scheme");
  auto r = scheme_from_set(s.tower, std::move(*d), s.field, s.provenance);
  r.label = s.label.empty() ? "dual" : "dual(" + s.label + ")";
  return r;
}

bool certify(SchemeRecord& s, const std::set<Route>& routes) {
  bool all = true;
  for (auto r : routes) {
    bool ok = false;
    try {
      switch (r) {
        case Route::additive_expansion: ok = satisfies_additive_equation(s); break;
        case Route::singer_divisibility: ok = satisfies_singer_divisibility(s); break;
        case Route::weighing_divisibility: ok = satisfies_weighing_divisibility(s); break;
        case Route::dual_equation: ok = satisfies_dual_equation(s); break;
      }
    } catch (const PreconditionError&) {
      ok = false;
    }
    if (ok) {
      s.verified_by.insert(r);
    } else {
      all = false;
    }
  }
  return all;
}

Subset negate_exponents(const Subset& D, std::int64_t n) { return scale_exponents(D, n / 2, n); }

Subset scale_exponents(const Subset& D, std::int64_t shift, std::int64_t n) {
  Subset out;
  out.reserve(D.size());
  for (auto d : D) out.push_back(nt::mod(d + shift, n));
  std::sort(out.begin(), out.end());
  return out;
}

Subset frobenius_exponents(const Subset& D, int p, int k, std::int64_t n) {
  std::int64_t f = static_cast<std::int64_t>(nt::powmod(p, k, n));
  Subset out;
  out.reserve(D.size());
  for (auto d : D) out.push_back(static_cast<std::int64_t>(static_cast<__int128>(d) * f % n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace ptgs
