#include "ptgs/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ptgs/error.hpp"
#include "ptgs/numtheory.hpp"

namespace ptgs {

DsParams singer_params(const Tower& t) {
  if (t.l < 2) throw PreconditionError("Singer parameters need l >= 2");
  const std::int64_t q = t.q();
  return {t.v(), static_cast<std::int64_t>(nt::ipow(q, t.l - 1)),
          static_cast<std::int64_t>(nt::ipow(q, t.l - 2)) * (q - 1)};
}

namespace {

FieldPtr layer_field(const SingerBundle& b) {
  return b.stride == 1 ? b.field : subfield(*b.field, b.tower.degree());
}

}  // namespace

std::optional<AdpRecord> check_adp(const SingerBundle& b, const Subset& A) {
  const DsParams prm = singer_params(b.tower);
  auto G = GroupDescriptor::cyclic(prm.v);
  auto a = GroupRingElement::from_subset(G, A);
  if (!is_difference_set(a, prm.v, prm.k, prm.lambda)) {
    throw PreconditionError("check_adp: A is not a difference set with Singer parameters");
  }
  auto s = GroupRingElement::from_subset(G, b.S);
  auto s2 = power_map(s, 2);
  auto target = convolve(power_map(s, -1), s2);
  auto quotient = ds_quotient(target, a, prm.v, prm.k, prm.lambda);
  if (!quotient || !quotient->is_zero_one()) return std::nullopt;
  // Companion form: S^{(2)} divides A S.
  auto companion = ds_quotient(convolve(a, s), s2, prm.v, prm.k, prm.lambda);
  if (!companion) throw InconsistencyError("check_adp: S^(2) does not divide A S although A divides S^(-1) S^(2)");
  AdpRecord r;
  r.tower = b.tower;
  r.field = layer_field(b);
  r.A = A;
  std::sort(r.A.begin(), r.A.end());
  r.dual = quotient->support();
  r.origin = "quotient";
  return r;
}

std::optional<AdpRecord> adp_from_exponent(const SingerBundle& b, std::int64_t t) {
  const std::int64_t v = b.v();
  if (std::gcd(nt::mod(t, v), v) != 1) throw PreconditionError("exponent must be prime to v");
  auto r = check_adp(b, power_map_set(b.S, t, v));
  if (r) {
    r->exponent = t;
    r->name = "S^(" + std::to_string(t) + ")";
  }
  return r;
}

AdpRecord adp_power_family(const Tower& t, int r) {
  const std::int64_t v = t.v();
  const std::int64_t e = 1 + static_cast<std::int64_t>(nt::powmod(t.q(), r, v));
  if (std::gcd(e % v, v) != 1) throw PreconditionError("adp_power_family: 1 + q^r is not prime to v");
  auto rec = adp_from_exponent(*singer_bundle(t), e % v);
  if (!rec) throw InconsistencyError("adp_power_family: S^(1+q^r) failed ADP certification");
  rec->origin = "power";
  return *rec;
}

AdpRecord adp_half_power_family(int l, int r) {
  if (std::gcd(r, l) != 1) throw PreconditionError("adp_half_power_family: r must be prime to l");
  Tower t{3, 1, l};
  const std::int64_t e = (1 + static_cast<std::int64_t>(nt::ipow(3, r))) / 2;
  auto rec = adp_from_exponent(*singer_bundle(t), e % t.v());
  if (!rec) throw InconsistencyError("adp_half_power_family: S^((1+3^r)/2) failed ADP certification");
  rec->origin = "half_power";
  return *rec;
}

std::pair<AdpRecord, AdpRecord> lift_adp(const GmwComponents& g, const Subset& A, std::int64_t certify_limit) {
  if (g.s % 2 == 0 || g.t % 2 == 0) throw PreconditionError("lift_adp: s and t must be odd");
  if (g.t == 1) {
    if (A != Subset{0}) throw PreconditionError("lift_adp: the only set at t = 1 is {0}");
  } else if (!check_adp(g.inner, A)) {
    throw PreconditionError("lift_adp: A is not ADP in the inner layer");
  }
  auto G = GroupDescriptor::cyclic(g.v_st);
  auto a = GroupRingElement::from_subset(G, embed_subgroup(A, g.v_t, g.v_st));
  auto rt = GroupRingElement::from_subset(G, g.rtilde);
  const DsParams prm = singer_params(g.outer.tower);
  auto make = [&](std::int64_t power, const std::string& tag) {
    auto y = convolve(power_map(rt, power), a);
    if (!y.is_zero_one()) throw InconsistencyError("lift_adp: lifted element is not a set");
    if (!is_difference_set(y, prm.v, prm.k, prm.lambda)) {
      throw InconsistencyError("lift_adp: lifted set is not a difference set");
    }
    AdpRecord r;
    r.tower = g.outer.tower;
    r.field = g.field;
    r.A = y.support();
    r.origin = "lifted";
    r.name = tag;
    if (g.v_st < certify_limit) {
      auto c = check_adp(g.outer, r.A);
      if (!c) throw InconsistencyError("lift_adp: lifted set is not ADP");
      r.dual = c->dual;
    } else {
      r.adp_certified = false;
    }
    return r;
  };
  return {make(-1, "Rtilde^(-1) A"), make(2, "Rtilde^(2) A")};
}

SchemeRecord scheme_from_adp(const AdpRecord& a, std::int64_t expansion_limit) {
  if (a.tower.l % 2 == 0) throw PreconditionError("scheme_from_adp: l must be odd");
  auto s = build_scheme(a.tower, a.A, a.field, Provenance::adp);
  s.label = a.name.empty() ? "adp" : a.name;
  bool by_weighing = certify(s, {Route::weighing_divisibility});
  if (s.field->order() <= expansion_limit) {
    bool by_expansion = certify(s, {Route::additive_expansion});
    if (by_weighing != by_expansion) throw InconsistencyError("scheme_from_adp: verification routes disagree");
  }
  if (!by_weighing) throw InconsistencyError("scheme_from_adp: D(A) is not a scheme for a certified ADP set");
  return s;
}

bool cyclotomic_params_valid(const Tower& t, std::uint64_t n) {
  if (n == 0) return false;
  if (n == 1) return true;
  if (std::gcd(static_cast<std::uint64_t>(t.p), n) != 1) return false;
  // v mod n = sum_{i<l} q^i mod n.
  const std::uint64_t qn = nt::powmod(t.p, t.e, n);
  std::uint64_t acc = 0, pw = 1 % n;
  for (int i = 0; i < t.l; ++i) {
    acc = (acc + pw) % n;
    pw = nt::mulmod(pw, qn, n);
  }
  if (acc != 0) return false;
  auto sub = nt::cyclic_subgroup(t.p % n, n);
  return std::binary_search(sub.begin(), sub.end(), 2 % n);
}

SchemeRecord cyclotomic_scheme(const Tower& t, std::int64_t n, const Subset& X) {
  if (t.l % 2 == 0) throw PreconditionError("cyclotomic_scheme: l must be odd");
  if (!cyclotomic_params_valid(t, static_cast<std::uint64_t>(n))) {
    throw PreconditionError("cyclotomic_scheme: need n | v and 2 in <p> mod n");
  }
  std::vector<char> in(n, 0);
  for (auto x : X) {
    if (x < 0 || x >= n) throw PreconditionError("cyclotomic_scheme: X element out of range");
    in[x] = 1;
  }
  Subset Y;
  for (std::int64_t i = 0; i < t.v(); ++i) {
    if (in[i % n]) Y.push_back(i);
  }
  auto s = build_scheme(t, Y, nullptr, Provenance::cyclotomic);
  if (!certify(s, {Route::weighing_divisibility})) throw InconsistencyError("cyclotomic_scheme: verification failed");
  return s;
}

std::int64_t class_number(std::int64_t d) {
  if (d <= 0 || d % 4 != 3) throw PreconditionError("class_number: need d = 3 mod 4");
  std::int64_t h = 0;
  // b^2 - 4ac = -d with |b| <= a <= c; b odd.
  for (std::int64_t a = 1; 3 * a * a <= d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      if (((b % 2) + 2) % 2 != 1) continue;
      std::int64_t num = b * b + d;
      if (num % (4 * a) != 0) continue;
      std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

LangevinParams solve_langevin(int p, int pp, int m) {
  if (!nt::is_prime(p) || p == 2) throw PreconditionError("langevin: p must be an odd prime");
  if (!nt::is_prime(pp) || pp % 8 != 3 || pp == 3) throw PreconditionError("langevin: need prime p' = 3 mod 8, p' != 3");
  if (m < 1) throw PreconditionError("langevin: m must be positive");
  if (p == pp) throw PreconditionError("langevin: p must differ from p'");
  LangevinParams L;
  L.p = p;
  L.pp = pp;
  L.m = m;
  const std::uint64_t pm = nt::ipow(pp, m);
  L.l = static_cast<std::int64_t>((pm - pm / pp) / 2);
  L.order = nt::mult_order(p, pm);
  L.order_ok = L.order == static_cast<std::uint64_t>(L.l);
  L.h = class_number(pp);
  try {
    L.desk_feasible = static_cast<std::int64_t>(nt::ipow(p, static_cast<unsigned>(L.l))) <= Field::max_order();
  } catch (const OverflowError&) {
    L.desk_feasible = false;
  }
  if (!L.order_ok) {
    L.status = "order_mismatch";
    return L;
  }
  // a^2 + b^2 p' = 4 p^h, p not dividing b.
  const __int128 rhs = 4 * static_cast<__int128>(nt::ipow(p, static_cast<unsigned>(L.h)));
  bool found = false;
  for (std::int64_t b = 1; static_cast<__int128>(b) * b * pp <= rhs && !found; ++b) {
    if (b % p == 0) continue;
    __int128 rest = rhs - static_cast<__int128>(b) * b * pp;
    auto a = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(rest)));
    while (static_cast<__int128>(a) * a > rest) --a;
    while (static_cast<__int128>(a + 1) * (a + 1) <= rest) ++a;
    if (static_cast<__int128>(a) * a == rest) {
      L.a = a;
      L.b = b;
      found = true;
    }
  }
  if (!found) {
    L.status = "no_solution";
    return L;
  }
  // Pin the sign: a = -2 p^{(l+h)/2} (mod p').
  const std::int64_t target = nt::mod(-2 * static_cast<std::int64_t>(nt::powmod(p, (L.l + L.h) / 2, pp)), pp);
  if (nt::mod(L.a, pp) != target) L.a = -L.a;
  if (nt::mod(L.a, pp) != target) {
    L.status = "no_solution";
    return L;
  }
  L.constructive = rhs == 1 + static_cast<__int128>(pp);
  if (!L.constructive) {
    L.status = "non_constructive";
    return L;
  }
  Subset S, N;
  for (std::int64_t x = 1; x < pp; ++x) {
    (nt::powmod(x, (pp - 1) / 2, pp) == 1 ? S : N).push_back(x);
  }
  auto with_zero = [](Subset s) {
    s.insert(s.begin(), 0);
    return s;
  };
  // Character value of S u {0} is (1 + sqrt(-p'))/2, of S it is (-1 + sqrt(-p'))/2;
  // the real part must equal a/2.
  if (L.a == 1) {
    L.candidates = {with_zero(S), with_zero(N)};
    L.candidate_names = {"S+{0}", "N+{0}"};
  } else {
    L.candidates = {S, N};
    L.candidate_names = {"S", "N"};
  }
  L.status = "ok";
  return L;
}

LangevinResult langevin_scheme(int p, int pp, int m, const Subset& T) {
  LangevinResult res;
  res.params = solve_langevin(p, pp, m);
  const auto& L = res.params;
  if (L.status != "ok") throw PreconditionError("langevin_scheme: parameters are not constructive (" + L.status + ")");
  if (!L.desk_feasible) throw PreconditionError("langevin_scheme: field exceeds the configured maximum order");
  const std::int64_t pm = static_cast<std::int64_t>(nt::ipow(pp, m));
  const std::int64_t sub = pm / pp;
  if (static_cast<std::int64_t>(T.size()) != sub) throw PreconditionError("langevin_scheme: |T| must be p'^(m-1)");
  {
    std::vector<char> seen(sub, 0);
    for (auto c : T) {
      if (c < 0 || c >= pm || seen[c % sub]) throw PreconditionError("langevin_scheme: T is not a transversal");
      seen[c % sub] = 1;
    }
  }
  Tower t{p, 1, static_cast<int>(L.l)};
  const std::int64_t v = t.v();
  if (v % pm != 0) throw InconsistencyError("langevin_scheme: p'^m does not divide v");
  bool any = false;
  for (std::size_t ci = 0; ci < L.candidates.size(); ++ci) {
    std::vector<char> in(pm, 0);
    Subset xs;
    for (auto c : T) {
      for (auto j : L.candidates[ci]) {
        std::int64_t x = nt::mod(c + (2 * j % pp) * sub, pm);
        in[x] = 1;
      }
    }
    for (std::int64_t x = 0; x < pm; ++x) {
      if (in[x]) xs.push_back(x);
    }
    Subset Y;
    for (std::int64_t i = 0; i < v; ++i) {
      if (in[i % pm]) Y.push_back(i);
    }
    auto s = build_scheme(t, Y, nullptr, Provenance::langevin);
    bool ok = certify(s, {Route::weighing_divisibility});
    res.candidate_verdicts.push_back(ok);
    if (ok && !any) {
      any = true;
      res.scheme = s;
      res.scheme.label = "langevin(" + L.candidate_names[ci] + ")";
      res.chosen = static_cast<int>(ci);
      res.X_small = xs;
    } else if (ok) {
      res.ambiguous = true;
    }
  }
  if (!any) throw InconsistencyError("langevin_scheme: no candidate verified");
  return res;
}

std::pair<SchemeRecord, SchemeRecord> gmw_lift_scheme(const GmwComponents& g, const Subset& X) {
  if (g.s % 2 == 0 || g.t % 2 == 0) throw PreconditionError("gmw_lift_scheme: s and t must be odd");
  Tower inner = g.inner.tower;
  auto inner_field = subfield(*g.field, inner.degree());
  auto base = build_scheme(inner, X, inner_field);
  if (!certify(base, {Route::weighing_divisibility})) {
    throw PreconditionError("gmw_lift_scheme: D(X) is not a scheme in the inner layer");
  }
  auto G = GroupDescriptor::cyclic(g.v_st);
  auto x = GroupRingElement::from_subset(G, embed_subgroup(X, g.v_t, g.v_st));
  auto rt = GroupRingElement::from_subset(G, g.rtilde);
  auto make = [&](std::int64_t power, const std::string& tag) {
    auto y = convolve(power_map(rt, power), x);
    if (!y.is_zero_one()) throw InconsistencyError("gmw_lift_scheme: lifted element is not a set");
    auto s = build_scheme(g.outer.tower, y.support(), g.field, Provenance::gmw_lift);
    s.label = tag;
    if (!certify(s, {Route::weighing_divisibility})) throw InconsistencyError("gmw_lift_scheme: lift failed verification");
    return s;
  };
  return {make(-1, "gmw(-1)"), make(2, "gmw(2)")};
}

SchemeRecord union_scheme(const Tower& t, const Subset& X1, const Subset& X2, FieldPtr F) {
  auto d1 = build_scheme(t, X1, F);
  auto d2 = build_scheme(t, X2, F);
  if (!certify(d1, {Route::weighing_divisibility}) || !certify(d2, {Route::weighing_divisibility})) {
    throw PreconditionError("union_scheme: inputs must be verified schemes");
  }
  Subset a = *d1.X, b = *d2.X, inter, uni;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(uni));
  Subset chosen;
  std::string label;
  if (inter.empty()) {
    chosen = uni;
    label = "union";
  } else if (static_cast<std::int64_t>(uni.size()) == t.v()) {
    chosen = inter;
    label = "intersection";
  } else {
    throw PreconditionError("union_scheme: sets neither disjoint nor covering");
  }
  auto s = build_scheme(t, chosen, d1.field, Provenance::union_of);
  s.label = label;
  if (!certify(s, {Route::weighing_divisibility})) throw InconsistencyError("union_scheme: result failed verification");
  return s;
}

bool is_strong_multiplier(const Subset& s, std::int64_t t, std::int64_t v) {
  if (std::gcd(nt::mod(t, v), v) != 1) throw PreconditionError("is_strong_multiplier: t must be prime to v");
  Subset sorted = s;
  std::sort(sorted.begin(), sorted.end());
  return power_map_set(sorted, t, v) == sorted;
}

}  // namespace ptgs
