#include "ptgs/singer.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <tuple>

#include "ptgs/error.hpp"
#include "ptgs/numtheory.hpp"

namespace ptgs {

std::int64_t Tower::q() const { return static_cast<std::int64_t>(nt::ipow(p, e)); }
std::int64_t Tower::n() const { return static_cast<std::int64_t>(nt::ipow(p, e * l)) - 1; }
std::int64_t Tower::v() const { return n() / (q() - 1); }

std::int64_t Tower::half_power() const {
  if (l % 2 == 0) throw PreconditionError("q^{(l-1)/2} needs odd l");
  return static_cast<std::int64_t>(nt::ipow(q(), (l - 1) / 2));
}

void Tower::validate() const {
  if (p < 3 || !nt::is_prime(p)) throw PreconditionError("tower: p must be an odd prime");
  if (e < 1 || l < 1) throw PreconditionError("tower: e and l must be positive");
}

SingerBundle make_singer_bundle(const Tower& t, FieldPtr F) {
  t.validate();
  if (!F) F = cached_field(t.p, t.degree());
  if (F->p() != t.p || F->m() % t.degree() != 0) throw PreconditionError("singer: field does not contain the tower");
  SingerBundle b;
  b.tower = t;
  b.field = F;
  const std::int64_t n = t.n(), v = t.v();
  b.stride = F->n() / n;
  for (std::int64_t j = 0; j < n; ++j) {
    FieldElement x = F->gen_power(j * b.stride);
    if (F->rel_trace(t.e, x, t.degree()) == F->one()) b.R.push_back(j);
  }
  for (auto j : b.R) b.S.push_back(j % v);
  std::sort(b.S.begin(), b.S.end());
  if (std::adjacent_find(b.S.begin(), b.S.end()) != b.S.end()) {
    throw InconsistencyError("singer: a coset of F_q^* holds two trace-1 elements");
  }
  b.trace_zero = complement(b.S, v);
  if (t.l % 2 == 1) {
    b.W.assign(v, 0);
    for (auto j : b.R) b.W[j % v] = (j % 2 == 0) ? 1 : -1;
  }
  return b;
}

std::shared_ptr<const SingerBundle> singer_bundle(const Tower& t) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<const SingerBundle>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{t.p, t.e, t.l}];
  if (!slot) slot = std::make_shared<const SingerBundle>(make_singer_bundle(t));
  return slot;
}

std::vector<std::int64_t> weighing_by_sign_rule(const SingerBundle& b) {
  const Tower& t = b.tower;
  if (t.l % 2 == 0) throw PreconditionError("weighing matrix needs odd l");
  const Field& F = *b.field;
  const std::int64_t v = t.v(), q = t.q();
  std::vector<std::int64_t> w(v, 0);
  for (std::int64_t j = 0; j < v; ++j) {
    for (std::int64_t u = 0; u < q - 1; ++u) {
      std::int64_t expo = j + v * u;
      if (F.rel_trace(t.e, F.gen_power(expo * b.stride), t.degree()) == F.one()) {
        // Quadratic character of the layer: parity of the exponent of h.
        w[j] = expo % 2 == 0 ? 1 : -1;
        break;
      }
    }
  }
  return w;
}

SingerReport verify_singer(const SingerBundle& b) {
  SingerReport rep;
  const Tower& t = b.tower;
  const std::int64_t q = t.q(), v = t.v(), n = t.n();
  if (t.l < 2) {
    // F_q over itself: R = {1}, S = {0}.
    bool ok = b.R == Subset{0} && b.S == Subset{0};
    rep.rds = rep.ds = rep.complement_ds = rep.weighing = rep.strong_multiplier = rep.weighing_cross_check = ok;
    return rep;
  }
  const std::int64_t k = static_cast<std::int64_t>(nt::ipow(q, t.l - 1));
  const std::int64_t lam = static_cast<std::int64_t>(nt::ipow(q, t.l - 2));

  auto Gn = GroupDescriptor::cyclic(n);
  Subset Fq;
  for (std::int64_t i = 0; i < q - 1; ++i) Fq.push_back(i * v);
  rep.rds = is_relative_difference_set(GroupRingElement::from_subset(Gn, b.R), Fq, v, q - 1, k, lam);

  auto Gv = GroupDescriptor::cyclic(v);
  rep.ds = is_difference_set(GroupRingElement::from_subset(Gv, b.S), v, k, lam * (q - 1));
  rep.complement_ds = is_difference_set(GroupRingElement::from_subset(Gv, b.trace_zero), v, (k - 1) / (q - 1),
                                        (lam - 1) / (q - 1));

  rep.strong_multiplier = power_map_set(b.S, t.p, v) == b.S && power_map_set(b.R, t.p, n) == b.R;

  if (t.l % 2 == 1) {
    GroupRingElement w(Gv, b.W);
    auto ww = convolve(w, power_map(w, -1));
    rep.weighing = ww == k * GroupRingElement::identity(Gv);
    rep.weighing_cross_check = weighing_by_sign_rule(b) == b.W;
  } else {
    rep.weighing = rep.weighing_cross_check = true;
  }
  return rep;
}

namespace {

std::shared_ptr<const SingerBundle> certified(const Tower& t) {
  auto b = singer_bundle(t);
  auto rep = verify_singer(*b);
  if (!(rep.rds && rep.ds && rep.complement_ds && rep.strong_multiplier)) {
    throw InconsistencyError("singer: certification failed");
  }
  return b;
}

}  // namespace

Subset singer_rds(const Tower& t) { return certified(t)->R; }
Subset singer_ds(const Tower& t) { return certified(t)->S; }

std::vector<std::int64_t> singer_weighing(const Tower& t) {
  if (t.l % 2 == 0) throw PreconditionError("singer_weighing: l must be odd");
  auto b = certified(t);
  auto rep = verify_singer(*b);
  if (!rep.weighing || !rep.weighing_cross_check) throw InconsistencyError("singer: weighing certification failed");
  return b->W;
}

GmwComponents gmw_components(int p, int e, int t, int s, bool verify) {
  if (t < 1 || s < 1) throw PreconditionError("gmw: layers must be positive");
  GmwComponents c;
  c.p = p;
  c.e = e;
  c.t = t;
  c.s = s;
  Tower inner{p, e, t}, outer{p, e, s * t};
  inner.validate();
  c.field = cached_field(p, e * s * t);
  const Field& F = *c.field;
  c.inner = make_singer_bundle(inner, c.field);
  c.outer = make_singer_bundle(outer, c.field);
  c.v_st = outer.v();
  c.v_t = inner.v();
  for (std::int64_t i = 0; i < F.n(); ++i) {
    if (F.rel_trace(e * t, F.gen_power(i)) == F.one()) c.rtilde.push_back(i % c.v_st);
  }
  std::sort(c.rtilde.begin(), c.rtilde.end());
  if (std::adjacent_find(c.rtilde.begin(), c.rtilde.end()) != c.rtilde.end()) {
    throw InconsistencyError("gmw: relative trace-1 set is not a set modulo v");
  }
  if (!verify) return c;

  auto G = GroupDescriptor::cyclic(c.v_st);
  auto prod = convolve(GroupRingElement::from_subset(G, c.rtilde),
                       GroupRingElement::from_subset(G, embed_subgroup(c.inner.S, c.v_t, c.v_st)));
  c.decomposition_holds = prod == GroupRingElement::from_subset(G, c.outer.S);

  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<std::int64_t> pick(0, F.n() - 1);
  c.trace_composition_holds = true;
  for (int trial = 0; trial < 256; ++trial) {
    FieldElement x = F.gen_power(pick(rng));
    FieldElement direct = F.rel_trace(e, x);
    FieldElement layered = F.rel_trace(e, F.rel_trace(e * t, x), e * t);
    if (direct != layered) c.trace_composition_holds = false;
  }

  if (s == 1) {
    c.rtilde_rds = c.rtilde == Subset{0};
  } else {
    const std::int64_t M = c.v_st / c.v_t;
    const std::int64_t qt = inner.n() + 1;
    Subset N;
    for (std::int64_t j = 0; j < c.v_t; ++j) N.push_back(j * M);
    const std::int64_t k = static_cast<std::int64_t>(nt::ipow(qt, s - 1));
    const std::int64_t lam = static_cast<std::int64_t>(nt::ipow(qt, s - 2)) * (inner.q() - 1);
    c.rtilde_rds = is_relative_difference_set(GroupRingElement::from_subset(G, c.rtilde), N, M, c.v_t, k, lam);
  }
  return c;
}

FieldPtr subfield(const Field& F, int d) {
  if (d < 1 || F.m() % d != 0) throw PreconditionError("subfield: degree does not divide m");
  const std::int64_t sub_n = static_cast<std::int64_t>(nt::ipow(F.p(), d)) - 1;
  const FieldElement h = F.gen_power(F.n() / sub_n);
  // Minimal polynomial: product of (x - h^{p^i}) over the d conjugates.
  std::vector<FieldElement> poly{F.one()};
  for (int i = 0; i < d; ++i) {
    FieldElement r = F.frobenius(h, i);
    std::vector<FieldElement> next(poly.size() + 1, FieldElement::zero());
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] = F.add(next[k + 1], poly[k]);
      next[k] = F.sub(next[k], F.mul(r, poly[k]));
    }
    poly = std::move(next);
  }
  std::vector<int> modulus;
  for (auto c : poly) {
    std::int64_t v = F.to_int(c);
    if (v >= F.p()) throw InconsistencyError("subfield: minimal polynomial has coefficients outside F_p");
    modulus.push_back(static_cast<int>(v));
  }
  return Field::create(F.p(), d, modulus);
}

}  // namespace ptgs
