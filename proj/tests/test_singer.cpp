#include <doctest.h>

#include "oracles.hpp"
#include "ptgs/error.hpp"
#include "ptgs/singer.hpp"

using namespace ptgs;

namespace {

const std::vector<Tower> kTowers = {{3, 1, 3}, {3, 1, 5}, {3, 1, 7}, {5, 1, 3}, {7, 1, 3}, {3, 3, 3}};

// R by brute polynomial traces: exponents i with tr(g^i) = 1.
Subset oracle_rds(const Tower& t, const oracle::PolyField& O) {
  Subset R;
  for (std::int64_t i = 0; i < O.n; ++i)
    if (O.trace(i, t.q(), t.l) == 1) R.push_back(i);
  return R;
}

std::int64_t ipow(std::int64_t b, int e) { return oracle::ipow(b, e); }

}  // namespace

TEST_CASE("Singer relative difference sets match the trace oracle") {
  for (const auto& t : kTowers) {
    CAPTURE(t.p);
    CAPTURE(t.e);
    CAPTURE(t.l);
    auto b = singer_bundle(t);
    oracle::PolyField O(t.p, t.degree(), b->field->modulus());
    const auto R = oracle_rds(t, O);
    CHECK(b->R == R);
    CHECK(static_cast<std::int64_t>(R.size()) == ipow(t.q(), t.l - 1));
    // S = R mod v, and each F_q^* coset carries at most one trace-1 element.
    Subset S;
    for (auto i : R) S.push_back(i % t.v());
    std::sort(S.begin(), S.end());
    CHECK(std::adjacent_find(S.begin(), S.end()) == S.end());
    CHECK(b->S == S);
    const std::int64_t k = ipow(t.q(), t.l - 1), lambda = ipow(t.q(), t.l - 2) * (t.q() - 1);
    if (t.v() <= 1093) CHECK(oracle::is_difference_set(S, t.v(), lambda));
    CHECK(static_cast<std::int64_t>(b->trace_zero.size()) == (k - 1) / (t.q() - 1));
    auto rep = verify_singer(*b);
    CHECK(rep.rds);
    CHECK(rep.ds);
    CHECK(rep.complement_ds);
    CHECK(rep.weighing);
    CHECK(rep.strong_multiplier);
    CHECK(rep.weighing_cross_check);
  }
}

TEST_CASE("small Singer examples") {
  Tower t{3, 1, 3};
  auto R = singer_rds(t);
  CHECK(R.size() == 9);
  CHECK_FALSE(std::binary_search(R.begin(), R.end(), 0));  // tr(1) = 3 = 0
  CHECK(singer_rds(Tower{5, 1, 3}).size() == 25);
  auto S = singer_ds(t);
  CHECK(S.size() == 9);
  CHECK(oracle::is_difference_set(S, 13, 6));
  auto C = complement(S, 13);
  CHECK(C.size() == 4);
  CHECK(oracle::is_difference_set(C, 13, 1));
  auto S5 = singer_ds(Tower{3, 1, 5});
  CHECK(S5.size() == 81);
  CHECK(oracle::is_difference_set(S5, 121, 54));
}

TEST_CASE("Singer weighing matrices") {
  for (const auto& t : kTowers) {
    auto b = singer_bundle(t);
    const auto v = t.v();
    const auto& W = b->W;
    REQUIRE(static_cast<std::int64_t>(W.size()) == v);
    std::int64_t nonzero = 0, sigma = 0;
    for (auto w : W) {
      nonzero += w != 0;
      sigma += w;
    }
    CHECK(nonzero == ipow(t.q(), t.l - 1));
    CHECK(sigma * sigma == ipow(t.q(), t.l - 1));
    if (v <= 1093) {
      // W W^{(-1)} by direct correlation.
      for (std::int64_t d = 0; d < v; ++d) {
        std::int64_t s = 0;
        for (std::int64_t j = 0; j < v; ++j) s += W[j] * W[(j + d) % v];
        CHECK(s == (d == 0 ? ipow(t.q(), t.l - 1) : 0));
      }
    }
    CHECK(weighing_by_sign_rule(*b) == W);
  }
  CHECK(singer_weighing(Tower{3, 1, 3}).size() == 13);
}

TEST_CASE("weighing sign rule from the polynomial oracle") {
  Tower t{5, 1, 3};
  auto b = singer_bundle(t);
  oracle::PolyField O(5, 3, b->field->modulus());
  const auto R = oracle_rds(t, O);
  std::vector<std::int64_t> W(t.v(), 0);
  for (auto i : R) W[i % t.v()] = i % 2 == 0 ? 1 : -1;
  CHECK(b->W == W);
}

TEST_CASE("even l has no weighing matrix") {
  CHECK_THROWS_AS(singer_weighing(Tower{3, 1, 4}), PreconditionError);
}

TEST_CASE("p is a strong multiplier") {
  for (const auto& t : kTowers) {
    auto b = singer_bundle(t);
    CHECK(power_map_set(b->S, t.p, t.v()) == b->S);
    CHECK(power_map_set(b->R, t.p, t.n()) == b->R);
  }
}

TEST_CASE("GMW decomposition") {
  SUBCASE("t = 1 degenerates to S = Rtilde") {
    auto g = gmw_components(3, 1, 1, 3);
    CHECK(g.decomposition_holds);
    CHECK(g.rtilde == singer_ds(Tower{3, 1, 3}));
  }
  SUBCASE("(3,1,3,3) in Z_9841") {
    auto g = gmw_components(3, 1, 3, 3);
    CHECK(g.v_st == 9841);
    CHECK(g.v_t == 13);
    CHECK(g.decomposition_holds);
    CHECK(g.trace_composition_holds);
    CHECK(g.rtilde_rds);
    CHECK(g.rtilde.size() == 729);
    // Sparse product by hand: Rtilde * embed(S_27) = S_{3^9}.
    std::vector<std::int64_t> prod(9841, 0);
    for (auto a : g.rtilde)
      for (auto s : g.inner.S) ++prod[(a + s * (9841 / 13)) % 9841];
    std::vector<std::int64_t> want(9841, 0);
    for (auto s : g.outer.S) want[s] = 1;
    CHECK(prod == want);
    // Relative-difference-set parameters (v_st, v_t, q^{st-t}, q^{st-2t}(q-1)) by counting.
    auto c = oracle::difference_counts(g.rtilde, 9841);
    bool ok = true;
    for (std::int64_t d = 1; d < 9841; ++d) {
      const bool in_sub = d % (9841 / 13) == 0;
      if (c[d] != (in_sub ? 0 : 27 * 2)) ok = false;
    }
    CHECK(ok);
  }
}

TEST_CASE("compatible subfield presentation") {
  auto F = cached_field(3, 6);
  auto K = subfield(*F, 2);
  CHECK(K->order() == 9);
  // The subfield generator g^{(3^6-1)/8} satisfies K's modulus.
  const std::int64_t stride = (729 - 1) / 8;
  const auto& mod = K->modulus();
  FieldElement acc = FieldElement::zero();
  for (std::size_t i = 0; i < mod.size(); ++i) {
    if (mod[i] == 0) continue;
    FieldElement term = F->pow(FieldElement::power(stride), static_cast<std::int64_t>(i));
    for (int c = 0; c < mod[i]; ++c) acc = F->add(acc, term);
  }
  CHECK(acc.is_zero());
}

TEST_CASE("invalid towers") {
  CHECK_THROWS_AS(singer_rds(Tower{4, 1, 3}), PreconditionError);
  CHECK_THROWS_AS(singer_rds(Tower{3, 1, 0}), PreconditionError);
}
