#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ptgs/error.hpp"
#include "ptgs/field.hpp"

using namespace ptgs;

namespace {

FieldElement g(std::int64_t i) { return FieldElement::power(i); }

}  // namespace

TEST_CASE("default modulus matches the enumeration oracle") {
  CHECK(Field::create(3, 2)->modulus() == std::vector<int>{2, 1, 1});     // x^2 + x + 2
  CHECK(Field::create(3, 3)->modulus() == std::vector<int>{1, 2, 0, 1});  // x^3 + 2x + 1
  for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 1}, {5, 1}, {3, 4}, {5, 2}, {7, 2}, {3, 5}, {5, 3}, {7, 3}, {11, 2}, {13, 2}}) {
    CAPTURE(p);
    CAPTURE(m);
    CHECK(Field::create(p, m)->modulus() == oracle::first_primitive(p, m));
  }
}

TEST_CASE("bad parameters are rejected") {
  CHECK_THROWS_AS(Field::create(4, 2), PreconditionError);
  CHECK_THROWS_AS(Field::create(2, 3), PreconditionError);
  CHECK_THROWS_AS(Field::create(3, 0), PreconditionError);
  // x^2 + 1 is irreducible over Z_3 but x has order 4, not 8.
  CHECK_THROWS_AS(Field::create(3, 2, std::vector<int>{1, 0, 1}), PreconditionError);
  CHECK_THROWS_AS(Field::create(3, 2, std::vector<int>{2, 1, 2}), PreconditionError);  // not monic
}

TEST_CASE("explicit primitive modulus is accepted") {
  // x^2 + 2x + 2 is the other primitive quadratic over Z_3.
  auto F = Field::create(3, 2, std::vector<int>{2, 2, 1});
  CHECK(F->modulus() == std::vector<int>{2, 2, 1});
  oracle::PolyField O(3, 2, F->modulus());
  for (std::int64_t i = 0; i < 8; ++i) CHECK(F->to_int(g(i)) == O.pw[i]);
}

TEST_CASE("zech addition in F_9") {
  auto F = Field::create(3, 2);
  CHECK(F->add(g(0), g(1)) == g(7));
  CHECK(F->add(g(3), FieldElement::zero()) == g(3));
  for (std::int64_t i = 0; i < 8; ++i) CHECK(F->add(g(i), g(i + 4)).is_zero());
  CHECK(F->zech(4) == -1);
  int sentinels = 0;
  for (std::int32_t i = 0; i < 8; ++i) sentinels += F->zech(i) == -1;
  CHECK(sentinels == 1);
}

TEST_CASE("field arithmetic agrees with polynomial arithmetic") {
  std::mt19937_64 rng(7);
  for (auto [p, m] : std::vector<std::pair<int, int>>{{3, 3}, {5, 2}, {7, 3}, {3, 5}, {11, 2}, {5, 4}}) {
    auto F = Field::create(p, m);
    oracle::PolyField O(p, m, F->modulus());
    std::uniform_int_distribution<std::int64_t> pick(0, O.n - 1);
    for (std::int64_t i = 0; i < O.n; ++i) REQUIRE(F->to_int(g(i)) == O.pw[i]);
    for (int trial = 0; trial < 1000; ++trial) {
      const auto a = pick(rng), b = pick(rng);
      const auto sum = F->add(g(a), g(b));
      CHECK(F->to_int(sum) == O.add(O.pw[a], O.pw[b]));
      CHECK(F->to_int(F->neg(g(a))) == O.neg(O.pw[a]));
      CHECK(F->mul(g(a), g(b)) == g((a + b) % O.n));
      CHECK(F->mul(g(a), F->inv(g(a))) == F->one());
    }
  }
}

TEST_CASE("relative trace in F_27") {
  auto F = Field::create(3, 3);
  CHECK(F->rel_trace(1, F->one()).is_zero());
  CHECK(F->rel_trace(1, g(1)).is_zero());
  CHECK(F->to_int(F->rel_trace(1, g(2))) == 2);
  oracle::PolyField O(3, 3, F->modulus());
  for (std::int64_t i = 0; i < 26; ++i) CHECK(F->to_int(F->rel_trace(1, g(i))) == O.trace(i, 3, 3));
}

TEST_CASE("relative trace onto an intermediate field") {
  // F_{3^6} over F_9: x + x^9 + x^81.
  auto F = Field::create(3, 6);
  oracle::PolyField O(3, 6, F->modulus());
  for (std::int64_t i = 0; i < O.n; i += 7) {
    const auto t = F->rel_trace(2, g(i));
    CHECK(F->to_int(t) == O.trace(i, 9, 3));
    CHECK(F->in_subfield(t, 2));
  }
}

TEST_CASE("trace is linear over the base field") {
  std::mt19937_64 rng(11);
  for (auto [p, m, d] : std::vector<std::tuple<int, int, int>>{{3, 5, 1}, {5, 3, 1}, {3, 6, 2}, {3, 9, 3}}) {
    auto F = Field::create(p, m);
    std::uniform_int_distribution<std::int64_t> pick(0, F->n() - 1);
    const std::int64_t sub_step = (F->n()) / (oracle::ipow(p, d) - 1);
    for (int trial = 0; trial < 300; ++trial) {
      const auto x = g(pick(rng)), y = g(pick(rng));
      const auto c = g(sub_step * (pick(rng) % (oracle::ipow(p, d) - 1)));
      CHECK(F->rel_trace(d, F->add(x, y)) == F->add(F->rel_trace(d, x), F->rel_trace(d, y)));
      CHECK(F->rel_trace(d, F->mul(c, x)) == F->mul(c, F->rel_trace(d, x)));
    }
  }
}

TEST_CASE("quadratic residues") {
  auto F7 = Field::create(7, 1);
  CHECK(F7->is_square(F7->from_int(2)));
  CHECK_FALSE(F7->is_square(F7->from_int(3)));
  CHECK(F7->is_square(F7->one()));
  CHECK_FALSE(F7->is_square(g(1)));
  CHECK_THROWS_AS(F7->is_square(FieldElement::zero()), PreconditionError);
  std::mt19937_64 rng(3);
  auto F = Field::create(5, 3);
  std::uniform_int_distribution<std::int64_t> pick(0, F->n() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = g(pick(rng)), y = g(pick(rng));
    CHECK(F->is_square(F->mul(x, y)) == (F->is_square(x) == F->is_square(y)));
  }
}

TEST_CASE("frobenius") {
  auto F = Field::create(3, 3);
  CHECK(F->frobenius(g(1), 1) == g(3));
  CHECK(F->frobenius(g(5), 3) == g(5));
  CHECK(F->frobenius(FieldElement::zero(), 2).is_zero());
  oracle::PolyField O(3, 3, F->modulus());
  // x^3 by repeated addition: (a+b)^3 = a^3 + b^3.
  for (std::int64_t i = 0; i < 26; ++i) CHECK(F->to_int(F->frobenius(g(i), 1)) == O.pw[(3 * i) % 26]);
}

TEST_CASE("construction is deterministic and cached") {
  auto a = Field::create(5, 3), b = Field::create(5, 3);
  CHECK(a->log_table() == b->log_table());
  CHECK(a->antilog_table() == b->antilog_table());
  CHECK(cached_field(5, 3).get() == cached_field(5, 3).get());
}

TEST_CASE("polynomial form round trip") {
  auto F = Field::create(7, 2);
  for (std::int64_t v = 0; v < 49; ++v) CHECK(F->to_int(F->from_int(v)) == v);
  CHECK(F->to_poly(g(1)) == std::vector<int>{0, 1});
}
