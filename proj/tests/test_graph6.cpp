#include <doctest.h>

#include <random>

#include "ptgs/error.hpp"
#include "ptgs/graph6.hpp"

using namespace ptgs;

namespace {

graph6::BitRows from_edges(std::int64_t n, const std::vector<std::pair<int, int>>& edges) {
  graph6::BitRows r(n, std::vector<std::uint64_t>((n + 63) / 64, 0));
  for (auto [a, b] : edges) {
    r[a][b >> 6] |= 1ULL << (b & 63);
    r[b][a >> 6] |= 1ULL << (a & 63);
  }
  return r;
}

}  // namespace

TEST_CASE("known encodings") {
  std::vector<std::pair<int, int>> pet;
  for (int i = 0; i < 5; ++i) {
    pet.push_back({i, (i + 1) % 5});
    pet.push_back({i, i + 5});
    pet.push_back({5 + i, 5 + (i + 2) % 5});
  }
  CHECK(graph6::encode(10, from_edges(10, pet)) == "IheA@GUAo");
  CHECK(graph6::encode(0, {}) == "?");
  CHECK(graph6::encode(4, from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}})) == "C~");
  std::vector<std::pair<int, int>> path;
  for (int i = 0; i + 1 < 70; ++i) path.push_back({i, i + 1});
  CHECK(graph6::encode(70, from_edges(70, path)).substr(0, 12) == "~?@EhCGGC@?G");
}

TEST_CASE("round trip on random graphs") {
  std::mt19937_64 rng(7);
  for (std::int64_t n : {1, 2, 5, 6, 7, 62, 63, 64, 65, 130}) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 3 == 0) e.push_back({i, j});
    auto rows = from_edges(n, e);
    auto s = graph6::encode(n, rows);
    auto d = graph6::decode(s);
    CHECK(d.n == n);
    CHECK(d.rows == rows);
    CHECK(graph6::decode(">>graph6<<" + s + "\n").rows == rows);
  }
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(graph6::decode(""), PreconditionError);
  CHECK_THROWS_AS(graph6::decode("IheA@GUA"), PreconditionError);
  CHECK_THROWS_AS(graph6::decode("IheA@GUAoo"), PreconditionError);
  CHECK_THROWS_AS(graph6::decode("C\x7f"), PreconditionError);
}
