#include <doctest.h>

#include <filesystem>

#include "ptgs/constructions.hpp"
#include "ptgs/error.hpp"
#include "ptgs/io.hpp"

using namespace ptgs;
using ptgs::io::json;

TEST_CASE("field round trip") {
  auto F = cached_field(7, 3);
  auto j = io::field_to_json(*F);
  CHECK(j["p"] == 7);
  auto G = io::field_from_json(j);
  CHECK(G->modulus() == F->modulus());
  j["modulus"] = {1, 0, 0, 1};  // x^3 + 1 is reducible
  CHECK_THROWS_AS(io::field_from_json(j), PreconditionError);
}

TEST_CASE("scheme round trip") {
  auto b = singer_bundle(Tower{3, 1, 5});
  auto s = scheme_from_adp(*adp_from_exponent(*b, 10));
  auto j = io::scheme_to_json(s);
  CHECK(j["provenance"] == "adp");
  auto back = io::scheme_from_json(j);
  CHECK(back.D == s.D);
  CHECK(back.X == s.X);
  CHECK(back.tower.l == 5);
  CHECK(back.verified_by == s.verified_by);
  CHECK(io::scheme_from_json(json::parse(j.dump())).D == s.D);
}

TEST_CASE("malformed scheme files are rejected") {
  auto j = io::scheme_to_json(paley_scheme(3, 3));
  auto bad = j;
  bad["D"].push_back(26);
  CHECK_THROWS_AS(io::scheme_from_json(bad), PreconditionError);
  bad = j;
  bad["D"][0] = bad["D"][1];
  CHECK_THROWS_AS(io::scheme_from_json(bad), PreconditionError);
  bad = j;
  bad["X"] = {0};  // D no longer equals D(X)
  CHECK_THROWS_AS(io::scheme_from_json(bad), PreconditionError);
  bad = j;
  bad["verified_by"] = {"eq7"};
  CHECK_THROWS_AS(io::scheme_from_json(bad), PreconditionError);
  bad = j;
  bad.erase("field");
  CHECK_THROWS(io::scheme_from_json(bad));
}

TEST_CASE("group ring and difference set records") {
  auto G = GroupDescriptor::cyclic(7);
  auto a = GroupRingElement::from_subset(G, {1, 2, 4});
  auto back = io::group_ring_from_json(io::group_ring_to_json(a));
  CHECK(back.support() == a.support());
  io::DifferenceSetRecord d{13, singer_ds(Tower{3, 1, 3}), {13, 9, 6}, "singer"};
  auto e = io::ds_from_json(io::ds_to_json(d));
  CHECK(e.set == d.set);
  CHECK(e.params == d.params);
}

TEST_CASE("search results round trip") {
  search::Result r;
  r.tower = Tower{5, 1, 3};
  r.found = {{}, {0, 1, 2}};
  r.candidates = 2048;
  auto j = io::search_result_to_json(r);
  CHECK(j["count"] == 2);
  auto back = io::search_result_from_json(j);
  CHECK(back.found == r.found);
  CHECK(back.tower.p == 5);
}

TEST_CASE("atomic writes") {
  auto p = std::filesystem::temp_directory_path() / ("ptgs-io-" + std::to_string(::getpid()) + ".json");
  io::write_file_atomic(p, "{\"a\": 1}");
  CHECK(io::read_json(p)["a"] == 1);
  io::write_file_atomic(p, "{\"a\": 2}");
  CHECK(io::read_json(p)["a"] == 2);
  std::filesystem::remove(p);
  CHECK_THROWS(io::read_file(p));
}
