#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "commands.hpp"
#include "ptgs/io.hpp"

using namespace ptgs;
namespace fs = std::filesystem;
using ptgs::io::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("ptgs-cli-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
};

}  // namespace

TEST_CASE("sha256") {
  CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("construct, verify and manifest") {
  TempDir d;
  auto r = invoke({"construct", "paley", "--p", "3", "--m", "3", "--out", d / "p.json"});
  REQUIRE(r.code == cli::kOk);
  auto rec = io::read_json(d / "p.json");
  auto man = io::read_json(d / "p.json.manifest.json");
  CHECK(rec["run_id"] == man["run_id"]);
  CHECK(man["artifact_version"] == cli::kArtifactVersion);
  CHECK(man["outputs"][0]["sha256"] == cli::sha256_hex(io::read_file(d / "p.json")));

  auto v = invoke({"verify", d / "p.json", "--method", "all"});
  CHECK(v.code == cli::kOk);
  auto vj = json::parse(v.out);
  CHECK(vj["routes_agree"] == true);
  CHECK(vj["verdicts"]["eq1"] == true);

  // Rerunning the same command reproduces the record and run id.
  REQUIRE(invoke({"construct", "paley", "--p", "3", "--m", "3", "--out", d / "p.json"}).code == 0);
  CHECK(io::read_json(d / "p.json") == rec);
  REQUIRE(invoke({"construct", "paley", "--p", "3", "--m", "3", "--out", d / "q.json"}).code == 0);
  auto other = io::read_json(d / "q.json");
  other.erase("run_id");
  rec.erase("run_id");
  CHECK(other == rec);
}

TEST_CASE("verification failure and precondition exit codes") {
  TempDir d;
  REQUIRE(invoke({"construct", "paley", "--p", "3", "--m", "3", "--out", d / "p.json"}).code == 0);
  auto rec = io::read_json(d / "p.json");
  // Replace D by D(X) for X = {0}, which is not a scheme.
  rec["X"] = {0};
  json D = json::array();
  for (int i = 0; i < 26; ++i)
    if ((i % 2 == 0) == (i % 13 == 0)) D.push_back(i);
  rec["D"] = D;
  rec["verified_by"] = json::array();
  io::write_file_atomic(d / "bad.json", rec.dump());
  CHECK(invoke({"verify", d / "bad.json", "--method", "eq1"}).code == cli::kVerificationFailed);

  REQUIRE(invoke({"construct", "paley", "--p", "3", "--m", "2", "--out", d / "p9.json"}).code == 0);
  CHECK(invoke({"verify", d / "p9.json", "--method", "thm38"}).code == cli::kUsage);
  CHECK(invoke({"verify", d / "missing.json"}).code == cli::kUsage);
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"construct", "adp", "--p", "3", "--l", "6", "--family", "power", "--r", "1"}).code == cli::kUsage);
}

TEST_CASE("search exit codes and resume") {
  TempDir d;
  auto part = invoke({"search", "galois", "--p", "5", "--l", "3", "--checkpoint", d / "ck", "--step-limit", "500",
                   "--checkpoint-every", "100", "--out", d / "s.json"});
  CHECK(part.code == cli::kBudget);
  auto done = invoke({"search", "galois", "--p", "5", "--l", "3", "--checkpoint", d / "ck", "--out", d / "s.json"});
  CHECK(done.code == cli::kOk);
  auto j = io::read_json(d / "s.json");
  CHECK(j["count"] == 96);
  CHECK(j["finished"] == true);
  CHECK(invoke({"search", "all", "--p", "3", "--l", "5"}).code == cli::kBudget);
}

TEST_CASE("classify and export") {
  TempDir d;
  REQUIRE(invoke({"construct", "paley", "--p", "3", "--m", "2", "--out", d / "p9.json"}).code == 0);
  auto g = invoke({"export", "--graph6", d / "p9.json"});
  CHECK(g.code == 0);
  CHECK(g.out.find("HyMXSLR") != std::string::npos);
  auto c = invoke({"classify", "--in", d / "p9.json", "--aut"});
  REQUIRE(c.code == 0);
  CHECK(json::parse(c.out)["rows"][0]["aut_order"] == 72);
  auto ls = invoke({"langevin-solve", "--p", "3", "--pp", "11"});
  CHECK(ls.code == 0);
  CHECK(json::parse(ls.out)["l"] == 5);
}
