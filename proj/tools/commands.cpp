#include "commands.hpp"

#include <omp.h>
#include <openssl/evp.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>

#include "ptgs/classify.hpp"
#include "ptgs/constructions.hpp"
#include "ptgs/error.hpp"
#include "ptgs/graph6.hpp"
#include "ptgs/io.hpp"
#include "ptgs/numtheory.hpp"
#include "ptgs/search.hpp"
#include "ptgs/singer.hpp"

namespace ptgs::cli {

namespace fs = std::filesystem;
using io::json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

namespace {

// Raised inside a command after its report is written, to pick the exit code.
struct ExitWith {
  int code;
};

Subset parse_subset(const std::string& s, const char* what) {
  Subset out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw PreconditionError(std::string("bad entry in ") + what + ": " + tok);
    }
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end())
    throw PreconditionError(std::string(what) + " has repeated entries");
  return out;
}

void require_in_range(const Subset& s, std::int64_t n, const char* what) {
  for (auto x : s)
    if (x < 0 || x >= n) throw PreconditionError(std::string(what) + " entry out of range: " + std::to_string(x));
}

std::string join_args(const std::vector<std::string>& args) {
  std::string s = "ptgs";
  for (const auto& a : args) s += " " + a;
  return s;
}

class Session {
 public:
  Session(const std::vector<std::string>& args, std::ostream& out) : args_(args), out_(out) {}

  void add_input(const fs::path& p) { inputs_.push_back(p); }
  void add_field(const json& f) {
    if (std::find(fields_.begin(), fields_.end(), f) == fields_.end()) fields_.push_back(f);
  }

  /// Deterministic identifier of this run: command line, version and input
  /// digests. Written into JSON outputs and into the manifest.
  std::string run_id() const {
    json j;
    j["command"] = args_;
    j["version"] = kArtifactVersion;
    json ins = json::array();
    for (const auto& p : inputs_) ins.push_back({p.string(), sha256_hex(io::read_file(p))});
    j["inputs"] = ins;
    return sha256_hex(j.dump());
  }

  /// JSON result: stdout when no --out was given, else the file plus its
  /// manifest.
  void emit(json result, const std::string& out_path) {
    if (out_path.empty()) {
      out_ << result.dump(2) << '\n';
      return;
    }
    if (result.is_object()) result["run_id"] = run_id();
    emit_text(result.dump(2) + "\n", out_path);
  }

  void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
      out_ << text;
      return;
    }
    io::write_file_atomic(out_path, text);
    outputs_.push_back(out_path);
    write_manifest(out_path);
  }

 private:
  void write_manifest(const fs::path& out_path) {
    json m;
    m["run_id"] = run_id();
    m["command_line"] = join_args(args_);
    m["artifact_version"] = kArtifactVersion;
    m["fields"] = fields_;
    json ins = json::array(), outs = json::array();
    for (const auto& p : inputs_) ins.push_back({{"path", p.string()}, {"sha256", sha256_hex(io::read_file(p))}});
    for (const auto& p : outputs_) outs.push_back({{"path", p.string()}, {"sha256", sha256_hex(io::read_file(p))}});
    m["inputs"] = ins;
    m["outputs"] = outs;
    m["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    m["finished_at_unix"] = static_cast<std::int64_t>(std::time(nullptr));
    auto mp = out_path;
    mp += ".manifest.json";
    io::write_file_atomic(mp, m.dump(2) + "\n");
  }

  std::vector<std::string> args_;
  std::ostream& out_;
  std::vector<fs::path> inputs_, outputs_;
  json fields_ = json::array();
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json field_descriptor(const SchemeRecord& s) {
  return {{"p", s.tower.p}, {"e", s.tower.e}, {"l", s.tower.l}, {"modulus", s.field->modulus()}};
}

// Certify with the routes applicable to the tower; exit 2 when any fails.
void certify_or_fail(SchemeRecord& s) {
  std::set<Route> routes{Route::additive_expansion};
  if (s.tower.l % 2 == 1 && is_projective_half_point_set(s.tower, s.D)) routes.insert(Route::weighing_divisibility);
  if (s.field->order() > 20000) routes.erase(Route::additive_expansion);
  if (routes.empty() || !certify(s, routes)) throw ExitWith{kVerificationFailed};
}

// ---- construct -----------------------------------------------------------

struct ConstructArgs {
  int p = 3, e = 1, l = 3, m = 1, pp = 0, r = 1, t = 3, s = 3;
  std::int64_t n = 0, exponent = 2;
  std::string family = "power", which = "minus1";
  std::string X, X1, X2, T;
  bool dual = false;
  std::string out;
};

json scheme_output(const SchemeRecord& s) { return io::scheme_to_json(s); }

int construct(Session& ses, const std::string& kind, const ConstructArgs& a) {
  SchemeRecord s;
  json extra;
  if (kind == "paley") {
    s = paley_scheme(a.p, a.m);
    certify_or_fail(s);
  } else if (kind == "adp") {
    Tower t{a.p, a.e, a.l};
    t.validate();
    std::optional<AdpRecord> rec;
    if (a.family == "power") {
      rec = adp_power_family(t, a.r);
    } else if (a.family == "half-power") {
      if (a.p != 3 || a.e != 1) throw PreconditionError("half-power family needs q = 3");
      rec = adp_half_power_family(a.l, a.r);
    } else if (a.family == "exponent") {
      rec = adp_from_exponent(*singer_bundle(t), a.exponent);
      if (!rec) {
        ses.emit({{"error", "S^(" + std::to_string(a.exponent) + ") is not an ADP set"}, {"adp", false}}, a.out);
        throw ExitWith{kVerificationFailed};
      }
    } else {
      throw PreconditionError("unknown ADP family: " + a.family);
    }
    AdpRecord use = *rec;
    if (a.dual) {
      std::swap(use.A, use.dual);
      use.name = "dual of " + rec->name;
    }
    s = scheme_from_adp(use);
    extra = {{"name", rec->name}, {"A", rec->A}, {"dual", rec->dual}, {"used_dual", a.dual}};
  } else if (kind == "cyclotomic") {
    Tower t{a.p, a.e, a.l};
    t.validate();
    auto X = parse_subset(a.X, "X");
    require_in_range(X, a.n, "X");
    s = cyclotomic_scheme(t, a.n, X);
    extra = {{"n", a.n}, {"X_small", X}};
  } else if (kind == "langevin") {
    Subset T;
    if (a.T.empty()) {
      const auto sub = static_cast<std::int64_t>(nt::ipow(a.pp, a.m - 1));
      for (std::int64_t i = 0; i < sub; ++i) T.push_back(i);
    } else {
      T = parse_subset(a.T, "T");
    }
    auto res = langevin_scheme(a.p, a.pp, a.m, T);
    s = res.scheme;
    extra = {{"candidate", res.params.candidate_names[res.chosen]},
             {"candidate_verdicts", res.candidate_verdicts},
             {"ambiguous", res.ambiguous},
             {"X_small", res.X_small}};
  } else if (kind == "gmw-lift") {
    auto g = gmw_components(a.p, a.e, a.t, a.s);
    auto X = parse_subset(a.X, "X");
    require_in_range(X, g.v_t, "X");
    auto [minus1, two] = gmw_lift_scheme(g, X);
    if (a.which == "minus1") {
      s = minus1;
    } else if (a.which == "two") {
      s = two;
    } else {
      throw PreconditionError("--which must be minus1 or two");
    }
  } else if (kind == "union") {
    Tower t{a.p, a.e, a.l};
    t.validate();
    auto X1 = parse_subset(a.X1, "X1"), X2 = parse_subset(a.X2, "X2");
    require_in_range(X1, t.v(), "X1");
    require_in_range(X2, t.v(), "X2");
    s = union_scheme(t, X1, X2);
  } else {
    throw PreconditionError("unknown construction: " + kind);
  }
  if (s.verified_by.empty()) throw ExitWith{kVerificationFailed};
  auto j = scheme_output(s);
  if (!extra.is_null()) j["construction"] = extra;
  ses.add_field(field_descriptor(s));
  ses.emit(j, a.out);
  return kOk;
}

// ---- verify --------------------------------------------------------------

int verify(Session& ses, const std::string& file, const std::string& method, const std::string& out) {
  ses.add_input(file);
  auto s = io::scheme_from_json(io::read_json(file));
  ses.add_field(field_descriptor(s));
  std::vector<std::string> methods;
  if (method == "all") {
    methods = {"eq1", "thm35", "thm38"};
  } else {
    route_from_token(method);
    methods = {method};
  }
  json report;
  report["file"] = file;
  json verdicts;
  bool any_false = false, any_pre = false;
  std::vector<bool> applicable;
  for (const auto& m : methods) {
    try {
      bool ok = false;
      switch (route_from_token(m)) {
        case Route::additive_expansion: ok = satisfies_additive_equation(s); break;
        case Route::singer_divisibility: ok = satisfies_singer_divisibility(s); break;
        case Route::weighing_divisibility: ok = satisfies_weighing_divisibility(s); break;
        case Route::dual_equation: ok = satisfies_dual_equation(s); break;
      }
      verdicts[m] = ok;
      applicable.push_back(ok);
      any_false = any_false || !ok;
    } catch (const PreconditionError& e) {
      verdicts[m] = json{{"precondition", e.what()}};
      any_pre = true;
    }
  }
  report["verdicts"] = verdicts;
  if (method == "all") {
    const bool agree = std::adjacent_find(applicable.begin(), applicable.end(), std::not_equal_to<>()) == applicable.end();
    report["routes_agree"] = agree;
    if (!agree) {
      ses.emit(report, out);
      throw InconsistencyError("verification routes disagree");
    }
  }
  ses.emit(report, out);
  if (any_false) return kVerificationFailed;
  if (any_pre && method != "all") return kUsage;
  return kOk;
}

// ---- search --------------------------------------------------------------

struct SearchArgs {
  int p = 3, e = 1, l = 3, m = 2, ce = 4, shards = 1;
  std::string checkpoint, out;
  std::uint64_t checkpoint_every = 1ULL << 22;
  std::uint64_t step_limit = 0;
};

int search_cmd(Session& ses, const std::string& kind, const SearchArgs& a) {
  if (kind == "cyclotomic") {
    auto hits = search::search_cyclotomic_unions(a.p, a.m, a.ce);
    json j;
    j["field"] = io::field_to_json(*cached_field(a.p, a.m));
    j["e"] = a.ce;
    j["count"] = hits.size();
    json arr = json::array();
    for (const auto& h : hits) arr.push_back({{"classes", h.classes}, {"scheme", io::scheme_to_json(h.scheme)}});
    j["hits"] = arr;
    ses.add_field(j["field"]);
    ses.emit(j, a.out);
    return kOk;
  }
  Tower t{a.p, a.e, a.l};
  t.validate();
  search::Options o;
  o.shards = a.shards;
  if (!a.checkpoint.empty()) o.checkpoint_dir = a.checkpoint;
  o.checkpoint_every = a.checkpoint_every;
  if (a.step_limit > 0) o.step_limit = a.step_limit;
  search::Result r = kind == "all" ? search::search_all_X(t, o) : search::search_galois_invariant(t, o);
  auto j = io::search_result_to_json(r);
  j["field"] = io::field_to_json(*cached_field(t.p, t.degree()));
  ses.add_field(j["field"]);
  ses.emit(j, a.out);
  return r.finished ? kOk : kBudget;
}

// ---- classify ------------------------------------------------------------

void collect_schemes(const fs::path& file, std::vector<std::pair<std::string, SchemeRecord>>& out, Session& ses) {
  ses.add_input(file);
  const auto j = io::read_json(file);
  const std::string base = file.filename().string();
  if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) out.emplace_back(base + "#" + std::to_string(i), io::scheme_from_json(j[i]));
  } else if (j.contains("found")) {
    auto so = io::search_result_from_json(j);
    FieldPtr F = cached_field(so.tower.p, so.tower.degree());
    for (std::size_t i = 0; i < so.found.size(); ++i)
      out.emplace_back(base + "#" + std::to_string(i), build_scheme(so.tower, so.found[i], F, Provenance::search));
  } else if (j.contains("hits")) {
    for (std::size_t i = 0; i < j["hits"].size(); ++i)
      out.emplace_back(base + "#" + std::to_string(i), io::scheme_from_json(j["hits"][i].at("scheme")));
  } else {
    out.emplace_back(base, io::scheme_from_json(j));
  }
}

struct ClassifyArgs {
  std::string in, out;
  bool aut = false, iso = false;
  std::uint64_t budget = 50'000'000;
};

int classify_cmd(Session& ses, const ClassifyArgs& a) {
  std::vector<std::pair<std::string, SchemeRecord>> schemes;
  if (fs::is_directory(a.in)) {
    std::vector<fs::path> files;
    for (const auto& de : fs::directory_iterator(a.in)) {
      const auto name = de.path().filename().string();
      if (de.path().extension() == ".json" && name.find(".manifest.") == std::string::npos) files.push_back(de.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) collect_schemes(f, schemes, ses);
  } else {
    collect_schemes(a.in, schemes, ses);
  }
  const std::size_t n = schemes.size();
  std::vector<std::string> canon(n);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t i = 0; i < n; ++i) canon[i] = semilinear_canonical(schemes[i].second);

  // One representative per semilinear class; equal canonical forms imply
  // isomorphic configurations, so the remaining layers run on representatives.
  std::map<std::pair<std::string, std::string>, std::size_t> rep_of;  // (field key, canonical) -> rep index
  std::vector<std::size_t> reps, cls(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto key = std::make_pair(field_descriptor(schemes[i].second).dump(), canon[i]);
    auto [it, fresh] = rep_of.emplace(key, i);
    if (fresh) reps.push_back(i);
    cls[i] = it->second;
  }
  std::vector<Configuration> conf(reps.size());
  std::vector<Fingerprint> fps(reps.size());
  std::vector<std::optional<AutOrder>> auts(reps.size());
  std::exception_ptr error;
  std::mutex mu;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t r = 0; r < reps.size(); ++r) {
    try {
      conf[r] = make_configuration(schemes[reps[r]].second);
      fps[r] = fingerprint(conf[r]);
      // With --iso the group is computed once per configuration class below.
      if (a.aut && !a.iso) auts[r] = aut_order(conf[r], a.budget);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  bool budget_hit = false;
  std::vector<int> iso_class(reps.size(), -1);
  int n_iso = 0;
  if (a.iso) {
    // Class representatives sit on the b side of find_isomorphism so that their
    // automorphism groups prune every later comparison.
    std::vector<std::size_t> class_reps;
    std::vector<ir::ColoredGraph> class_graphs;
    std::vector<std::optional<ir::AutResult>> class_auts;
    for (std::size_t r = 0; r < reps.size(); ++r) {
      std::optional<ir::ColoredGraph> gr;
      for (std::size_t c = 0; c < class_reps.size() && iso_class[r] < 0; ++c) {
        const auto o = class_reps[c];
        if (conf[o].kind != conf[r].kind || conf[o].v != conf[r].v || !(fps[o] == fps[r])) continue;
        try {
          if (!gr) gr = to_colored_graph(conf[r]);
          const ir::AutResult* aut_c = class_auts[c] ? &*class_auts[c] : nullptr;
          if (ir::find_isomorphism(*gr, class_graphs[c], a.budget, aut_c)) iso_class[r] = static_cast<int>(c);
        } catch (const BudgetExceeded&) {
          budget_hit = true;
        }
      }
      if (iso_class[r] < 0) {
        iso_class[r] = n_iso++;
        class_reps.push_back(r);
        class_graphs.push_back(gr ? std::move(*gr) : to_colored_graph(conf[r]));
        try {
          class_auts.push_back(ir::automorphism_group(class_graphs.back(), a.budget));
        } catch (const BudgetExceeded&) {
          class_auts.push_back(std::nullopt);
        }
      }
      // Isomorphic configurations have equal automorphism group orders.
      if (a.aut) {
        const auto& ca = class_auts[iso_class[r]];
        if (ca) auts[r] = AutOrder{ca->order, ca->nodes};
      }
    }
  }

  std::map<std::size_t, std::size_t> rep_pos;
  for (std::size_t r = 0; r < reps.size(); ++r) rep_pos[reps[r]] = r;
  json rows = json::array();
  std::set<std::string> fp_classes;
  for (std::size_t r = 0; r < reps.size(); ++r) fp_classes.insert(field_descriptor(schemes[reps[r]].second).dump() + fps[r].digest());
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = rep_pos[cls[i]];
    json row;
    row["id"] = schemes[i].first;
    if (!schemes[i].second.label.empty()) row["label"] = schemes[i].second.label;
    row["canonical_hash"] = short_hash(canon[i]);
    row["semilinear_class"] = r;
    row["fingerprint"] = io::fingerprint_to_json(fps[r]);
    if (a.aut) {
      if (auts[r]) {
        row["aut_order"] = auts[r]->order;
      } else {
        row["aut_order"] = nullptr;
        budget_hit = true;
      }
    }
    if (a.iso) row["configuration_class"] = iso_class[r];
    rows.push_back(row);
  }
  json j;
  j["rows"] = rows;
  j["count"] = n;
  j["semilinear_classes"] = reps.size();
  j["fingerprint_classes"] = fp_classes.size();
  if (a.iso) j["configuration_classes"] = n_iso;
  for (auto idx : reps) ses.add_field(field_descriptor(schemes[idx].second));
  ses.emit(j, a.out);
  return budget_hit ? kBudget : kOk;
}

// ---- export --------------------------------------------------------------

int export_cmd(Session& ses, const std::string& graph6_file, const std::string& design_file, const std::string& out) {
  if (graph6_file.empty() == design_file.empty()) throw PreconditionError("give exactly one of --graph6 or --design-json");
  const std::string file = graph6_file.empty() ? design_file : graph6_file;
  ses.add_input(file);
  auto s = io::scheme_from_json(io::read_json(file));
  ses.add_field(field_descriptor(s));
  auto c = make_configuration(s);
  if (!graph6_file.empty()) {
    // Designs are exported as their point-block incidence graph.
    auto g = to_colored_graph(c);
    ses.emit_text(graph6::encode(g.n, g.rows) + "\n", out);
    return kOk;
  }
  json j;
  j["kind"] = c.kind == Configuration::Kind::srg_graph ? "srg_graph" : "hadamard_design";
  j["points"] = c.v;
  j["parameters"] = {c.v, c.k, c.lambda, c.mu};
  j["blocks"] = design_blocks(c);
  ses.emit(j, out);
  return kOk;
}

// ---- singer / langevin-solve ---------------------------------------------

int singer_cmd(Session& ses, const Tower& t, const std::string& out) {
  t.validate();
  auto b = singer_bundle(t);
  auto rep = verify_singer(*b);
  const std::int64_t q = t.q(), v = t.v();
  const auto ql1 = static_cast<std::int64_t>(nt::ipow(q, t.l - 1));
  const auto ql2 = t.l >= 2 ? static_cast<std::int64_t>(nt::ipow(q, t.l - 2)) : 0;
  json j;
  j["field"] = io::field_to_json(*b->field);
  j["tower"] = {{"p", t.p}, {"e", t.e}, {"l", t.l}};
  j["relative_difference_set"] = io::ds_to_json({t.n(), b->R, {v, q - 1, ql1, ql2}, "relative_singer"});
  j["difference_set"] = io::ds_to_json({v, b->S, {v, ql1, ql2 * (q - 1)}, "singer"});
  j["complement"] = io::ds_to_json({v, complement(b->S, v), {v, (ql1 - 1) / (q - 1), t.l >= 2 ? (ql2 - 1) / (q - 1) : 0}, "singer_complement"});
  if (t.l % 2 == 1) j["weighing"] = io::weighing_to_json(v, b->W);
  j["checks"] = {{"rds", rep.rds},
                 {"ds", rep.ds},
                 {"complement_ds", rep.complement_ds},
                 {"weighing", rep.weighing},
                 {"strong_multiplier", rep.strong_multiplier},
                 {"weighing_cross_check", rep.weighing_cross_check}};
  ses.add_field(j["field"]);
  ses.emit(j, out);
  return rep.all() ? kOk : kVerificationFailed;
}

int langevin_solve_cmd(Session& ses, int p, int pp, int m, const std::string& out) {
  auto L = solve_langevin(p, pp, m);
  json j;
  j["p"] = L.p;
  j["p_prime"] = L.pp;
  j["m"] = L.m;
  j["l"] = L.l;
  j["order"] = L.order;
  j["order_ok"] = L.order_ok;
  j["h"] = L.h;
  j["a"] = L.a;
  j["b"] = L.b;
  j["constructive"] = L.constructive;
  j["desk_feasible"] = L.desk_feasible;
  j["status"] = L.status;
  json cands = json::array();
  for (std::size_t i = 0; i < L.candidates.size(); ++i)
    cands.push_back({{"name", L.candidate_names[i]}, {"set", L.candidates[i]}, {"size", L.candidates[i].size()}});
  j["candidates"] = cands;
  ses.emit(j, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Paley type group schemes: construction, verification, search and classification", "ptgs"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: available parallelism)");

  std::function<int(Session&)> action;

  // construct
  auto* construct_app = app.add_subcommand("construct", "Build a scheme and write its verified record");
  construct_app->require_subcommand(1);
  static const std::vector<std::string> kinds = {"paley", "adp", "cyclotomic", "langevin", "gmw-lift", "union"};
  ConstructArgs ca;
  for (const auto& kind : kinds) {
    auto* sc = construct_app->add_subcommand(kind);
    sc->add_option("--p", ca.p, "Characteristic")->required();
    sc->add_option("--out", ca.out, "Output file (default: stdout)");
    if (kind == "paley") sc->add_option("--m", ca.m, "Degree over F_p")->required();
    if (kind == "adp" || kind == "cyclotomic" || kind == "union") {
      sc->add_option("--e", ca.e, "q = p^e");
      sc->add_option("--l", ca.l, "Degree over F_q")->required();
    }
    if (kind == "adp") {
      sc->add_option("--family", ca.family, "power | half-power | exponent");
      sc->add_option("--r", ca.r, "Family parameter");
      sc->add_option("--t", ca.exponent, "Exponent for --family exponent");
      sc->add_flag("--dual", ca.dual, "Use the ADP dual instead of the power set");
    }
    if (kind == "cyclotomic") {
      sc->add_option("--n", ca.n, "Order of the quotient Z_n")->required();
      sc->add_option("--X", ca.X, "Comma-separated subset of Z_n");
    }
    if (kind == "langevin") {
      sc->add_option("--pp", ca.pp, "Prime p' = 3 mod 8, p' != 3")->required();
      sc->add_option("--m", ca.m, "Exponent of p'");
      sc->add_option("--T", ca.T, "Transversal of p' Z_{p'^m} (default 0..p'^(m-1)-1)");
    }
    if (kind == "gmw-lift") {
      sc->add_option("--e", ca.e, "q = p^e");
      sc->add_option("--t", ca.t, "Inner degree")->required();
      sc->add_option("--s", ca.s, "Outer degree")->required();
      sc->add_option("--X", ca.X, "Comma-separated subset of the inner Z_v");
      sc->add_option("--which", ca.which, "minus1 | two");
    }
    if (kind == "union") {
      sc->add_option("--X1", ca.X1)->required();
      sc->add_option("--X2", ca.X2)->required();
    }
    sc->callback([&, kind] { action = [&, kind](Session& s) { return construct(s, kind, ca); }; });
  }

  // verify
  auto* verify_app = app.add_subcommand("verify", "Check a scheme file by one or more routes");
  std::string verify_file, verify_method = "all", verify_out;
  verify_app->add_option("file", verify_file)->required();
  verify_app->add_option("--method", verify_method, "eq1 | thm35 | thm38 | eq5 | all");
  verify_app->add_option("--out", verify_out);
  verify_app->callback([&] { action = [&](Session& s) { return verify(s, verify_file, verify_method, verify_out); }; });

  // search
  auto* search_app = app.add_subcommand("search", "Exhaustive structured searches");
  search_app->require_subcommand(1);
  SearchArgs sa;
  for (std::string kind : {"all", "galois", "cyclotomic"}) {
    auto* sc = search_app->add_subcommand(kind);
    sc->add_option("--p", sa.p)->required();
    sc->add_option("--out", sa.out);
    if (kind == "cyclotomic") {
      sc->add_option("--m", sa.m)->required();
      sc->add_option("--e", sa.ce, "Number of cyclotomic classes")->required();
    } else {
      sc->add_option("--e", sa.e, "q = p^e");
      sc->add_option("--l,--degree", sa.l, "Degree over F_q")->required();
      sc->add_option("--shards", sa.shards);
      sc->add_option("--checkpoint", sa.checkpoint, "Checkpoint directory (resumes when present)");
      sc->add_option("--checkpoint-every", sa.checkpoint_every);
      sc->add_option("--step-limit", sa.step_limit, "Stop each shard after this many candidates");
    }
    sc->callback([&, kind] { action = [&, kind](Session& s) { return search_cmd(s, kind, sa); }; });
  }

  // classify
  auto* classify_app = app.add_subcommand("classify", "Canonical forms, fingerprints and automorphism orders");
  ClassifyArgs cla;
  classify_app->add_option("--in", cla.in, "Scheme file, search output, or directory of them")->required();
  classify_app->add_flag("--aut", cla.aut, "Compute automorphism group orders");
  classify_app->add_flag("--iso", cla.iso, "Group configurations into isomorphism classes");
  classify_app->add_option("--budget", cla.budget, "Search-node budget per IR run");
  classify_app->add_option("--out", cla.out);
  classify_app->callback([&] { action = [&](Session& s) { return classify_cmd(s, cla); }; });

  // export
  auto* export_app = app.add_subcommand("export", "Write a configuration as graph6 or design JSON");
  std::string g6, dj, export_out;
  export_app->add_option("--graph6", g6, "Scheme file to export as graph6");
  export_app->add_option("--design-json", dj, "Scheme file to export as a block list");
  export_app->add_option("--out", export_out);
  export_app->callback([&] { action = [&](Session& s) { return export_cmd(s, g6, dj, export_out); }; });

  // singer
  auto* singer_app = app.add_subcommand("singer", "Singer relative difference set, difference set and weighing matrix");
  Tower st;
  std::string singer_out;
  singer_app->add_option("--p", st.p)->required();
  singer_app->add_option("--e", st.e);
  singer_app->add_option("--l", st.l)->required();
  singer_app->add_option("--out", singer_out);
  singer_app->callback([&] { action = [&](Session& s) { return singer_cmd(s, st, singer_out); }; });

  // langevin-solve
  auto* ls_app = app.add_subcommand("langevin-solve", "Parameters of the quadratic-form construction");
  int lp = 3, lpp = 11, lm = 1;
  std::string ls_out;
  ls_app->add_option("--p", lp)->required();
  ls_app->add_option("--pp", lpp)->required();
  ls_app->add_option("--m", lm);
  ls_app->add_option("--out", ls_out);
  ls_app->callback([&] { action = [&](Session& s) { return langevin_solve_cmd(s, lp, lpp, lm, ls_out); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  if (threads > 0) omp_set_num_threads(threads);

  Session session(args, out);
  try {
    return action(session);
  } catch (const ExitWith& e) {
    return e.code;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InconsistencyError& e) {
    err << "verification failure: " << e.what() << '\n';
    return kVerificationFailed;
  } catch (const OverflowError& e) {
    err << "overflow: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace ptgs::cli
