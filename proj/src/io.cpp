#include "ptgs/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ptgs/error.hpp"

namespace ptgs::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw PreconditionError(std::string(what) + ": " + e.what());
  }
}

void check_range(const Subset& s, std::int64_t n, const char* what) {
  for (auto x : s)
    if (x < 0 || x >= n) throw PreconditionError(std::string(what) + " entry out of range: " + std::to_string(x));
}

Subset sorted_unique(Subset s, const char* what) {
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw PreconditionError(std::string(what) + " has repeated entries");
  return s;
}

FieldPtr field_with_modulus(int p, int m, const std::optional<std::vector<int>>& modulus) {
  auto def = cached_field(p, m);
  if (!modulus || *modulus == def->modulus()) return def;
  return Field::create(p, m, modulus);
}

}  // namespace

json field_to_json(const Field& F) { return {{"p", F.p()}, {"m", F.m()}, {"modulus", F.modulus()}}; }

FieldPtr field_from_json(const json& j) {
  return guarded("field", [&] {
    std::optional<std::vector<int>> mod;
    if (j.contains("modulus")) mod = j.at("modulus").get<std::vector<int>>();
    return field_with_modulus(j.at("p").get<int>(), j.at("m").get<int>(), mod);
  });
}

json scheme_to_json(const SchemeRecord& s) {
  json j;
  j["field"] = {{"p", s.tower.p}, {"e", s.tower.e}, {"l", s.tower.l}, {"modulus", s.field->modulus()}};
  j["D"] = s.D;
  if (s.X) j["X"] = *s.X;
  j["provenance"] = to_string(s.provenance);
  std::vector<std::string> routes;
  for (auto r : s.verified_by) routes.push_back(route_token(r));
  j["verified_by"] = routes;
  if (!s.label.empty()) j["label"] = s.label;
  return j;
}

SchemeRecord scheme_from_json(const json& j) {
  return guarded("scheme", [&] {
    const auto& f = j.at("field");
    Tower t{f.at("p").get<int>(), f.value("e", 1), f.at("l").get<int>()};
    t.validate();
    std::optional<std::vector<int>> mod;
    if (f.contains("modulus")) mod = f.at("modulus").get<std::vector<int>>();
    auto F = field_with_modulus(t.p, t.degree(), mod);
    SchemeRecord s;
    if (j.contains("X") && !j.at("X").is_null()) {
      auto X = sorted_unique(j.at("X").get<Subset>(), "X");
      check_range(X, t.v(), "X");
      s = build_scheme(t, X, F);
    } else {
      s = scheme_from_set(t, {}, F);
    }
    if (j.contains("D")) {
      auto D = sorted_unique(j.at("D").get<Subset>(), "D");
      check_range(D, t.n(), "D");
      if (s.X && D != s.D) throw PreconditionError("scheme: D is not D(X)");
      s.D = std::move(D);
    } else if (!s.X) {
      throw PreconditionError("scheme: needs D or X");
    }
    s.provenance = provenance_from_string(j.value("provenance", std::string("manual")));
    for (const auto& r : j.value("verified_by", std::vector<std::string>{})) s.verified_by.insert(route_from_token(r));
    s.label = j.value("label", std::string());
    return s;
  });
}

json ds_to_json(const DifferenceSetRecord& d) {
  return {{"v", d.v}, {"set", d.set}, {"params", d.params}, {"kind", d.kind}};
}

DifferenceSetRecord ds_from_json(const json& j) {
  return guarded("difference set", [&] {
    DifferenceSetRecord d;
    d.v = j.at("v").get<std::int64_t>();
    d.set = j.at("set").get<Subset>();
    d.params = j.at("params").get<std::vector<std::int64_t>>();
    d.kind = j.at("kind").get<std::string>();
    check_range(d.set, d.v, "set");
    return d;
  });
}

json group_ring_to_json(const GroupRingElement& a) {
  json g;
  if (a.group.kind == GroupDescriptor::Kind::cyclic) {
    g = {{"kind", "cyclic"}, {"order", a.group.order}};
  } else {
    g = {{"kind", "field_additive"}, {"order", a.group.order}, {"field", field_to_json(*a.group.field)}};
  }
  return {{"group", g}, {"coeffs", a.coeffs}};
}

GroupRingElement group_ring_from_json(const json& j) {
  return guarded("group ring element", [&] {
    const auto& g = j.at("group");
    const auto kind = g.at("kind").get<std::string>();
    GroupDescriptor G;
    if (kind == "cyclic") {
      G = GroupDescriptor::cyclic(g.at("order").get<std::int64_t>());
    } else if (kind == "field_additive") {
      G = GroupDescriptor::additive(field_from_json(g.at("field")));
    } else {
      throw PreconditionError("unknown group kind: " + kind);
    }
    auto coeffs = j.at("coeffs").get<kernels::Coeffs>();
    if (static_cast<std::int64_t>(coeffs.size()) != G.order) throw PreconditionError("coefficient count != group order");
    return GroupRingElement(G, std::move(coeffs));
  });
}

json adp_to_json(const AdpRecord& a) {
  const auto p = singer_params(a.tower);
  json j = ds_to_json({p.v, a.A, {p.v, p.k, p.lambda}, "adp"});
  j["dual"] = a.dual;
  j["origin"] = a.origin;
  j["name"] = a.name;
  return j;
}

json weighing_to_json(std::int64_t v, const std::vector<std::int64_t>& entries) {
  return {{"v", v}, {"entries", entries}};
}

json search_result_to_json(const search::Result& r) {
  json j;
  j["tower"] = {{"p", r.tower.p}, {"e", r.tower.e}, {"l", r.tower.l}};
  j["kind"] = search::to_string(r.kind);
  j["engine"] = search::kEngineVersion;
  j["candidates"] = r.candidates;
  j["finished"] = r.finished;
  j["complete_for_field"] = r.complete_for_field;
  j["note"] = r.note;
  j["post_verified"] = r.post_verified;
  j["count"] = r.found.size();
  j["found"] = r.found;
  return j;
}

SearchOutput search_result_from_json(const json& j) {
  return guarded("search result", [&] {
    SearchOutput o;
    const auto& t = j.at("tower");
    o.tower = Tower{t.at("p").get<int>(), t.value("e", 1), t.at("l").get<int>()};
    o.tower.validate();
    o.found = j.at("found").get<std::vector<Subset>>();
    for (const auto& X : o.found) check_range(X, o.tower.v(), "X");
    return o;
  });
}

json fingerprint_to_json(const Fingerprint& f) {
  return {{"p_rank", f.p_rank}, {"global", f.global}, {"digest", f.digest()}};
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw PreconditionError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& p, const std::string& content) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, p);
}

json read_json(const std::filesystem::path& p) {
  const auto text = read_file(p);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw PreconditionError("malformed JSON in " + p.string() + ": " + e.what());
  }
}

}  // namespace ptgs::io
