#include "ptgs/search.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "ptgs/error.hpp"
#include "ptgs/numtheory.hpp"

namespace ptgs::search {

using nlohmann::json;

namespace {

std::int64_t env_int(const char* name, std::int64_t fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    throw PreconditionError(std::string("bad integer in ") + name);
  }
}

void require_odd_l(const Tower& t, const char* what) {
  t.validate();
  if (t.l % 2 == 0) throw PreconditionError(std::string(what) + ": l must be odd");
}

std::filesystem::path shard_file(const std::filesystem::path& dir, int id) {
  return dir / ("shard-" + std::to_string(id) + ".jsonl");
}

// Gray sweep of one shard with residues stored in T. Returns the raw hits
// (orbit masks) of positions examined in this call and advances pos/residue.
template <class T>
class Sweeper {
 public:
  Sweeper(const ResidueTable& table, std::size_t orbits) : m_(static_cast<T>(table.modulus())), v_(table.v()) {
    add_.resize(orbits);
    sub_.resize(orbits);
    for (std::size_t o = 0; o < orbits; ++o) {
      const auto& c = table.contribution(o);
      add_[o].resize(v_);
      sub_[o].resize(v_);
      for (std::int64_t i = 0; i < v_; ++i) {
        add_[o][i] = static_cast<T>(c[i]);
        sub_[o][i] = static_cast<T>((table.modulus() - c[i]) % table.modulus());
      }
    }
  }

  void load(const std::vector<std::uint32_t>& r) {
    r_.assign(r.begin(), r.end());
  }
  std::vector<std::uint32_t> store() const { return {r_.begin(), r_.end()}; }

  bool is_zero() const {
    T acc = 0;
    for (T x : r_) acc |= x;
    return acc == 0;
  }

  // Move from position pos - 1 to pos (pos >= 1).
  void step_to(std::uint64_t pos) {
    const int o = std::countr_zero(pos);
    const bool now_in = (gray(pos) >> o) & 1ULL;
    const T* c = now_in ? add_[o].data() : sub_[o].data();
    T* r = r_.data();
    const T m = m_;
    for (std::int64_t i = 0; i < v_; ++i) {
      T x = static_cast<T>(r[i] + c[i]);
      r[i] = x >= m ? static_cast<T>(x - m) : x;
    }
  }

 private:
  T m_;
  std::int64_t v_;
  std::vector<std::vector<T>> add_, sub_;
  std::vector<T> r_;
};

struct ShardRun {
  std::vector<std::uint64_t> hits;
  std::uint64_t pos = 0;
  bool finished = false;
};

Checkpoint make_checkpoint(const SearchSpace& s, const Shard& sh, std::uint64_t pos,
                           const std::vector<std::uint64_t>& hits, std::vector<std::uint32_t> residue) {
  Checkpoint c;
  c.shard = sh.id;
  c.gray_pos = pos;
  c.tower = s.tower;
  c.kind = to_string(s.kind);
  c.residue = std::move(residue);
  for (auto h : hits) c.found.push_back(s.subset_of(gray(h)));
  return c;
}

template <class T>
ShardRun run_shard(const SearchSpace& s, const ResidueTable& table, const Shard& sh, const Options& o) {
  ShardRun out;
  out.pos = sh.begin;
  std::vector<std::uint32_t> residue = sh.residue;
  std::optional<std::filesystem::path> file;
  if (o.checkpoint_dir) {
    file = shard_file(*o.checkpoint_dir, sh.id);
    if (auto cp = last_checkpoint(*file)) {
      if (cp->engine != kEngineVersion || cp->tower != s.tower || cp->kind != to_string(s.kind) || cp->shard != sh.id)
        throw PreconditionError("checkpoint does not match this search: " + file->string());
      if (cp->gray_pos < sh.begin || cp->gray_pos > sh.end)
        throw PreconditionError("checkpoint position outside shard (shard count changed?): " + file->string());
      out.pos = cp->gray_pos;
      if (out.pos < sh.end) {
        residue = cp->residue;
        if (residue != table.residue_of(gray(out.pos)))
          throw InconsistencyError("checkpoint residue does not match its Gray position: " + file->string());
      }
      // Recover masks of earlier hits from their subsets.
      for (const auto& X : cp->found) {
        std::uint64_t mask = 0;
        for (std::size_t k = 0; k < s.orbits.size(); ++k)
          if (std::binary_search(X.begin(), X.end(), s.orbits[k].front())) mask |= 1ULL << k;
        // Gray position whose code is mask.
        std::uint64_t p = 0;
        for (std::uint64_t m = mask; m; m >>= 1) p ^= m;
        out.hits.push_back(p);
      }
    }
  }
  Sweeper<T> sw(table, s.orbits.size());
  sw.load(residue);
  std::uint64_t steps = 0, since_flush = 0;
  const std::uint64_t limit = o.step_limit.value_or(~0ULL);
  while (out.pos < sh.end && steps < limit) {
    if (sw.is_zero()) out.hits.push_back(out.pos);
    ++out.pos;
    ++steps;
    if (out.pos < sh.end) sw.step_to(out.pos);
    if (file && ++since_flush >= o.checkpoint_every && out.pos < sh.end) {
      append_checkpoint(*file, make_checkpoint(s, sh, out.pos, out.hits, sw.store()));
      since_flush = 0;
    }
  }
  out.finished = out.pos >= sh.end;
  if (file) append_checkpoint(*file, make_checkpoint(s, sh, out.pos, out.hits, sw.store()));
  return out;
}

ShardRun dispatch_shard(const SearchSpace& s, const ResidueTable& table, const Shard& sh, const Options& o) {
  if (table.modulus() <= 128) return run_shard<std::uint8_t>(s, table, sh, o);
  if (table.modulus() <= 32768) return run_shard<std::uint16_t>(s, table, sh, o);
  return run_shard<std::uint32_t>(s, table, sh, o);
}

}  // namespace

Budget Budget::from_env() {
  Budget b;
  b.max_all_x_v = env_int("PTGS_MAX_ALLX_V", b.max_all_x_v);
  b.max_orbits = static_cast<int>(env_int("PTGS_MAX_ORBITS", b.max_orbits));
  b.max_cyclotomic_e = static_cast<int>(env_int("PTGS_MAX_CYCLOTOMIC_E", b.max_cyclotomic_e));
  return b;
}

std::string to_string(SpaceKind k) {
  switch (k) {
    case SpaceKind::all_X: return "all_X";
    case SpaceKind::galois_orbits: return "galois_orbits";
    case SpaceKind::cyclotomic_unions: return "cyclotomic_unions";
  }
  return "?";
}

Subset SearchSpace::subset_of(std::uint64_t mask) const {
  Subset X;
  for (std::size_t k = 0; k < orbits.size(); ++k)
    if ((mask >> k) & 1ULL) X.insert(X.end(), orbits[k].begin(), orbits[k].end());
  std::sort(X.begin(), X.end());
  return X;
}

SearchSpace all_x_space(const Tower& t, const Budget& b) {
  require_odd_l(t, "search_all_X");
  if (t.v() > b.max_all_x_v || t.v() > 62)
    throw BudgetExceeded("search_all_X: v = " + std::to_string(t.v()) + " exceeds budget " +
                         std::to_string(b.max_all_x_v));
  SearchSpace s;
  s.kind = SpaceKind::all_X;
  s.tower = t;
  for (std::int64_t i = 0; i < t.v(); ++i) s.orbits.push_back({i});
  return s;
}

SearchSpace galois_space(const Tower& t, const Budget& b) {
  require_odd_l(t, "search_galois_invariant");
  const std::int64_t v = t.v();
  SearchSpace s;
  s.kind = SpaceKind::galois_orbits;
  s.tower = t;
  std::vector<bool> seen(static_cast<std::size_t>(v), false);
  for (std::int64_t i = 0; i < v; ++i) {
    if (seen[i]) continue;
    Subset orb;
    for (std::int64_t j = i; !seen[j]; j = j * t.p % v) {
      seen[j] = true;
      orb.push_back(j);
    }
    std::sort(orb.begin(), orb.end());
    s.orbits.push_back(std::move(orb));
  }
  if (static_cast<int>(s.orbits.size()) > b.max_orbits || s.orbits.size() > 62)
    throw BudgetExceeded("search_galois_invariant: " + std::to_string(s.orbits.size()) + " orbits exceed budget " +
                         std::to_string(b.max_orbits));
  return s;
}

ResidueTable::ResidueTable(const SearchSpace& s, std::shared_ptr<const SingerBundle> bundle) {
  if (!bundle) bundle = singer_bundle(s.tower);
  const std::int64_t h = s.tower.half_power();
  if (h > 0xFFFFFFFFLL) throw OverflowError("residue modulus exceeds 32 bits");
  modulus_ = static_cast<std::uint32_t>(h);
  v_ = s.tower.v();
  const auto& W = bundle->W;
  for (const auto& orb : s.orbits) {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(v_));
    for (std::int64_t k = 0; k < v_; ++k) {
      std::int64_t acc = 0;
      for (auto x : orb) acc += W[(k + x) % v_];
      c[k] = static_cast<std::uint32_t>(nt::mod(acc, h));
    }
    contrib_.push_back(std::move(c));
  }
}

std::vector<std::uint32_t> ResidueTable::residue_of(std::uint64_t mask) const {
  std::vector<std::uint32_t> r(static_cast<std::size_t>(v_), 0);
  for (std::size_t o = 0; o < contrib_.size(); ++o) {
    if (!((mask >> o) & 1ULL)) continue;
    for (std::int64_t i = 0; i < v_; ++i) r[i] = static_cast<std::uint32_t>((r[i] + contrib_[o][i]) % modulus_);
  }
  return r;
}

std::vector<Shard> shard_plan(const SearchSpace& s, int n_shards) {
  return shard_plan(s, ResidueTable(s), n_shards);
}

std::vector<Shard> shard_plan(const SearchSpace& s, const ResidueTable& table, int n_shards) {
  if (n_shards < 1) throw PreconditionError("shard_plan: n_shards must be >= 1");
  const std::uint64_t total = s.candidates();
  const auto n = static_cast<std::uint64_t>(n_shards);
  std::vector<Shard> out;
  for (std::uint64_t k = 0; k < n; ++k) {
    Shard sh;
    sh.id = static_cast<int>(k);
    // k * total / n without overflow (total <= 2^62).
    sh.begin = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * k / n);
    sh.end = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * (k + 1) / n);
    sh.residue = table.residue_of(gray(sh.begin));
    out.push_back(std::move(sh));
  }
  return out;
}

std::string checkpoint_to_json(const Checkpoint& c) {
  json j;
  j["shard"] = c.shard;
  j["gray_pos"] = c.gray_pos;
  j["found"] = c.found;
  j["engine"] = c.engine;
  j["residue"] = c.residue;
  j["tower"] = {c.tower.p, c.tower.e, c.tower.l};
  j["kind"] = c.kind;
  return j.dump();
}

Checkpoint checkpoint_from_json(const std::string& line) {
  try {
    const json j = json::parse(line);
    Checkpoint c;
    c.shard = j.at("shard").get<int>();
    c.gray_pos = j.at("gray_pos").get<std::uint64_t>();
    c.found = j.at("found").get<std::vector<Subset>>();
    c.engine = j.at("engine").get<std::string>();
    c.residue = j.at("residue").get<std::vector<std::uint32_t>>();
    const auto t = j.at("tower").get<std::vector<int>>();
    if (t.size() != 3) throw PreconditionError("checkpoint tower must have three entries");
    c.tower = Tower{t[0], t[1], t[2]};
    c.kind = j.at("kind").get<std::string>();
    return c;
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("malformed checkpoint record: ") + e.what());
  }
}

void append_checkpoint(const std::filesystem::path& file, const Checkpoint& c) {
  std::string existing;
  if (std::filesystem::exists(file)) {
    std::ifstream in(file, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    existing = ss.str();
  }
  auto tmp = file;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint " + tmp.string());
    out << existing << checkpoint_to_json(c) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, file);
}

std::optional<Checkpoint> last_checkpoint(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  if (last.empty()) return std::nullopt;
  return checkpoint_from_json(last);
}

Result run_space(const SearchSpace& s, const Options& o) {
  const auto bundle = singer_bundle(s.tower);
  const ResidueTable table(s, bundle);
  const auto shards = shard_plan(s, table, o.shards);
  if (o.checkpoint_dir) std::filesystem::create_directories(*o.checkpoint_dir);

  std::vector<ShardRun> runs(shards.size());
  std::exception_ptr error;
  std::mutex error_mu;
#pragma omp parallel for schedule(dynamic, 1) if (o.parallel && shards.size() > 1)
  for (std::size_t i = 0; i < shards.size(); ++i) {
    try {
      runs[i] = dispatch_shard(s, table, shards[i], o);
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  Result r;
  r.kind = s.kind;
  r.tower = s.tower;
  r.candidates = s.candidates();
  for (const auto& run : runs) {
    r.finished = r.finished && run.finished;
    for (auto pos : run.hits) r.found.push_back(s.subset_of(gray(pos)));
  }
  std::sort(r.found.begin(), r.found.end());
  r.found.erase(std::unique(r.found.begin(), r.found.end()), r.found.end());

  if (o.post_verify) {
    const auto F = bundle->field;
    for (const auto& X : r.found) {
      auto sc = build_scheme(s.tower, X, F, Provenance::search);
      if (!satisfies_additive_equation(sc))
        throw InconsistencyError("search hit fails the additive scheme equation");
      ++r.post_verified;
    }
  }

  r.complete_for_field = s.tower.q() == 3;
  if (s.kind == SpaceKind::galois_orbits) {
    r.note = r.complete_for_field
                 ? "complete: every Galois-invariant scheme over F_3 is D(X) for a p-invariant X"
                 : "incomplete: Galois-invariant schemes need not be projective half-point sets when q > 3; only D(X) "
                   "candidates were searched";
  } else {
    r.note = r.complete_for_field ? "complete: every scheme over F_3 with odd l is D(X)"
                                  : "incomplete: only D(X) candidates were searched";
  }
  if (!r.finished) r.note += "; interrupted before the end of the space";
  return r;
}

Result search_all_X(const Tower& t, const Options& o, const Budget& b) { return run_space(all_x_space(t, b), o); }

Result search_galois_invariant(const Tower& t, const Options& o, const Budget& b) {
  return run_space(galois_space(t, b), o);
}

std::vector<Subset> reference_sweep(const SearchSpace& s) {
  const auto bundle = singer_bundle(s.tower);
  std::vector<Subset> out;
  for (std::uint64_t mask = 0; mask < s.candidates(); ++mask) {
    auto X = s.subset_of(mask);
    if (weighing_divisible(*bundle, X)) out.push_back(std::move(X));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CyclotomicHit> search_cyclotomic_unions(int p, int m, int e, const Budget& b) {
  if (!nt::is_prime(p) || p == 2) throw PreconditionError("search_cyclotomic_unions: p must be an odd prime");
  if (m < 1) throw PreconditionError("search_cyclotomic_unions: m must be >= 1");
  const Tower t{p, 1, m};
  const std::int64_t n = t.n();
  if (e < 2 || e % 2 != 0 || n % e != 0)
    throw PreconditionError("search_cyclotomic_unions: e must be even and divide p^m - 1");
  if (e > b.max_cyclotomic_e || e > 62)
    throw BudgetExceeded("search_cyclotomic_unions: 2^" + std::to_string(e) + " candidates exceed budget");
  const auto F = cached_field(p, m);
  const std::uint64_t total = 1ULL << e;
  std::vector<std::vector<CyclotomicHit>> local(static_cast<std::size_t>(omp_get_max_threads()));
  std::exception_ptr error;
  std::mutex error_mu;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    // The augmentation of the scheme equation forces |D| = (p^m - 1)/2, so
    // unions of any other number of classes fail it without expansion.
    if (std::popcount(mask) != e / 2) continue;
    try {
      Subset D;
      for (std::int64_t i = 0; i < n; ++i)
        if ((mask >> (i % e)) & 1ULL) D.push_back(i);
      auto sc = scheme_from_set(t, std::move(D), F, Provenance::search);
      if (satisfies_additive_equation(sc, kernels::ConvolutionPolicy{20000, false})) {
        sc.verified_by.insert(Route::additive_expansion);
        sc.label = "cyclotomic-union";
        CyclotomicHit hit;
        for (int j = 0; j < e; ++j)
          if ((mask >> j) & 1ULL) hit.classes.push_back(j);
        hit.scheme = std::move(sc);
        local[omp_get_thread_num()].push_back(std::move(hit));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  std::vector<CyclotomicHit> out;
  for (auto& v : local)
    for (auto& h : v) out.push_back(std::move(h));
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.classes < b.classes; });
  return out;
}

}  // namespace ptgs::search
