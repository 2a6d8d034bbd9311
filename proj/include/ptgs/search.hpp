#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ptgs/scheme.hpp"
#include "ptgs/singer.hpp"

namespace ptgs::search {

inline constexpr const char* kEngineVersion = "gray-residue/1";

/// Default limits; each can be overridden by an environment variable
/// (PTGS_MAX_ALLX_V, PTGS_MAX_ORBITS, PTGS_MAX_CYCLOTOMIC_E).
struct Budget {
  std::int64_t max_all_x_v = 16;
  int max_orbits = 26;
  int max_cyclotomic_e = 24;

  static Budget from_env();
};

enum class SpaceKind { all_X, galois_orbits, cyclotomic_unions };
std::string to_string(SpaceKind k);

/// Candidates are unions of orbits; candidate count is 2^orbits.size().
struct SearchSpace {
  SpaceKind kind = SpaceKind::galois_orbits;
  Tower tower;
  std::vector<Subset> orbits;

  std::uint64_t candidates() const { return 1ULL << orbits.size(); }
  Subset subset_of(std::uint64_t mask) const;
};

SearchSpace all_x_space(const Tower& t, const Budget& b = Budget::from_env());
/// Orbits of i -> p i on Z_v, ordered by least element.
SearchSpace galois_space(const Tower& t, const Budget& b = Budget::from_env());

/// Gray-code position k visits orbit mask k ^ (k >> 1).
inline std::uint64_t gray(std::uint64_t k) { return k ^ (k >> 1); }

struct Shard {
  int id = 0;
  std::uint64_t begin = 0;  // Gray positions [begin, end)
  std::uint64_t end = 0;
  std::vector<std::uint32_t> residue;  // X^{(-1)} W mod q^{(l-1)/2} at begin
};

/// Residue arithmetic for a space: modulus q^{(l-1)/2} and per-orbit
/// contributions C_o = o^{(-1)} W mod q^{(l-1)/2}.
class ResidueTable {
 public:
  explicit ResidueTable(const SearchSpace& s, std::shared_ptr<const SingerBundle> bundle = nullptr);

  std::uint32_t modulus() const { return modulus_; }
  std::int64_t v() const { return v_; }
  const std::vector<std::uint32_t>& contribution(std::size_t orbit) const { return contrib_[orbit]; }
  /// Residue of the union of the orbits in mask, computed from scratch.
  std::vector<std::uint32_t> residue_of(std::uint64_t mask) const;

 private:
  std::uint32_t modulus_ = 1;
  std::int64_t v_ = 0;
  std::vector<std::vector<std::uint32_t>> contrib_;
};

/// Contiguous blocks with boundaries at k * 2^orbits / n_shards.
std::vector<Shard> shard_plan(const SearchSpace& s, int n_shards);
std::vector<Shard> shard_plan(const SearchSpace& s, const ResidueTable& table, int n_shards);

struct Checkpoint {
  int shard = 0;
  std::uint64_t gray_pos = 0;  // next position to examine
  std::vector<Subset> found;
  std::string engine = kEngineVersion;
  std::vector<std::uint32_t> residue;  // residue of gray(gray_pos)
  Tower tower;
  std::string kind;
};

std::string checkpoint_to_json(const Checkpoint& c);
Checkpoint checkpoint_from_json(const std::string& line);
/// Append one record to a JSON-lines file by writing a temporary copy and
/// renaming it over the original.
void append_checkpoint(const std::filesystem::path& file, const Checkpoint& c);
/// Last record of the file, or nullopt when the file is missing or empty.
std::optional<Checkpoint> last_checkpoint(const std::filesystem::path& file);

struct Options {
  int shards = 1;
  std::optional<std::filesystem::path> checkpoint_dir;
  std::uint64_t checkpoint_every = 1ULL << 22;
  /// Stop each shard after this many positions in this invocation (simulated
  /// interruption); the result is then marked incomplete.
  std::optional<std::uint64_t> step_limit;
  bool post_verify = true;
  bool parallel = true;
};

struct Result {
  SpaceKind kind = SpaceKind::galois_orbits;
  Tower tower;
  std::uint64_t candidates = 0;
  std::vector<Subset> found;  // sorted
  bool finished = true;       // all shards reached their end
  /// Whether the space covers every Galois-invariant scheme of the field.
  bool complete_for_field = false;
  std::string note;
  std::uint64_t post_verified = 0;
};

Result search_all_X(const Tower& t, const Options& o = {}, const Budget& b = Budget::from_env());
Result search_galois_invariant(const Tower& t, const Options& o = {}, const Budget& b = Budget::from_env());
/// Gray-code sweep over an arbitrary orbit space.
Result run_space(const SearchSpace& s, const Options& o = {});

/// Serial reference: every candidate checked from scratch with
/// weighing_divisible, no incremental state.
std::vector<Subset> reference_sweep(const SearchSpace& s);

struct CyclotomicHit {
  std::vector<int> classes;  // indices j of C_j in the union
  SchemeRecord scheme;
};

/// All unions of the classes C_j = {g^i : i = j mod e} satisfying the
/// scheme equation in F_{p^m}.
std::vector<CyclotomicHit> search_cyclotomic_unions(int p, int m, int e, const Budget& b = Budget::from_env());

}  // namespace ptgs::search
