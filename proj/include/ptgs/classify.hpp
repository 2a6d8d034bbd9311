#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptgs/canon.hpp"
#include "ptgs/scheme.hpp"

namespace ptgs {

using BitRows = std::vector<std::vector<std::uint64_t>>;

/// Cayley graph Cay(F, D) when |F| = 1 mod 4, otherwise the symmetric design
/// with blocks D + g. Vertex and point labels are polynomial-form integers;
/// block g is D + g.
struct Configuration {
  enum class Kind { srg_graph, hadamard_design };
  Kind kind = Kind::srg_graph;
  std::int64_t v = 0;
  int p = 3;
  BitRows matrix;  // adjacency, or incidence with rows = points, columns = blocks
  // srg: (v, k, lambda, mu); design: (v, k, lambda, 0)
  std::int64_t k = 0, lambda = 0, mu = 0;

  bool entry(std::int64_t r, std::int64_t c) const { return (matrix[r][c >> 6] >> (c & 63)) & 1ULL; }
};

Configuration make_configuration(const SchemeRecord& s);

/// Row r of the incidence or adjacency matrix as a 0/1 list (for export).
std::vector<std::vector<std::int64_t>> design_blocks(const Configuration& c);

/// Cheap isomorphism invariants. Distinct fingerprints certify
/// non-isomorphism; equal ones certify nothing.
struct Fingerprint {
  std::int64_t p_rank = 0;
  /// Graphs: {number of 4-cliques}. Designs: sorted (size, count) pairs of
  /// pairwise block intersections, flattened.
  std::vector<std::int64_t> global;
  /// Graphs: sorted per-vertex 4-clique counts. Designs: sorted per-block
  /// histograms of triple-block intersection sizes, flattened (empty above
  /// the configured size).
  std::vector<std::int64_t> local;

  bool operator==(const Fingerprint&) const = default;
  std::string digest() const;
};

Fingerprint fingerprint(const Configuration& c, std::int64_t design_local_limit = 512);

/// Rank of a 0/1 matrix over Z_p.
std::int64_t rank_mod_p(const BitRows& m, std::int64_t cols, int p);

/// Graph used for automorphism and isomorphism search: the Cayley graph
/// itself, or the point-block incidence graph with two colour classes.
ir::ColoredGraph to_colored_graph(const Configuration& c);

struct AutOrder {
  std::uint64_t order = 0;
  std::uint64_t nodes = 0;
};

/// Exact |Aut| via individualization-refinement; nullopt when the node budget
/// runs out. For designs this is the point-permutation group order.
std::optional<AutOrder> aut_order(const Configuration& c, std::uint64_t budget = 50'000'000);

/// Configuration isomorphism. Throws PreconditionError for kind or parameter
/// mismatch and BudgetExceeded when the search budget runs out.
bool iso_test(const Configuration& a, const Configuration& b, std::uint64_t budget = 50'000'000);

/// Relabel the points (and for designs, blocks by the same map) of c.
Configuration permute_configuration(const Configuration& c, const std::vector<std::int64_t>& perm);

/// Bit string over exponents 0..n-1, lexicographically least over scalings
/// x -> g^s x and Frobenius maps x -> x^{p^k}. '0' < '1', bit 0 first.
std::string semilinear_canonical(const SchemeRecord& s);
std::string semilinear_canonical(const Subset& D, int p, std::int64_t n);

/// Start index of the lexicographically least rotation.
std::size_t least_rotation(const std::string& s);

/// 64-bit FNV-1a of a string, hex encoded.
std::string short_hash(const std::string& s);

}  // namespace ptgs
