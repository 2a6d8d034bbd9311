#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Individualization-refinement over vertex-colored simple graphs: exact
// automorphism group order and isomorphism search.
namespace ptgs::ir {

struct ColoredGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<int> color;
  std::vector<std::vector<std::uint64_t>> rows;  // adjacency bitsets

  bool has_edge(int u, int v) const { return (rows[u][v >> 6] >> (v & 63)) & 1ULL; }
};

/// Build from adjacency bit rows; colors default to 0.
ColoredGraph make_colored_graph(int n, const std::vector<std::vector<std::uint64_t>>& rows,
                                std::vector<int> colors = {});

using Permutation = std::vector<int>;

struct AutResult {
  std::uint64_t order = 1;
  std::vector<Permutation> generators;
  std::vector<std::uint64_t> orbit_sizes;  // along the first path, root first
  std::vector<int> base;                   // individualized vertices of the first path
  std::uint64_t nodes = 0;
};

/// Exact order of the color-preserving automorphism group. Throws
/// BudgetExceeded after node_budget search nodes.
AutResult automorphism_group(const ColoredGraph& g, std::uint64_t node_budget = 50'000'000);

/// A color-preserving isomorphism a -> b, or nullopt if none exists. Pass
/// aut_b (the result of automorphism_group(b)) to skip recomputing it.
std::optional<Permutation> find_isomorphism(const ColoredGraph& a, const ColoredGraph& b,
                                            std::uint64_t node_budget = 50'000'000,
                                            const AutResult* aut_b = nullptr);

bool is_automorphism(const ColoredGraph& g, const Permutation& p);

}  // namespace ptgs::ir
