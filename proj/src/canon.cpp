#include "ptgs/canon.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "ptgs/error.hpp"

namespace ptgs::ir {

ColoredGraph make_colored_graph(int n, const std::vector<std::vector<std::uint64_t>>& rows, std::vector<int> colors) {
  ColoredGraph g;
  g.n = n;
  g.rows = rows;
  g.color = colors.empty() ? std::vector<int>(n, 0) : std::move(colors);
  if (static_cast<int>(g.color.size()) != n || static_cast<int>(rows.size()) != n) {
    throw PreconditionError("colored graph: size mismatch");
  }
  g.adj.assign(n, {});
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (g.has_edge(u, v)) {
        if (u == v) throw PreconditionError("colored graph: loops are not allowed");
        if (!((rows[v][u >> 6] >> (u & 63)) & 1ULL)) throw PreconditionError("colored graph: adjacency not symmetric");
        g.adj[u].push_back(v);
      }
    }
  }
  return g;
}

bool is_automorphism(const ColoredGraph& g, const Permutation& p) {
  if (static_cast<int>(p.size()) != g.n) return false;
  for (int u = 0; u < g.n; ++u) {
    if (g.color[u] != g.color[p[u]]) return false;
    if (g.adj[u].size() != g.adj[p[u]].size()) return false;
    for (int x : g.adj[u]) {
      if (!g.has_edge(p[u], p[x])) return false;
    }
  }
  return true;
}

namespace {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL + h;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Ordered partition: cells are contiguous ranges of elems identified by their
// start index.
struct Partition {
  std::vector<int> elems, pos, cell, end;
  int ncells = 0;

  int size() const { return static_cast<int>(elems.size()); }
  bool discrete() const { return ncells == size(); }

  int target_cell() const {
    int best = -1, best_size = 0;
    for (int s = 0; s < size(); s = end[s]) {
      int sz = end[s] - s;
      if (sz > 1 && (best < 0 || sz < best_size)) {
        best = s;
        best_size = sz;
      }
    }
    return best;
  }
};

class Refiner {
 public:
  explicit Refiner(const ColoredGraph& g) : g_(g), cnt_(g.n, 0), inq_(g.n, 0), mark_(g.n, 0) {}

  Partition initial(std::uint64_t& trace) {
    Partition P;
    const int n = g_.n;
    P.elems.resize(n);
    std::iota(P.elems.begin(), P.elems.end(), 0);
    std::stable_sort(P.elems.begin(), P.elems.end(), [&](int a, int b) { return g_.color[a] < g_.color[b]; });
    P.pos.resize(n);
    P.cell.resize(n);
    P.end.assign(n, 0);
    std::vector<int> starts;
    trace = mix(0, static_cast<std::uint64_t>(n));
    for (int i = 0; i < n;) {
      int j = i;
      while (j < n && g_.color[P.elems[j]] == g_.color[P.elems[i]]) ++j;
      for (int t = i; t < j; ++t) P.cell[P.elems[t]] = i;
      P.end[i] = j;
      ++P.ncells;
      starts.push_back(i);
      trace = mix(mix(trace, static_cast<std::uint64_t>(g_.color[P.elems[i]])), static_cast<std::uint64_t>(j - i));
      i = j;
    }
    for (int i = 0; i < n; ++i) P.pos[P.elems[i]] = i;
    trace = refine(P, starts, trace);
    return P;
  }

  std::uint64_t individualize(Partition& P, int v, std::uint64_t trace) {
    const int c = P.cell[v];
    const int ce = P.end[c];
    const int pv = P.pos[v];
    std::swap(P.elems[c], P.elems[pv]);
    P.pos[P.elems[pv]] = pv;
    P.pos[v] = c;
    P.end[c] = c + 1;
    P.end[c + 1] = ce;
    for (int t = c + 1; t < ce; ++t) P.cell[P.elems[t]] = c + 1;
    ++P.ncells;
    trace = mix(mix(trace, static_cast<std::uint64_t>(c)), static_cast<std::uint64_t>(ce - c));
    return refine(P, {c}, trace);
  }

 private:
  std::uint64_t refine(Partition& P, const std::vector<int>& splitters, std::uint64_t h) {
    std::deque<int> queue;
    for (int s : splitters) {
      if (!inq_[s]) {
        inq_[s] = 1;
        queue.push_back(s);
      }
    }
    std::vector<int> touched, cells;
    while (!queue.empty()) {
      if (P.discrete()) {
        for (int s : queue) inq_[s] = 0;
        break;
      }
      const int s = queue.front();
      queue.pop_front();
      inq_[s] = 0;
      const int se = P.end[s];
      touched.clear();
      for (int i = s; i < se; ++i) {
        for (int x : g_.adj[P.elems[i]]) {
          if (cnt_[x]++ == 0) touched.push_back(x);
        }
      }
      cells.clear();
      for (int x : touched) {
        int c = P.cell[x];
        if (!mark_[c]) {
          mark_[c] = 1;
          cells.push_back(c);
        }
      }
      std::sort(cells.begin(), cells.end());
      for (int c : cells) {
        mark_[c] = 0;
        const int ce = P.end[c];
        if (ce - c == 1) {
          h = mix(mix(h, static_cast<std::uint64_t>(c)), static_cast<std::uint64_t>(cnt_[P.elems[c]]));
          continue;
        }
        const int first = cnt_[P.elems[c]];
        bool uniform = true;
        for (int i = c + 1; i < ce && uniform; ++i) uniform = cnt_[P.elems[i]] == first;
        if (uniform) {
          h = mix(mix(h, static_cast<std::uint64_t>(c)), static_cast<std::uint64_t>(first));
          continue;
        }
        std::sort(P.elems.begin() + c, P.elems.begin() + ce,
                  [&](int a, int b) { return cnt_[a] != cnt_[b] ? cnt_[a] < cnt_[b] : a < b; });
        for (int i = c; i < ce; ++i) P.pos[P.elems[i]] = i;
        for (int i = c; i < ce;) {
          int j = i;
          const int k = cnt_[P.elems[i]];
          while (j < ce && cnt_[P.elems[j]] == k) ++j;
          P.end[i] = j;
          for (int t = i; t < j; ++t) P.cell[P.elems[t]] = i;
          h = mix(mix(mix(h, static_cast<std::uint64_t>(i)), static_cast<std::uint64_t>(k)),
                  static_cast<std::uint64_t>(j - i));
          if (i != c) ++P.ncells;
          if (!inq_[i]) {
            inq_[i] = 1;
            queue.push_back(i);
          }
          i = j;
        }
      }
      for (int x : touched) cnt_[x] = 0;
    }
    return mix(h, static_cast<std::uint64_t>(P.ncells));
  }

  const ColoredGraph& g_;
  std::vector<int> cnt_;
  std::vector<char> inq_;
  std::vector<char> mark_;
};

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

void add_orbits(UnionFind& uf, const Permutation& p) {
  for (int i = 0; i < static_cast<int>(p.size()); ++i) uf.unite(i, p[i]);
}

struct Level {
  Partition P;
  std::uint64_t trace = 0;
  int target = -1;  // start of target cell, -1 at the leaf
  int chosen = -1;
};

// First path of the search tree: always individualize the first vertex of the
// target cell.
std::vector<Level> first_path(const ColoredGraph& g, Refiner& R, std::uint64_t& nodes, std::uint64_t budget) {
  std::vector<Level> path;
  Level lv;
  lv.P = R.initial(lv.trace);
  ++nodes;
  while (true) {
    lv.target = lv.P.target_cell();
    if (lv.target < 0) {
      path.push_back(lv);
      break;
    }
    lv.chosen = lv.P.elems[lv.target];
    path.push_back(lv);
    Level next;
    next.P = lv.P;
    next.trace = R.individualize(next.P, lv.chosen, lv.trace);
    if (++nodes > budget) throw BudgetExceeded("individualization-refinement node budget exhausted");
    lv = std::move(next);
  }
  (void)g;
  return path;
}

// Depth-first search for a leaf whose labeling, aligned with the reference
// leaf, passes `accept`. Nodes whose trace differs from the reference path at
// the same depth are pruned; children are pruned by orbits of the known
// automorphisms that fix the current prefix.
template <class Accept>
bool search_leaf(const ColoredGraph& g, Refiner& R, const std::vector<Level>& ref, const Partition& P,
                 std::uint64_t trace, std::size_t depth, std::vector<int>& prefix,
                 const std::vector<Permutation>& gens, std::uint64_t& nodes, std::uint64_t budget,
                 const Accept& accept) {
  if (depth >= ref.size() || trace != ref[depth].trace || P.ncells != ref[depth].P.ncells) return false;
  if (P.discrete()) return accept(P);
  const int t = P.target_cell();
  const Level& rl = ref[depth];
  if (t < 0 || rl.target < 0 || P.end[t] - t != rl.P.end[rl.target] - rl.target) return false;

  std::vector<const Permutation*> stab;
  for (const auto& p : gens) {
    bool fixes = true;
    for (int v : prefix) {
      if (p[v] != v) {
        fixes = false;
        break;
      }
    }
    if (fixes) stab.push_back(&p);
  }
  UnionFind uf(g.n);
  for (auto* p : stab) add_orbits(uf, *p);
  std::vector<int> tried;
  for (int i = t; i < P.end[t]; ++i) {
    const int u = P.elems[i];
    bool redundant = false;
    for (int w : tried) {
      if (uf.find(w) == uf.find(u)) {
        redundant = true;
        break;
      }
    }
    if (redundant) continue;
    tried.push_back(u);
    Partition child = P;
    std::uint64_t ct = R.individualize(child, u, trace);
    if (++nodes > budget) throw BudgetExceeded("individualization-refinement node budget exhausted");
    prefix.push_back(u);
    bool found = search_leaf(g, R, ref, child, ct, depth + 1, prefix, gens, nodes, budget, accept);
    prefix.pop_back();
    if (found) return true;
  }
  return false;
}

Permutation align(const Partition& from, const Partition& to) {
  Permutation p(from.size());
  for (int i = 0; i < from.size(); ++i) p[from.elems[i]] = to.elems[i];
  return p;
}

}  // namespace

AutResult automorphism_group(const ColoredGraph& g, std::uint64_t node_budget) {
  AutResult res;
  Refiner R(g);
  auto path = first_path(g, R, res.nodes, node_budget);
  const Partition& leaf0 = path.back().P;
  for (const auto& lv : path) {
    if (lv.chosen >= 0) res.base.push_back(lv.chosen);
  }
  res.orbit_sizes.assign(res.base.size(), 1);

  for (int k = static_cast<int>(path.size()) - 2; k >= 0; --k) {
    const Level& lv = path[k];
    const int base = lv.chosen;
    std::vector<int> prefix(res.base.begin(), res.base.begin() + k);
    std::vector<int> failed;
    for (int i = lv.target; i < lv.P.end[lv.target]; ++i) {
      const int w = lv.P.elems[i];
      if (w == base) continue;
      UnionFind uf(g.n);
      for (const auto& p : res.generators) add_orbits(uf, p);
      if (uf.find(w) == uf.find(base)) continue;
      bool known_bad = false;
      for (int f : failed) {
        if (uf.find(f) == uf.find(w)) {
          known_bad = true;
          break;
        }
      }
      if (known_bad) continue;

      Partition child = lv.P;
      std::uint64_t ct = R.individualize(child, w, lv.trace);
      if (++res.nodes > node_budget) throw BudgetExceeded("individualization-refinement node budget exhausted");
      Permutation found;
      auto accept = [&](const Partition& leaf) {
        Permutation p = align(leaf0, leaf);
        if (!is_automorphism(g, p)) return false;
        found = std::move(p);
        return true;
      };
      prefix.push_back(w);
      bool ok = search_leaf(g, R, path, child, ct, static_cast<std::size_t>(k) + 1, prefix, res.generators, res.nodes,
                            node_budget, accept);
      prefix.pop_back();
      if (ok) {
        res.generators.push_back(std::move(found));
      } else {
        failed.push_back(w);
      }
    }
    UnionFind uf(g.n);
    for (const auto& p : res.generators) add_orbits(uf, p);
    std::uint64_t orbit = 0;
    for (int i = lv.target; i < lv.P.end[lv.target]; ++i) orbit += uf.find(lv.P.elems[i]) == uf.find(base);
    res.orbit_sizes[k] = orbit;
  }
  for (auto o : res.orbit_sizes) {
    if (__builtin_mul_overflow(res.order, o, &res.order)) throw OverflowError("automorphism group order exceeds 64 bits");
  }
  return res;
}

std::optional<Permutation> find_isomorphism(const ColoredGraph& a, const ColoredGraph& b, std::uint64_t node_budget,
                                            const AutResult* aut_b) {
  if (a.n != b.n) return std::nullopt;
  {
    auto ca = a.color, cb = b.color;
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    if (ca != cb) return std::nullopt;
  }
  std::uint64_t nodes = 0;
  Refiner Ra(a);
  auto path = first_path(a, Ra, nodes, node_budget);
  const Partition& leaf_a = path.back().P;

  // Automorphisms of b prune equivalent branches of b's tree.
  std::optional<AutResult> own;
  if (!aut_b) {
    own = automorphism_group(b, node_budget);
    nodes += own->nodes;
    aut_b = &*own;
  }

  Refiner Rb(b);
  std::uint64_t tb = 0;
  Partition root_b = Rb.initial(tb);
  std::optional<Permutation> result;
  auto accept = [&](const Partition& leaf) {
    Permutation p = align(leaf_a, leaf);
    for (int u = 0; u < a.n; ++u) {
      if (a.color[u] != b.color[p[u]] || a.adj[u].size() != b.adj[p[u]].size()) return false;
      for (int x : a.adj[u]) {
        if (!b.has_edge(p[u], p[x])) return false;
      }
    }
    result = std::move(p);
    return true;
  };
  std::vector<int> prefix;
  search_leaf(b, Rb, path, root_b, tb, 0, prefix, aut_b->generators, nodes, node_budget, accept);
  return result;
}

}  // namespace ptgs::ir
