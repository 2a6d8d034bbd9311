#include "ptgs/classify.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "ptgs/error.hpp"
#include "ptgs/numtheory.hpp"

namespace ptgs {

namespace {

BitRows empty_rows(std::int64_t r, std::int64_t c) {
  return BitRows(r, std::vector<std::uint64_t>((c + 63) / 64, 0));
}

inline void set_bit(BitRows& m, std::int64_t r, std::int64_t c) { m[r][c >> 6] |= 1ULL << (c & 63); }

inline std::int64_t and_count(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += __builtin_popcountll(a[i] & b[i]);
  return s;
}

inline std::int64_t and3_count(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
                               const std::vector<std::uint64_t>& c) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += __builtin_popcountll(a[i] & b[i] & c[i]);
  return s;
}

// Digit-wise x - y over Z_p for polynomial-form integers.
std::vector<std::int32_t> difference_table(const Field& F) {
  const std::int64_t q = F.order();
  const int p = F.p(), m = F.m();
  std::vector<std::int32_t> digits(q * m);
  for (std::int64_t x = 0; x < q; ++x) {
    std::int64_t t = x;
    for (int i = 0; i < m; ++i) {
      digits[x * m + i] = static_cast<std::int32_t>(t % p);
      t /= p;
    }
  }
  std::vector<std::int32_t> table(q * q);
  for (std::int64_t x = 0; x < q; ++x) {
    for (std::int64_t y = 0; y < q; ++y) {
      std::int64_t r = 0, scale = 1;
      for (int i = 0; i < m; ++i) {
        r += ((digits[x * m + i] - digits[y * m + i] + p) % p) * scale;
        scale *= p;
      }
      table[x * q + y] = static_cast<std::int32_t>(r);
    }
  }
  return table;
}

}  // namespace

Configuration make_configuration(const SchemeRecord& s) {
  const Field& F = *s.field;
  const std::int64_t q = F.order();
  Configuration c;
  c.v = q;
  c.p = F.p();
  std::vector<char> in_d(q, 0);
  for (auto i : s.D) in_d[F.antilog_table()[i]] = 1;
  auto diff = difference_table(F);
  c.matrix = empty_rows(q, q);
  for (std::int64_t x = 0; x < q; ++x) {
    for (std::int64_t y = 0; y < q; ++y) {
      if (in_d[diff[x * q + y]]) set_bit(c.matrix, x, y);
    }
  }
  if (q % 4 == 1) {
    if (negate_exponents(s.D, F.n()) != s.D) throw PreconditionError("configuration: D != -D, no Cayley graph");
    c.kind = Configuration::Kind::srg_graph;
    c.k = (q - 1) / 2;
    c.lambda = (q - 5) / 4;
    c.mu = (q - 1) / 4;
    for (std::int64_t x = 0; x < q; ++x) {
      if (and_count(c.matrix[x], c.matrix[x]) != c.k) throw InconsistencyError("configuration: graph is not regular");
      for (std::int64_t y = x + 1; y < q; ++y) {
        std::int64_t common = and_count(c.matrix[x], c.matrix[y]);
        if (common != (c.entry(x, y) ? c.lambda : c.mu)) {
          throw InconsistencyError("configuration: strongly regular parameters fail");
        }
      }
    }
  } else {
    c.kind = Configuration::Kind::hadamard_design;
    c.k = (q - 1) / 2;
    c.lambda = (q - 3) / 4;
    c.mu = 0;
    for (std::int64_t x = 0; x < q; ++x) {
      if (and_count(c.matrix[x], c.matrix[x]) != c.k) throw InconsistencyError("configuration: point replication fails");
      for (std::int64_t y = x + 1; y < q; ++y) {
        if (and_count(c.matrix[x], c.matrix[y]) != c.lambda) throw InconsistencyError("configuration: 2-design fails");
      }
    }
  }
  return c;
}

std::vector<std::vector<std::int64_t>> design_blocks(const Configuration& c) {
  std::vector<std::vector<std::int64_t>> blocks(c.v);
  for (std::int64_t x = 0; x < c.v; ++x) {
    for (std::int64_t g = 0; g < c.v; ++g) {
      if (c.entry(x, g)) blocks[g].push_back(x);
    }
  }
  return blocks;
}

std::int64_t rank_mod_p(const BitRows& m, std::int64_t cols, int p) {
  const std::int64_t rows = static_cast<std::int64_t>(m.size());
  std::vector<std::vector<std::int32_t>> a(rows, std::vector<std::int32_t>(cols, 0));
  for (std::int64_t r = 0; r < rows; ++r) {
    for (std::int64_t c = 0; c < cols; ++c) a[r][c] = (m[r][c >> 6] >> (c & 63)) & 1ULL;
  }
  std::vector<std::int32_t> inv(p, 0);
  for (int x = 1; x < p; ++x) inv[x] = static_cast<std::int32_t>(*nt::inverse_mod(x, p));
  std::int64_t rank = 0;
  for (std::int64_t col = 0; col < cols && rank < rows; ++col) {
    std::int64_t piv = -1;
    for (std::int64_t r = rank; r < rows; ++r) {
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(a[piv], a[rank]);
    const std::int32_t f = inv[a[rank][col]];
    for (std::int64_t c = col; c < cols; ++c) a[rank][c] = a[rank][c] * f % p;
    for (std::int64_t r = rank + 1; r < rows; ++r) {
      const std::int32_t t = a[r][col];
      if (t == 0) continue;
      auto& row = a[r];
      const auto& prow = a[rank];
      for (std::int64_t c = col; c < cols; ++c) row[c] = (row[c] + (p - t) * prow[c]) % p;
    }
    ++rank;
  }
  return rank;
}

namespace {

std::vector<std::int64_t> flatten_histogram(const std::map<std::int64_t, std::int64_t>& h) {
  std::vector<std::int64_t> out;
  for (auto [size, count] : h) {
    out.push_back(size);
    out.push_back(count);
  }
  return out;
}

}  // namespace

Fingerprint fingerprint(const Configuration& c, std::int64_t design_local_limit) {
  Fingerprint fp;
  const std::int64_t v = c.v;
  fp.p_rank = rank_mod_p(c.matrix, v, c.p);
  if (c.kind == Configuration::Kind::srg_graph) {
    std::vector<std::int64_t> per_vertex(v, 0);
    std::int64_t total = 0;
    const std::size_t words = c.matrix[0].size();
    std::vector<std::uint64_t> common(words), inner(words);
    auto above = [&](std::vector<std::uint64_t>& bits, std::int64_t x) {
      // Clear bits 0..x.
      for (std::int64_t w = 0; w < static_cast<std::int64_t>(words); ++w) {
        std::int64_t lo = w * 64;
        if (lo + 63 <= x) {
          bits[w] = 0;
        } else if (lo <= x) {
          bits[w] &= ~((2ULL << (x - lo)) - 1);
        }
      }
    };
    for (std::int64_t u = 0; u < v; ++u) {
      for (std::int64_t w = u + 1; w < v; ++w) {
        if (!c.entry(u, w)) continue;
        for (std::size_t i = 0; i < words; ++i) common[i] = c.matrix[u][i] & c.matrix[w][i];
        above(common, w);
        for (std::int64_t x = w + 1; x < v; ++x) {
          if (!((common[x >> 6] >> (x & 63)) & 1ULL)) continue;
          for (std::size_t i = 0; i < words; ++i) inner[i] = common[i] & c.matrix[x][i];
          above(inner, x);
          for (std::size_t i = 0; i < words; ++i) {
            std::uint64_t bits = inner[i];
            while (bits) {
              std::int64_t y = static_cast<std::int64_t>(i) * 64 + __builtin_ctzll(bits);
              bits &= bits - 1;
              ++total;
              ++per_vertex[u];
              ++per_vertex[w];
              ++per_vertex[x];
              ++per_vertex[y];
            }
          }
        }
      }
    }
    fp.global = {total};
    std::sort(per_vertex.begin(), per_vertex.end());
    fp.local = per_vertex;
    return fp;
  }

  // Designs: work with block rows.
  BitRows blocks = empty_rows(v, v);
  for (std::int64_t x = 0; x < v; ++x) {
    for (std::int64_t g = 0; g < v; ++g) {
      if (c.entry(x, g)) set_bit(blocks, g, x);
    }
  }
  std::map<std::int64_t, std::int64_t> pair_hist;
  for (std::int64_t i = 0; i < v; ++i) {
    for (std::int64_t j = i + 1; j < v; ++j) ++pair_hist[and_count(blocks[i], blocks[j])];
  }
  fp.global = flatten_histogram(pair_hist);
  if (v <= design_local_limit) {
    std::vector<std::vector<std::int64_t>> per_block(v);
    for (std::int64_t i = 0; i < v; ++i) {
      std::vector<std::int64_t> counts(static_cast<std::size_t>(v + 1), 0);
      for (std::int64_t j = 0; j < v; ++j) {
        if (j == i) continue;
        for (std::int64_t k = j + 1; k < v; ++k) {
          if (k == i) continue;
          ++counts[and3_count(blocks[i], blocks[j], blocks[k])];
        }
      }
      for (std::int64_t size = 0; size <= v; ++size) {
        if (counts[size] == 0) continue;
        per_block[i].push_back(size);
        per_block[i].push_back(counts[size]);
      }
    }
    std::sort(per_block.begin(), per_block.end());
    for (const auto& b : per_block) {
      fp.local.push_back(static_cast<std::int64_t>(b.size()));
      fp.local.insert(fp.local.end(), b.begin(), b.end());
    }
  }
  return fp;
}

std::string Fingerprint::digest() const {
  std::ostringstream os;
  os << p_rank << '|';
  for (auto x : global) os << x << ',';
  os << '|';
  for (auto x : local) os << x << ',';
  return short_hash(os.str());
}

ir::ColoredGraph to_colored_graph(const Configuration& c) {
  const std::int64_t v = c.v;
  if (c.kind == Configuration::Kind::srg_graph) return ir::make_colored_graph(static_cast<int>(v), c.matrix);
  BitRows rows = empty_rows(2 * v, 2 * v);
  for (std::int64_t x = 0; x < v; ++x) {
    for (std::int64_t g = 0; g < v; ++g) {
      if (c.entry(x, g)) {
        set_bit(rows, x, v + g);
        set_bit(rows, v + g, x);
      }
    }
  }
  std::vector<int> colors(2 * v, 0);
  for (std::int64_t g = 0; g < v; ++g) colors[v + g] = 1;
  return ir::make_colored_graph(static_cast<int>(2 * v), rows, colors);
}

std::optional<AutOrder> aut_order(const Configuration& c, std::uint64_t budget) {
  try {
    auto r = ir::automorphism_group(to_colored_graph(c), budget);
    return AutOrder{r.order, r.nodes};
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

bool iso_test(const Configuration& a, const Configuration& b, std::uint64_t budget) {
  if (a.kind != b.kind || a.v != b.v || a.k != b.k || a.lambda != b.lambda || a.mu != b.mu) {
    throw PreconditionError("iso_test: configurations differ in kind or parameters");
  }
  if (!(fingerprint(a) == fingerprint(b))) return false;
  return ir::find_isomorphism(to_colored_graph(a), to_colored_graph(b), budget).has_value();
}

Configuration permute_configuration(const Configuration& c, const std::vector<std::int64_t>& perm) {
  if (static_cast<std::int64_t>(perm.size()) != c.v) throw PreconditionError("permutation size mismatch");
  Configuration out = c;
  out.matrix = empty_rows(c.v, c.v);
  for (std::int64_t x = 0; x < c.v; ++x) {
    for (std::int64_t y = 0; y < c.v; ++y) {
      if (c.entry(x, y)) set_bit(out.matrix, perm[x], perm[y]);
    }
  }
  return out;
}

std::size_t least_rotation(const std::string& s) {
  // Two-pointer minimum-expression scan, O(n).
  const std::size_t n = s.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    const char a = s[(i + k) % n], b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j) % (n == 0 ? 1 : n);
}

std::string semilinear_canonical(const Subset& D, int p, std::int64_t n) {
  int m = 0;
  for (std::int64_t t = n + 1; t > 1; t /= p) ++m;
  std::string best;
  for (int k = 0; k < m; ++k) {
    std::string bits(static_cast<std::size_t>(n), '0');
    for (auto d : frobenius_exponents(D, p, k, n)) bits[static_cast<std::size_t>(d)] = '1';
    std::size_t r = least_rotation(bits);
    std::string rot = bits.substr(r) + bits.substr(0, r);
    if (best.empty() || rot < best) best = std::move(rot);
  }
  return best;
}

std::string semilinear_canonical(const SchemeRecord& s) {
  return semilinear_canonical(s.D, s.field->p(), s.field->n());
}

std::string short_hash(const std::string& s) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 15];
    h >>= 4;
  }
  return out;
}

}  // namespace ptgs
