#include "ptgs/graph6.hpp"

#include "ptgs/error.hpp"

namespace ptgs::graph6 {

namespace {

void put_size(std::string& out, std::int64_t n) {
  if (n < 0 || n > 68719476735LL) throw PreconditionError("graph6: vertex count out of range");
  if (n <= 62) {
    out.push_back(static_cast<char>(n + 63));
    return;
  }
  int groups = 3;
  if (n > 258047) {
    out.push_back(126);
    groups = 6;
  }
  out.push_back(126);
  for (int g = groups - 1; g >= 0; --g) out.push_back(static_cast<char>(((n >> (6 * g)) & 63) + 63));
}

bool bit(const BitRows& rows, std::int64_t r, std::int64_t c) { return (rows[r][c >> 6] >> (c & 63)) & 1ULL; }

}  // namespace

std::string encode(std::int64_t n, const BitRows& rows) {
  if (static_cast<std::int64_t>(rows.size()) != n) throw PreconditionError("graph6: row count mismatch");
  std::string out;
  put_size(out, n);
  int acc = 0, filled = 0;
  for (std::int64_t j = 1; j < n; ++j) {
    for (std::int64_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (bit(rows, i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

Decoded decode(const std::string& raw) {
  std::string s = raw;
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  if (s.rfind(">>graph6<<", 0) == 0) s = s.substr(10);
  for (char ch : s)
    if (ch < 63 || ch > 126) throw PreconditionError("graph6: byte out of range");
  std::size_t pos = 0;
  auto take = [&](int groups) {
    std::int64_t v = 0;
    for (int g = 0; g < groups; ++g) {
      if (pos >= s.size()) throw PreconditionError("graph6: truncated size field");
      v = (v << 6) | (s[pos++] - 63);
    }
    return v;
  };
  Decoded d;
  if (s.empty()) throw PreconditionError("graph6: empty input");
  if (s[0] != 126) {
    d.n = take(1);
  } else if (s.size() > 1 && s[1] == 126) {
    pos = 2;
    d.n = take(6);
  } else {
    pos = 1;
    d.n = take(3);
  }
  const std::int64_t bits = d.n * (d.n - 1) / 2;
  if (static_cast<std::int64_t>(s.size() - pos) != (bits + 5) / 6) throw PreconditionError("graph6: wrong body length");
  const std::size_t words = static_cast<std::size_t>((d.n + 63) / 64);
  d.rows.assign(static_cast<std::size_t>(d.n), std::vector<std::uint64_t>(words, 0));
  std::int64_t k = 0;
  for (std::int64_t j = 1; j < d.n; ++j) {
    for (std::int64_t i = 0; i < j; ++i, ++k) {
      const int byte = s[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) {
        d.rows[i][j >> 6] |= 1ULL << (j & 63);
        d.rows[j][i >> 6] |= 1ULL << (i & 63);
      }
    }
  }
  if (bits % 6 != 0) {
    const int last = s.back() - 63;
    if (last & ((1 << (6 - bits % 6)) - 1)) throw PreconditionError("graph6: nonzero padding");
  }
  return d;
}

}  // namespace ptgs::graph6
