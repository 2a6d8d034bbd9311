#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ptgs::graph6 {

using BitRows = std::vector<std::vector<std::uint64_t>>;

/// Encode a simple undirected graph given as symmetric adjacency bit rows.
/// No trailing newline and no ">>graph6<<" header.
std::string encode(std::int64_t n, const BitRows& rows);

struct Decoded {
  std::int64_t n = 0;
  BitRows rows;
};

/// Inverse of encode. Throws PreconditionError on malformed input.
Decoded decode(const std::string& s);

}  // namespace ptgs::graph6
