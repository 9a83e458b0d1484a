#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"
#include "graph.hpp"

namespace gromov {

// (level, position) of a ringed-tree vertex; level 0 is the root and
// positions on level l run over [0, 2^l). Vertex ids are heap-ordered:
// id = 2^level - 1 + pos.
struct TreeAddress {
  unsigned level = 0;
  std::uint64_t pos = 0;

  friend bool operator==(const TreeAddress&, const TreeAddress&) = default;
};

inline std::uint64_t level_width(unsigned level) { return std::uint64_t{1} << level; }

inline bool valid_address(TreeAddress a, unsigned k) {
  return a.level < k && a.level < 63 && a.pos < level_width(a.level);
}

inline Vertex vertex_id(TreeAddress a) {
  return static_cast<Vertex>(level_width(a.level) - 1 + a.pos);
}

inline TreeAddress address_of(Vertex id) {
  const auto x = std::uint64_t{id} + 1;
  const auto level = static_cast<unsigned>(std::bit_width(x) - 1);
  return {level, x - level_width(level)};
}

inline TreeAddress parent(TreeAddress a) { return {a.level - 1, a.pos / 2}; }

inline std::uint64_t ring_distance(unsigned level, std::uint64_t p, std::uint64_t q) {
  if (level >= 63) throw InputError("level too large");
  const auto width = level_width(level);
  if (p >= width || q >= width)
    throw InputError("ring position out of range for level " + std::to_string(level));
  const auto diff = p > q ? p - q : q - p;
  return std::min(diff, width - diff);
}

inline std::uint64_t ring_distance(TreeAddress u, TreeAddress v) {
  if (u.level != v.level) throw InputError("ring distance needs vertices on the same level");
  return ring_distance(u.level, u.pos, v.pos);
}

// Height of the lowest common ancestor of two same-level vertices.
inline unsigned lca_height(TreeAddress u, TreeAddress v) {
  if (u.level != v.level) throw InputError("lca_height needs vertices on the same level");
  if (u.pos >= level_width(u.level) || v.pos >= level_width(v.level))
    throw InputError("position out of range");
  return static_cast<unsigned>(std::bit_width(u.pos ^ v.pos));
}

inline std::size_t ringed_tree_size(unsigned k) { return (std::size_t{1} << k) - 1; }

// Tree edges parent-child plus, on every level i >= 1, ring edges
// p -- (p+1) mod 2^i. The 2-vertex ring on level 1 contributes one edge.
inline Graph ringed_tree_graph(unsigned k, bool with_rings = true) {
  if (k == 0) throw InputError("ringed tree needs k >= 1");
  if (k > 31) throw InputError("ringed tree k must be <= 31");
  GraphBuilder b(ringed_tree_size(k));
  for (unsigned level = 1; level < k; ++level) {
    const auto width = level_width(level);
    for (std::uint64_t p = 0; p < width; ++p) {
      const Vertex v = vertex_id({level, p});
      b.add_edge(v, vertex_id(parent({level, p})));
      if (with_rings) b.add_edge(v, vertex_id({level, (p + 1) % width}));
    }
  }
  return std::move(b).build();
}

struct RingedTree {
  unsigned k = 0;
  Graph graph;
  // addresses[id] is the (level, pos) of vertex id.
  std::vector<TreeAddress> addresses;
};

inline RingedTree gen_ringed_tree(unsigned k) {
  RingedTree rt;
  rt.k = k;
  rt.graph = ringed_tree_graph(k);
  rt.addresses.reserve(rt.graph.n());
  for (Vertex v = 0; v < rt.graph.n(); ++v) rt.addresses.push_back(address_of(v));
  return rt;
}

}  // namespace gromov
