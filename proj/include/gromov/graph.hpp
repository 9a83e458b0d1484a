#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace gromov {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

class GraphBuilder;

// Immutable simple undirected graph in compressed adjacency form. Neighbor
// lists are sorted and duplicate-free; there are no self-loops.
class Graph {
 public:
  Graph() = default;

  std::size_t n() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex u) const {
    return {adjacency_.data() + offsets_[u], adjacency_.data() + offsets_[u + 1]};
  }
  std::size_t degree(Vertex u) const { return offsets_[u + 1] - offsets_[u]; }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= n() || v >= n()) return false;
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  // All edges as (u, v) with u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count());
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  friend class GraphBuilder;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

// Accumulates undirected edges; self-loops are dropped and parallel edges
// collapse when the graph is built.
class GraphBuilder {
 public:
  explicit GraphBuilder(std::size_t n) : n_(n) {
    if (n > 0xFFFFFFFEu) throw InputError("vertex count exceeds 32-bit id space");
  }

  std::size_t n() const noexcept { return n_; }

  void add_edge(Vertex u, Vertex v) {
    if (u >= n_ || v >= n_)
      throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                       ") out of range for n=" + std::to_string(n_));
    if (u == v) return;
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
  }

  void reserve(std::size_t m) { edges_.reserve(m); }

  Graph build() && {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    Graph g;
    g.offsets_.assign(n_ + 1, 0);
    for (const auto& [u, v] : edges_) {
      ++g.offsets_[u + 1];
      ++g.offsets_[v + 1];
    }
    for (std::size_t i = 0; i < n_; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.adjacency_.resize(g.offsets_[n_]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted by (u, v): smaller neighbors first, then larger ones,
    // each pass in ascending order, leaves every list sorted.
    for (const auto& [u, v] : edges_) g.adjacency_[cursor[v]++] = u;
    for (const auto& [u, v] : edges_) g.adjacency_[cursor[u]++] = v;
    edges_.clear();
    return g;
  }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
};

inline Graph graph_from_edges(std::size_t n, std::span<const Edge> edges) {
  GraphBuilder b(n);
  b.reserve(edges.size());
  for (const auto& [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

// Full audit of the adjacency invariants. Returns an empty string when the
// graph is well-formed, otherwise a description of the first violation.
inline std::string audit(const Graph& g) {
  std::size_t total = 0;
  for (Vertex u = 0; u < g.n(); ++u) {
    const auto nb = g.neighbors(u);
    total += nb.size();
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (nb[i] == u) return "self-loop at " + std::to_string(u);
      if (nb[i] >= g.n()) return "neighbor out of range at " + std::to_string(u);
      if (i > 0 && nb[i - 1] >= nb[i]) return "unsorted or duplicate neighbors at " + std::to_string(u);
      if (!g.has_edge(nb[i], u))
        return "asymmetric edge " + std::to_string(u) + "->" + std::to_string(nb[i]);
    }
  }
  if (total != 2 * g.edge_count()) return "edge count mismatch";
  return {};
}

}  // namespace gromov
