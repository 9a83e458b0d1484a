#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"

namespace gromov {

inline constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

using Geodesic = std::vector<Vertex>;

namespace detail {

// BFS from `source` writing hop counts of type T into `out` (size n); cells
// not reached keep `unreached`. Returns the largest finite distance seen.
template <class T>
T bfs_into(const Graph& g, Vertex source, T* out, T unreached, std::vector<Vertex>& queue) {
  const std::size_t n = g.n();
  std::fill(out, out + n, unreached);
  queue.resize(n);
  std::size_t head = 0, tail = 0;
  out[source] = 0;
  queue[tail++] = source;
  T far = 0;
  while (head < tail) {
    const Vertex u = queue[head++];
    const T next = static_cast<T>(out[u] + 1);
    for (Vertex v : g.neighbors(u)) {
      if (out[v] == unreached) {
        out[v] = next;
        far = next;
        queue[tail++] = v;
      }
    }
  }
  return far;
}

}  // namespace detail

// Hop counts from `source`; unreachable vertices get kUnreachable.
inline std::vector<std::uint32_t> bfs_distances(const Graph& g, Vertex source) {
  if (source >= g.n())
    throw InputError("source " + std::to_string(source) + " out of range for n=" +
                     std::to_string(g.n()));
  std::vector<std::uint32_t> dist(g.n());
  std::vector<Vertex> queue;
  detail::bfs_into<std::uint32_t>(g, source, dist.data(), kUnreachable, queue);
  return dist;
}

// Read-only typed view over a row-major distance matrix.
template <class T>
struct MatrixView {
  const T* data;
  std::size_t n;

  static constexpr T unreachable = std::numeric_limits<T>::max();

  T operator()(std::size_t u, std::size_t v) const noexcept { return data[u * n + v]; }
  const T* row(std::size_t u) const noexcept { return data + u * n; }
};

// Dense all-pairs hop counts. Cell width is the narrowest unsigned type that
// can hold n (the diameter bound) with the maximum value reserved for
// "unreachable".
class DistanceMatrix {
 public:
  using Storage = std::variant<std::vector<std::uint8_t>, std::vector<std::uint16_t>,
                               std::vector<std::uint32_t>>;

  DistanceMatrix() = default;

  std::size_t n() const noexcept { return n_; }
  std::uint32_t diameter() const noexcept { return diameter_; }
  bool connected() const noexcept { return connected_; }
  std::size_t cell_bytes() const noexcept {
    return std::visit([](const auto& v) { return sizeof(typename std::decay_t<decltype(v)>::value_type); },
                      cells_);
  }

  // Distance widened to 32 bits; unreachable maps to kUnreachable.
  std::uint32_t at(std::size_t u, std::size_t v) const {
    return std::visit(
        [&](const auto& cells) -> std::uint32_t {
          using T = typename std::decay_t<decltype(cells)>::value_type;
          const T d = cells[u * n_ + v];
          return d == std::numeric_limits<T>::max() ? kUnreachable : d;
        },
        cells_);
  }

  // Invokes fn(MatrixView<T>) with the concrete cell type; hot loops go
  // through here instead of at().
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    return std::visit(
        [&](const auto& cells) -> decltype(auto) {
          using T = typename std::decay_t<decltype(cells)>::value_type;
          return fn(MatrixView<T>{cells.data(), n_});
        },
        cells_);
  }

  static std::size_t cell_width_for(std::size_t n) {
    if (n <= std::numeric_limits<std::uint8_t>::max()) return 1;
    if (n <= std::numeric_limits<std::uint16_t>::max()) return 2;
    return 4;
  }

  static std::size_t required_bytes(std::size_t n) { return n * n * cell_width_for(n); }

  friend DistanceMatrix all_pairs(const Graph& g, unsigned threads, std::size_t memory_cap);

 private:
  std::size_t n_ = 0;
  std::uint32_t diameter_ = 0;
  bool connected_ = false;
  Storage cells_;
};

inline constexpr std::size_t kDefaultMatrixCap = std::size_t{3} << 30;

// All-pairs BFS. Rows are independent, so the parallel result equals the
// sequential one cell for cell.
inline DistanceMatrix all_pairs(const Graph& g, unsigned threads = 0,
                                std::size_t memory_cap = kDefaultMatrixCap) {
  const std::size_t n = g.n();
  if (n == 0) throw InputError("all_pairs requires at least one vertex");
  const std::size_t need = DistanceMatrix::required_bytes(n);
  if (need > memory_cap)
    throw CapacityError("distance matrix for n=" + std::to_string(n) + " needs " +
                            std::to_string(need) + " bytes, cap is " + std::to_string(memory_cap),
                        need);
  DistanceMatrix m;
  m.n_ = n;
  auto fill = [&](auto tag) {
    using T = decltype(tag);
    std::vector<T> cells(n * n);
    const T unreached = std::numeric_limits<T>::max();
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(threads), n));
    std::vector<T> row_max(n, 0);
    std::vector<char> row_complete(n, 1);
    parallel_for(workers, workers, [&](std::size_t w) {
      std::vector<Vertex> queue;
      for (std::size_t s = w; s < n; s += workers) {
        T* row = cells.data() + s * n;
        row_max[s] = detail::bfs_into<T>(g, static_cast<Vertex>(s), row, unreached, queue);
        for (std::size_t v = 0; v < n; ++v)
          if (row[v] == unreached) {
            row_complete[s] = 0;
            break;
          }
      }
    });
    m.connected_ = std::find(row_complete.begin(), row_complete.end(), 0) == row_complete.end();
    m.diameter_ = *std::max_element(row_max.begin(), row_max.end());
    m.cells_ = std::move(cells);
  };
  switch (DistanceMatrix::cell_width_for(n)) {
    case 1: fill(std::uint8_t{}); break;
    case 2: fill(std::uint16_t{}); break;
    default: fill(std::uint32_t{}); break;
  }
  return m;
}

// Deterministic shortest path: from the current vertex, step to the
// smallest-id neighbor one hop closer to v.
inline Geodesic extract_geodesic(const Graph& g, const DistanceMatrix& m, Vertex u, Vertex v) {
  if (u >= g.n() || v >= g.n()) throw InputError("geodesic endpoint out of range");
  return m.visit([&](auto view) {
    using T = std::remove_const_t<std::remove_reference_t<decltype(view(0, 0))>>;
    if (view(u, v) == std::numeric_limits<T>::max())
      throw DomainError("vertices " + std::to_string(u) + " and " + std::to_string(v) +
                        " are disconnected");
    Geodesic path;
    path.reserve(view(u, v) + 1);
    path.push_back(u);
    Vertex w = u;
    while (w != v) {
      const auto want = view(w, v) - 1;
      for (Vertex x : g.neighbors(w)) {
        if (view(x, v) == want) {
          w = x;
          break;
        }
      }
      path.push_back(w);
    }
    return path;
  });
}

}  // namespace gromov
