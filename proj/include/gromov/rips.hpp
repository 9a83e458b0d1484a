#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "distance.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace gromov {

// Slimness of one geodesic triangle, measured on vertices only: the largest
// distance from a vertex of one side to the union of the other two sides.
struct SlimnessReport {
  std::array<Vertex, 3> corners{0, 0, 0};
  std::array<Geodesic, 3> sides;
  std::uint32_t slimness = 0;
  // Side index and vertex attaining the slimness.
  unsigned worst_side = 0;
  Vertex worst_vertex = 0;

  friend bool operator==(const SlimnessReport&, const SlimnessReport&) = default;
};

namespace detail {

inline bool endpoints_are(const Geodesic& p, Vertex a, Vertex b) {
  return (p.front() == a && p.back() == b) || (p.front() == b && p.back() == a);
}

}  // namespace detail

// sides[0] joins corners a-b, sides[1] joins b-c, sides[2] joins c-a; each
// side may be given in either direction.
inline SlimnessReport triangle_slimness(const Graph& g, const DistanceMatrix& m,
                                        const std::array<Geodesic, 3>& sides) {
  for (const auto& s : sides)
    if (s.empty()) throw InputError("triangle side is empty");
  for (const auto& s : sides)
    for (Vertex x : s)
      if (x >= g.n() || x >= m.n()) throw InputError("triangle vertex out of range");
  const Vertex a = sides[0].front();
  const Vertex b = sides[0].back();
  Vertex c;
  if (sides[1].front() == b) c = sides[1].back();
  else if (sides[1].back() == b) c = sides[1].front();
  else throw InputError("triangle sides do not share endpoints: side 1 does not touch corner b");
  if (!detail::endpoints_are(sides[2], c, a))
    throw InputError("triangle sides do not share endpoints: side 2 must join c and a");

  SlimnessReport report;
  report.corners = {a, b, c};
  report.sides = sides;
  m.visit([&](auto view) {
    for (unsigned i = 0; i < 3; ++i) {
      const auto& other1 = sides[(i + 1) % 3];
      const auto& other2 = sides[(i + 2) % 3];
      for (Vertex p : sides[i]) {
        std::uint32_t best = std::numeric_limits<std::uint32_t>::max();
        for (Vertex q : other1) best = std::min<std::uint32_t>(best, view(p, q));
        for (Vertex q : other2) best = std::min<std::uint32_t>(best, view(p, q));
        if (best > report.slimness) {
          report.slimness = best;
          report.worst_side = i;
          report.worst_vertex = p;
        }
      }
    }
  });
  return report;
}

// Triangle on (a, b, c) with extract_geodesic sides.
inline SlimnessReport geodesic_triangle_slimness(const Graph& g, const DistanceMatrix& m, Vertex a, Vertex b,
                                                 Vertex c) {
  return triangle_slimness(g, m, {extract_geodesic(g, m, a, b), extract_geodesic(g, m, b, c),
                                  extract_geodesic(g, m, c, a)});
}

// Lower bound on the vertex Rips constant: max slimness over uniformly
// sampled triples, sides chosen by extract_geodesic.
inline SlimnessReport rips_lower_bound(const Graph& g, const DistanceMatrix& m, std::uint64_t triple_samples,
                                       std::uint64_t seed, unsigned threads = 0) {
  if (!m.connected()) throw DomainError("rips bound requires a connected graph");
  if (triple_samples == 0) throw InputError("triple sample count must be >= 1");
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t chunks = (triple_samples + kChunk - 1) / kChunk;
  std::vector<SlimnessReport> per_chunk(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(stream_key(seed, 0x52, c));
    const std::uint64_t end = std::min(triple_samples, (c + 1) * kChunk);
    bool first = true;
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      const auto a = static_cast<Vertex>(rng.below(g.n()));
      const auto b = static_cast<Vertex>(rng.below(g.n()));
      const auto t = static_cast<Vertex>(rng.below(g.n()));
      auto r = geodesic_triangle_slimness(g, m, a, b, t);
      if (first || r.slimness > per_chunk[c].slimness) {
        per_chunk[c] = std::move(r);
        first = false;
      }
    }
  });
  std::size_t top = 0;
  for (std::size_t c = 1; c < chunks; ++c)
    if (per_chunk[c].slimness > per_chunk[top].slimness) top = c;
  return std::move(per_chunk[top]);
}

struct RipsExact {
  std::uint32_t slimness = 0;
  std::array<Vertex, 3> corners{0, 0, 0};  // side corners[0]-corners[1] holds the worst vertex
  Vertex worst_vertex = 0;
};

inline constexpr std::size_t kExhaustiveRipsMaxN = 40;

// Exact vertex Rips constant over every geodesic triangle of a small graph.
//
// For a triangle (a, b, c) and a vertex p on some geodesic [a, b], the
// other two sides are chosen independently, so the worst case is
//   min( max_Q d(p, Q), max_R d(p, R) )
// over geodesics Q of (b, c) and R of (c, a). max_Q d(p, Q) is a bottleneck
// path problem on the shortest-path DAG of (b, c), solved by dynamic
// programming instead of listing geodesics. The vertices lying on some
// geodesic [a, b] are the interval {p : d(a,p) + d(p,b) = d(a,b)}.
inline RipsExact exhaustive_rips(const Graph& g, const DistanceMatrix& m,
                                 std::size_t max_n = kExhaustiveRipsMaxN) {
  if (!m.connected()) throw DomainError("rips computation requires a connected graph");
  const std::size_t n = g.n();
  if (n > max_n) throw InputError("exhaustive rips refuses n=" + std::to_string(n));
  // far[(b * n + c) * n + p] = max over geodesics Q from b to c of d(p, Q).
  std::vector<std::uint32_t> far(n * n * n, 0);
  std::vector<std::uint32_t> best(n);
  std::vector<Vertex> order(n);
  for (Vertex b = 0; b < n; ++b) {
    for (Vertex c = 0; c < n; ++c) {
      // Interval vertices of (b, c) in decreasing distance from b.
      order.clear();
      for (Vertex x = 0; x < n; ++x)
        if (m.at(b, x) + m.at(x, c) == m.at(b, c)) order.push_back(x);
      std::sort(order.begin(), order.end(), [&](Vertex x, Vertex y) { return m.at(b, x) > m.at(b, y); });
      for (Vertex p = 0; p < n; ++p) {
        // best[x] = max over geodesics from x to c of min distance to p.
        for (Vertex x : order) {
          const std::uint32_t here = m.at(p, x);
          if (x == c) {
            best[x] = here;
            continue;
          }
          std::uint32_t onward = 0;
          for (Vertex y : g.neighbors(x))
            if (m.at(b, y) == m.at(b, x) + 1 && m.at(y, c) + 1 == m.at(x, c)) onward = std::max(onward, best[y]);
          best[x] = std::min(here, onward);
        }
        far[(std::size_t{b} * n + c) * n + p] = best[b];
      }
    }
  }
  RipsExact out;
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex c = 0; c < n; ++c)
        for (Vertex p = 0; p < n; ++p) {
          if (m.at(a, p) + m.at(p, b) != m.at(a, b)) continue;
          const std::uint32_t s = std::min(far[(std::size_t{b} * n + c) * n + p], far[(std::size_t{c} * n + a) * n + p]);
          if (s > out.slimness) out = {s, {a, b, c}, p};
        }
  return out;
}

}  // namespace gromov
