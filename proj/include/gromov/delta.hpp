#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "distance.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace gromov {

// Twice the four-point delta of a quadruple (u, v, w, x): with the pairing
// sums S1 = d(u,v) + d(w,x), S2 = d(u,x) + d(v,w), S3 = d(u,w) + d(v,x),
// this is the largest sum minus the median one.
inline constexpr std::uint32_t four_point_delta(std::uint32_t duv, std::uint32_t dwx, std::uint32_t duw,
                                                std::uint32_t dvx, std::uint32_t dux,
                                                std::uint32_t dvw) noexcept {
  const std::uint32_t s1 = duv + dwx;
  const std::uint32_t s2 = dux + dvw;
  const std::uint32_t s3 = duw + dvx;
  const std::uint32_t hi = std::max({s1, s2, s3});
  const std::uint32_t lo = std::min({s1, s2, s3});
  const std::uint32_t mid = s1 + s2 + s3 - hi - lo;
  return hi - mid;
}

using Quadruple = std::array<Vertex, 4>;

template <class View>
inline std::uint32_t quadruple_delta(const View& m, const Quadruple& q) {
  const auto [u, v, w, x] = q;
  return four_point_delta(m(u, v), m(w, x), m(u, w), m(v, x), m(u, x), m(v, w));
}

inline std::uint32_t quadruple_delta(const DistanceMatrix& m, const Quadruple& q) {
  return m.visit([&](auto view) { return quadruple_delta(view, q); });
}

enum class DeltaMethod { EXACT, SAMPLED };

inline std::string_view to_string(DeltaMethod m) { return m == DeltaMethod::EXACT ? "exact" : "sampled"; }

// delta is kept doubled: on unweighted graphs it is an integer or a half
// integer, so two_delta is exact.
struct DeltaReport {
  std::uint32_t two_delta = 0;
  DeltaMethod method = DeltaMethod::EXACT;
  Quadruple witness{0, 0, 0, 0};
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint32_t diameter = 0;

  double delta() const { return two_delta / 2.0; }

  friend bool operator==(const DeltaReport&, const DeltaReport&) = default;
};

inline constexpr std::size_t kDefaultExactMaxN = 1200;

// Maximum four-point delta over all quadruples u < v < w < x. The scan is
// split by u across workers; each keeps the first (lexicographically
// smallest) quadruple that reaches its maximum, and the merge keeps the
// smallest witness among the tied blocks.
inline DeltaReport exact_delta(const DistanceMatrix& m, unsigned threads = 0,
                               std::size_t max_n = kDefaultExactMaxN) {
  if (!m.connected()) throw DomainError("exact delta requires a connected graph");
  const std::size_t n = m.n();
  if (n > max_n)
    throw InputError("exact delta refuses n=" + std::to_string(n) + " (> max-n " + std::to_string(max_n) +
                     "); raise the limit to override");
  DeltaReport report;
  report.method = DeltaMethod::EXACT;
  report.diameter = m.diameter();
  if (n < 4) return report;

  struct Best {
    std::uint32_t value = 0;
    Quadruple witness{0, 0, 0, 0};
    bool found = false;
  };
  std::vector<Best> per_u(n);
  m.visit([&](auto view) {
    parallel_for(n - 3, threads, [&](std::size_t u) {
      Best best;
      const auto* du = view.row(u);
      for (std::size_t v = u + 1; v < n; ++v) {
        const auto* dv = view.row(v);
        const std::uint32_t duv = du[v];
        for (std::size_t w = v + 1; w < n; ++w) {
          const auto* dw = view.row(w);
          const std::uint32_t duw = du[w], dvw = dv[w];
          for (std::size_t x = w + 1; x < n; ++x) {
            const std::uint32_t s1 = duv + dw[x];
            const std::uint32_t s2 = du[x] + dvw;
            const std::uint32_t s3 = duw + dv[x];
            const std::uint32_t hi = std::max({s1, s2, s3});
            const std::uint32_t lo = std::min({s1, s2, s3});
            const std::uint32_t value = 2 * hi - (s1 + s2 + s3 - lo);
            if (value > best.value || !best.found) {
              best.value = value;
              best.witness = {static_cast<Vertex>(u), static_cast<Vertex>(v), static_cast<Vertex>(w),
                              static_cast<Vertex>(x)};
              best.found = true;
            }
          }
        }
      }
      per_u[u] = best;
    });
  });
  // per_u is in increasing u, so the first maximum is the smallest witness.
  const Best* top = nullptr;
  for (const auto& b : per_u)
    if (b.found && (top == nullptr || b.value > top->value)) top = &b;
  report.two_delta = top->value;
  report.witness = top->witness;
  return report;
}

namespace detail {

inline constexpr std::uint64_t kSampleChunk = 1 << 16;
inline constexpr std::uint64_t kSampleTag = 0x51;

// Sample i lives in chunk i / kSampleChunk, whose stream is keyed by
// (seed, chunk). The first s samples are therefore the same for every budget
// >= s and every thread count.
template <class Eval>
DeltaReport sample_quadruples(std::size_t n, std::uint64_t samples, std::uint64_t seed, unsigned threads,
                              Eval&& eval) {
  if (samples == 0) throw InputError("sample count must be >= 1");
  if (n == 0) throw InputError("cannot sample from an empty graph");
  const std::uint64_t chunks = (samples + kSampleChunk - 1) / kSampleChunk;
  struct Best {
    std::uint32_t value = 0;
    Quadruple witness{0, 0, 0, 0};
  };
  std::vector<Best> per_chunk(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(stream_key(seed, kSampleTag, c));
    const std::uint64_t begin = c * kSampleChunk;
    const std::uint64_t end = std::min(samples, begin + kSampleChunk);
    Best best;
    bool first = true;
    for (std::uint64_t i = begin; i < end; ++i) {
      Quadruple q;
      for (auto& x : q) x = static_cast<Vertex>(rng.below(n));
      const std::uint32_t value = eval(q);
      if (first || value > best.value) {
        best = {value, q};
        first = false;
      }
    }
    per_chunk[c] = best;
  });
  DeltaReport report;
  report.method = DeltaMethod::SAMPLED;
  report.samples = samples;
  report.seed = seed;
  const Best* top = &per_chunk[0];
  for (const auto& b : per_chunk)
    if (b.value > top->value) top = &b;
  report.two_delta = top->value;
  report.witness = top->witness;
  return report;
}

}  // namespace detail

// Lower bound on delta: maximum over `samples` uniform quadruples drawn with
// replacement.
inline DeltaReport sampled_delta(const DistanceMatrix& m, std::uint64_t samples, std::uint64_t seed,
                                 unsigned threads = 0) {
  if (!m.connected()) throw DomainError("sampled delta requires a connected graph");
  auto report = m.visit([&](auto view) {
    return detail::sample_quadruples(m.n(), samples, seed, threads,
                                     [&](const Quadruple& q) { return quadruple_delta(view, q); });
  });
  report.diameter = m.diameter();
  return report;
}

// Same quadruple sequence as sampled_delta, with distances from three BFS
// runs per quadruple instead of a stored matrix. The diameter field is a
// lower bound: the largest eccentricity among the BFS sources.
inline DeltaReport sampled_delta_bfs(const Graph& g, std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads = 0) {
  const std::size_t n = g.n();
  std::atomic<std::uint32_t> far{0};
  auto report = detail::sample_quadruples(n, samples, seed, threads, [&](const Quadruple& q) {
    thread_local std::vector<std::uint32_t> du, dv, dw;
    thread_local std::vector<Vertex> queue;
    du.resize(n);
    dv.resize(n);
    dw.resize(n);
    const auto [u, v, w, x] = q;
    std::uint32_t ecc = detail::bfs_into<std::uint32_t>(g, u, du.data(), kUnreachable, queue);
    ecc = std::max(ecc, detail::bfs_into<std::uint32_t>(g, v, dv.data(), kUnreachable, queue));
    ecc = std::max(ecc, detail::bfs_into<std::uint32_t>(g, w, dw.data(), kUnreachable, queue));
    if (std::find(du.begin(), du.end(), kUnreachable) != du.end())
      throw DomainError("sampled delta requires a connected graph");
    std::uint32_t seen = far.load(std::memory_order_relaxed);
    while (ecc > seen && !far.compare_exchange_weak(seen, ecc, std::memory_order_relaxed)) {
    }
    return four_point_delta(du[v], dw[x], du[w], dv[x], du[x], dv[w]);
  });
  report.diameter = far.load();
  return report;
}

}  // namespace gromov
