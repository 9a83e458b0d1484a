#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "distance.hpp"
#include "error.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "rips.hpp"
#include "ringed_tree.hpp"
#include "rng.hpp"

namespace gromov {

// ---------------------------------------------------------------------------
// Canonical geodesics in RT(k)
//
// Same level, ring distance <= 3: walk the ring. Same level, farther apart:
// step both ends to their parents and recurse. Different levels: lift the
// deeper end. The ring walk takes the shorter arc; when both arcs tie (only
// possible on the 4-ring at level 2) it takes the arc between the smaller
// and larger position, so <u,v> and <v,u> cover the same vertices.
inline Geodesic canonical_geodesic(TreeAddress u, TreeAddress v, unsigned k) {
  if (!valid_address(u, k) || !valid_address(v, k)) throw InputError("invalid ringed-tree address");
  std::vector<Vertex> left{vertex_id(u)}, right{vertex_id(v)};
  TreeAddress a = u, b = v;
  while (a.level != b.level) {
    if (a.level > b.level) {
      a = parent(a);
      left.push_back(vertex_id(a));
    } else {
      b = parent(b);
      right.push_back(vertex_id(b));
    }
  }
  while (ring_distance(a, b) > 3) {
    a = parent(a);
    b = parent(b);
    left.push_back(vertex_id(a));
    right.push_back(vertex_id(b));
  }
  const std::uint64_t width = level_width(a.level);
  const std::uint64_t forward = (b.pos + width - a.pos) % width;
  const std::uint64_t backward = (width - forward) % width;
  bool go_forward = forward < backward;
  if (forward == backward) go_forward = a.pos < b.pos;
  const std::uint64_t steps = go_forward ? forward : backward;
  for (std::uint64_t s = 1; s < steps; ++s) {
    const std::uint64_t p = go_forward ? (a.pos + s) % width : (a.pos + width - s) % width;
    left.push_back(vertex_id({a.level, p}));
  }
  if (steps == 0) right.pop_back();  // a == b, already at the end of left
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

inline Geodesic canonical_geodesic(Vertex u, Vertex v, unsigned k) {
  return canonical_geodesic(address_of(u), address_of(v), k);
}

// ---------------------------------------------------------------------------
// Poincare disk

struct DiskPoint {
  double re = 0.0;
  double im = 0.0;

  double norm2() const { return re * re + im * im; }
};

// (level, pos) -> sqrt(1 - 2^-level) * exp(2 pi i pos / 2^level)
inline DiskPoint poincare_embed(TreeAddress a) {
  const double radius = std::sqrt(1.0 - std::exp2(-static_cast<double>(a.level)));
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(a.pos) / std::exp2(static_cast<double>(a.level));
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

inline double poincare_distance(DiskPoint p, DiskPoint q) {
  const double np = p.norm2(), nq = q.norm2();
  if (!(np < 1.0) || !(nq < 1.0)) throw DomainError("point is not strictly inside the unit disk");
  const double dr = p.re - q.re, di = p.im - q.im;
  return std::acosh(1.0 + 2.0 * (dr * dr + di * di) / ((1.0 - np) * (1.0 - nq)));
}

// ---------------------------------------------------------------------------
// Verifiers

inline constexpr double kRealTolerance = 1e-9;
inline constexpr unsigned kVerifyMaxK = 14;

struct QuasiIsometryReport {
  unsigned k = 0;
  std::uint64_t pairs_checked = 0;
  std::uint64_t violations = 0;
  // Smallest slack min(d_P - lower, upper - d_P) over all pairs; negative
  // beyond the tolerance means a violation.
  double worst_margin = std::numeric_limits<double>::infinity();
  Vertex worst_u = 0, worst_v = 0;

  bool ok() const { return violations == 0; }
};

inline double qi_lower(std::uint32_t d_rt) { return std::numbers::ln2 / 2.0 * d_rt - std::log(200.0); }
inline double qi_upper(std::uint32_t d_rt) {
  return std::numbers::ln2 * d_rt + std::log(66.0 * std::numbers::pi * std::numbers::pi);
}

// Checks (ln2/2) d_RT - ln 200 <= d_P(f(u), f(v)) <= ln2 d_RT + ln(66 pi^2)
// for every vertex pair of RT(k), with d_RT from BFS.
inline QuasiIsometryReport verify_quasi_isometry(unsigned k, unsigned threads = 0) {
  if (k < 1 || k > kVerifyMaxK) throw InputError("verify_quasi_isometry supports 1 <= k <= " + std::to_string(kVerifyMaxK));
  const Graph g = ringed_tree_graph(k);
  const DistanceMatrix m = all_pairs(g, threads);
  const std::size_t n = g.n();
  std::vector<DiskPoint> image(n);
  for (Vertex v = 0; v < n; ++v) image[v] = poincare_embed(address_of(v));
  std::vector<QuasiIsometryReport> rows(n);
  parallel_for(n, threads, [&](std::size_t u) {
    auto& r = rows[u];
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::uint32_t d = m.at(u, v);
      const double dp = poincare_distance(image[u], image[v]);
      const double margin = std::min(dp - qi_lower(d), qi_upper(d) - dp);
      ++r.pairs_checked;
      if (margin < -kRealTolerance) ++r.violations;
      if (margin < r.worst_margin) {
        r.worst_margin = margin;
        r.worst_u = static_cast<Vertex>(u);
        r.worst_v = static_cast<Vertex>(v);
      }
    }
  });
  QuasiIsometryReport out;
  out.k = k;
  for (const auto& r : rows) {
    out.pairs_checked += r.pairs_checked;
    out.violations += r.violations;
    if (r.worst_margin < out.worst_margin) {
      out.worst_margin = r.worst_margin;
      out.worst_u = r.worst_u;
      out.worst_v = r.worst_v;
    }
  }
  return out;
}

struct LemmaCheck {
  std::string name;
  std::uint64_t checked = 0;
  std::uint64_t failures = 0;
  std::string witness;  // first failure, empty if none

  bool ok() const { return failures == 0; }
};

struct LemmaSuiteReport {
  unsigned k = 0;
  LemmaCheck halving;         // d_R(u',v') <= (d_R(u,v) + 1) / 2
  LemmaCheck canonical;       // <u,v> is a path of length d(u,v)
  LemmaCheck rectification;   // [u,v] and <u,v> within distance 1 of each other
  LemmaCheck slim_triangles;  // canonical triangles are 3-slim
  LemmaCheck ring_lower;      // 2 log2 d_R <= d when d > 1
  LemmaCheck ring_upper;      // d <= 2 log2(d_R - 1) + 2 when d > 1
  // Largest 2 log2 d_R - d over the pairs ring_lower looks at.
  double ring_lower_excess = -std::numeric_limits<double>::infinity();

  std::vector<const LemmaCheck*> checks() const {
    return {&halving, &canonical, &rectification, &slim_triangles, &ring_lower, &ring_upper};
  }
  bool ok() const {
    for (const auto* c : checks())
      if (!c->ok()) return false;
    return true;
  }
};

struct LemmaOptions {
  std::uint64_t pair_samples = 10'000;
  std::uint64_t triple_samples = 10'000;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

namespace detail {

inline void record_failure(LemmaCheck& c, const std::string& what) {
  if (c.failures++ == 0) c.witness = what;
}

inline std::string pair_label(Vertex u, Vertex v) {
  const auto a = address_of(u), b = address_of(v);
  return "(" + std::to_string(a.level) + "," + std::to_string(a.pos) + ")-(" + std::to_string(b.level) + "," +
         std::to_string(b.pos) + ")";
}

// Every vertex of each path lies within distance 1 of some vertex of the other.
inline bool mutually_within_one(const DistanceMatrix& m, const Geodesic& p, const Geodesic& q) {
  auto covered = [&](const Geodesic& from, const Geodesic& to) {
    for (Vertex x : from) {
      bool near = false;
      for (Vertex y : to)
        if (m.at(x, y) <= 1) {
          near = true;
          break;
        }
      if (!near) return false;
    }
    return true;
  };
  return covered(p, q) && covered(q, p);
}

inline bool integer_pow2_leq(std::uint64_t value, std::uint32_t exponent) {
  // value <= 2^exponent without overflow
  return exponent >= 63 || value <= (std::uint64_t{1} << exponent);
}

}  // namespace detail

// Runs the ringed-tree lemma checks against `graph`, which must have the
// vertex set of RT(k); pass a modified RT(k) to exercise the negative path.
inline LemmaSuiteReport verify_structural_lemmas(unsigned k, const Graph& graph, const LemmaOptions& opt = {}) {
  if (k < 1 || k > kVerifyMaxK) throw InputError("verify_structural_lemmas supports 1 <= k <= " + std::to_string(kVerifyMaxK));
  if (graph.n() != ringed_tree_size(k)) throw InputError("graph does not have the vertex count of RT(k)");
  LemmaSuiteReport r;
  r.k = k;
  r.halving.name = "ring-distance halving";
  r.canonical.name = "canonical geodesic is a geodesic";
  r.rectification.name = "geodesic within distance 1 of canonical";
  r.slim_triangles.name = "canonical triangles 3-slim";
  r.ring_lower.name = "distance lower bound by ring distance";
  r.ring_upper.name = "distance upper bound by ring distance";

  const std::size_t n = graph.n();
  const DistanceMatrix m = all_pairs(graph, opt.threads);

  // (a), (e): every same-level pair.
  for (unsigned level = 1; level < k; ++level) {
    const auto width = level_width(level);
    for (std::uint64_t p = 0; p < width; ++p) {
      for (std::uint64_t q = p + 1; q < width; ++q) {
        const auto dr = ring_distance(level, p, q);
        const auto drp = ring_distance(level - 1, p / 2, q / 2);
        ++r.halving.checked;
        if (2 * drp > dr + 1)
          detail::record_failure(r.halving, "level " + std::to_string(level) + " positions " + std::to_string(p) +
                                                "," + std::to_string(q));
        const Vertex u = vertex_id({level, p}), v = vertex_id({level, q});
        const std::uint32_t d = m.at(u, v);
        if (d == kUnreachable || d <= 1) continue;
        ++r.ring_lower.checked;
        ++r.ring_upper.checked;
        // 2 log2 dR <= d  <=>  dR^2 <= 2^d ;  d <= 2 log2(dR - 1) + 2  <=>  2^(d-2) <= (dR - 1)^2
        const auto label = [&] {
          return detail::pair_label(u, v) + " d=" + std::to_string(d) + " dR=" + std::to_string(dr);
        };
        r.ring_lower_excess = std::max(r.ring_lower_excess, 2.0 * std::log2(static_cast<double>(dr)) - d);
        if (!detail::integer_pow2_leq(dr * dr, d)) detail::record_failure(r.ring_lower, label());
        if (!(d - 2 < 63 && (std::uint64_t{1} << (d - 2)) <= (dr - 1) * (dr - 1)))
          detail::record_failure(r.ring_upper, label());
      }
    }
  }

  // (b): every pair.
  {
    std::vector<LemmaCheck> rows(n);
    parallel_for(n, opt.threads, [&](std::size_t u) {
      for (std::size_t v = u; v < n; ++v) {
        const auto path = canonical_geodesic(static_cast<Vertex>(u), static_cast<Vertex>(v), k);
        ++rows[u].checked;
        bool ok = path.size() == std::size_t{m.at(u, v)} + 1;
        for (std::size_t i = 1; ok && i < path.size(); ++i) ok = graph.has_edge(path[i - 1], path[i]);
        if (!ok)
          detail::record_failure(rows[u], detail::pair_label(static_cast<Vertex>(u), static_cast<Vertex>(v)) +
                                              " canonical length " + std::to_string(path.size() - 1) +
                                              " vs distance " + std::to_string(m.at(u, v)));
      }
    });
    for (const auto& row : rows) {
      r.canonical.checked += row.checked;
      if (row.failures > 0 && r.canonical.failures == 0) r.canonical.witness = row.witness;
      r.canonical.failures += row.failures;
    }
  }

  if (!m.connected()) {
    detail::record_failure(r.rectification, "graph is disconnected");
    detail::record_failure(r.slim_triangles, "graph is disconnected");
    return r;
  }

  // (c), (d): sampled pairs and triples.
  Rng rng(stream_key(opt.seed, 0x4c, k));
  for (std::uint64_t i = 0; i < opt.pair_samples; ++i) {
    const auto u = static_cast<Vertex>(rng.below(n));
    const auto v = static_cast<Vertex>(rng.below(n));
    ++r.rectification.checked;
    if (!detail::mutually_within_one(m, extract_geodesic(graph, m, u, v), canonical_geodesic(u, v, k)))
      detail::record_failure(r.rectification, detail::pair_label(u, v));
  }
  for (std::uint64_t i = 0; i < opt.triple_samples; ++i) {
    const auto a = static_cast<Vertex>(rng.below(n));
    const auto b = static_cast<Vertex>(rng.below(n));
    const auto c = static_cast<Vertex>(rng.below(n));
    ++r.slim_triangles.checked;
    const auto s = triangle_slimness(graph, m,
                                     {canonical_geodesic(a, b, k), canonical_geodesic(b, c, k), canonical_geodesic(c, a, k)});
    if (s.slimness > 3)
      detail::record_failure(r.slim_triangles, "triangle " + std::to_string(a) + "," + std::to_string(b) + "," +
                                                   std::to_string(c) + " slimness " + std::to_string(s.slimness));
  }
  return r;
}

inline LemmaSuiteReport verify_structural_lemmas(unsigned k, const LemmaOptions& opt = {}) {
  if (k < 1 || k > kVerifyMaxK) throw InputError("verify_structural_lemmas supports 1 <= k <= " + std::to_string(kVerifyMaxK));
  return verify_structural_lemmas(k, ringed_tree_graph(k), opt);
}

}  // namespace gromov
