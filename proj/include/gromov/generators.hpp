#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "error.hpp"
#include "genspec.hpp"
#include "graph.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "ringed_tree.hpp"

namespace gromov {

// Stream tags keep the per-family child streams disjoint.
namespace stream_tag {
inline constexpr std::uint64_t kKswDraw = 1;
inline constexpr std::uint64_t kKswPair = 2;
inline constexpr std::uint64_t kRtfDraw = 3;
inline constexpr std::uint64_t kTreeDraw = 4;
inline constexpr std::uint64_t kTreePair = 5;
}  // namespace stream_tag

// ---------------------------------------------------------------------------
// Base grid

// Row-major-free coordinate mapping: id = sum_i coords[i] * side^i.
class GridIndexer {
 public:
  GridIndexer(std::uint64_t side, unsigned d) : side_(side), d_(d) {}

  std::uint64_t side() const { return side_; }
  unsigned dims() const { return d_; }

  void coords(std::uint64_t id, std::span<std::uint64_t> out) const {
    for (unsigned i = 0; i < d_; ++i) {
      out[i] = id % side_;
      id /= side_;
    }
  }

  std::uint64_t id(std::span<const std::uint64_t> c) const {
    std::uint64_t x = 0;
    for (unsigned i = d_; i-- > 0;) x = x * side_ + c[i];
    return x;
  }

 private:
  std::uint64_t side_;
  unsigned d_;
};

inline std::uint64_t axis_distance(std::uint64_t a, std::uint64_t b, std::uint64_t side, bool wrap) {
  const auto diff = a > b ? a - b : b - a;
  return wrap ? std::min(diff, side - diff) : diff;
}

// L1 grid distance; per dimension min(|delta|, side - |delta|) with wrap-around.
inline std::uint64_t grid_distance(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                   std::uint64_t side, bool wrap) {
  if (a.size() != b.size()) throw InputError("grid coordinates differ in dimension");
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] >= side || b[i] >= side) throw InputError("grid coordinate out of range");
    total += axis_distance(a[i], b[i], side, wrap);
  }
  return total;
}

inline std::uint64_t grid_distance(const GridIndexer& grid, std::uint64_t u, std::uint64_t v, bool wrap) {
  std::uint64_t total = 0;
  for (unsigned i = 0; i < grid.dims(); ++i) {
    total += axis_distance(u % grid.side(), v % grid.side(), grid.side(), wrap);
    u /= grid.side();
    v /= grid.side();
  }
  return total;
}

inline void add_grid_edges(GraphBuilder& b, const GridIndexer& grid, bool wrap) {
  const std::uint64_t n = b.n();
  std::vector<std::uint64_t> c(grid.dims());
  for (std::uint64_t u = 0; u < n; ++u) {
    grid.coords(u, c);
    std::uint64_t stride = 1;
    for (unsigned i = 0; i < grid.dims(); ++i, stride *= grid.side()) {
      if (c[i] + 1 < grid.side())
        b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(u + stride));
      else if (wrap)
        b.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(u - c[i] * stride));
    }
  }
}

namespace detail {

inline std::size_t pick_cumulative(const std::vector<double>& cum, Rng& rng) {
  const double x = rng.uniform() * cum.back();
  auto idx = static_cast<std::size_t>(std::upper_bound(cum.begin(), cum.end(), x) - cum.begin());
  if (idx == cum.size()) --idx;
  // x can round up to the total; step back over trailing zero-weight entries.
  while (idx > 0 && cum[idx] == cum[idx - 1]) --idx;
  return idx;
}

inline std::vector<double> inverse_powers(std::size_t max_r, double gamma) {
  std::vector<double> w(max_r + 1, 0.0);
  for (std::size_t r = 1; r <= max_r; ++r) w[r] = std::pow(static_cast<double>(r), -gamma);
  return w;
}

// Law of the grid offset from a fixed node u: per-dimension multiplicities
// m_i(delta) (how many coordinates lie at axis distance delta), suffix
// convolutions of those counts, and the class weights count(r) * r^-gamma.
// Sampling picks a distance class r, then a uniform node among the
// count(r) nodes at that distance.
class GridDistanceLaw {
 public:
  // inv_pow[r] = r^-gamma for r up to d * side.
  GridDistanceLaw(std::span<const std::uint64_t> c, std::uint64_t side, bool wrap,
                  std::span<const double> inv_pow)
      : side_(side), wrap_(wrap), coord_(c.begin(), c.end()) {
    const unsigned d = static_cast<unsigned>(c.size());
    mult_.resize(d);
    for (unsigned i = 0; i < d; ++i) {
      auto& m = mult_[i];
      if (wrap) {
        m.assign(side / 2 + 1, 2.0);
        m[0] = 1.0;
        if (side % 2 == 0) m[side / 2] = 1.0;
      } else {
        m.assign(side, 0.0);
        m[0] = 1.0;
        for (std::uint64_t delta = 1; delta < side; ++delta)
          m[delta] = (c[i] + delta < side ? 1.0 : 0.0) + (c[i] >= delta ? 1.0 : 0.0);
      }
    }
    suffix_.resize(d + 1);
    suffix_[d] = {1.0};
    for (unsigned i = d; i-- > 0;) {
      const auto& next = suffix_[i + 1];
      auto& cur = suffix_[i];
      cur.assign(next.size() + mult_[i].size() - 1, 0.0);
      for (std::size_t a = 0; a < mult_[i].size(); ++a)
        if (mult_[i][a] != 0.0)
          for (std::size_t s = 0; s < next.size(); ++s) cur[a + s] += mult_[i][a] * next[s];
    }
    const auto& count = suffix_[0];
    class_cum_.assign(count.size(), 0.0);
    for (std::size_t r = 1; r < count.size(); ++r)
      class_cum_[r] = class_cum_[r - 1] + count[r] * inv_pow[r];
  }

  // Number of nodes at grid distance r from the centre.
  double count(std::size_t r) const { return r < suffix_[0].size() ? suffix_[0][r] : 0.0; }
  std::size_t max_distance() const { return suffix_[0].size() - 1; }

  // Draws a target != centre; writes its coordinates to out.
  void sample(Rng& rng, std::span<std::uint64_t> out) const {
    std::size_t remaining = detail::pick_cumulative(class_cum_, rng);
    std::vector<double> w;
    for (std::size_t i = 0; i < mult_.size(); ++i) {
      const auto& m = mult_[i];
      const auto& rest = suffix_[i + 1];
      w.assign(std::min(m.size(), remaining + 1), 0.0);
      double total = 0.0;
      for (std::size_t delta = 0; delta < w.size(); ++delta) {
        const std::size_t left = remaining - delta;
        w[delta] = left < rest.size() ? m[delta] * rest[left] : 0.0;
        total += w[delta];
      }
      double x = rng.uniform() * total;
      std::size_t delta = 0;
      for (; delta + 1 < w.size(); ++delta) {
        if (x < w[delta]) break;
        x -= w[delta];
      }
      while (w[delta] == 0.0 && delta > 0) --delta;
      remaining -= delta;
      out[i] = offset(coord_[i], delta, rng);
    }
  }

 private:
  std::uint64_t offset(std::uint64_t c, std::uint64_t delta, Rng& rng) const {
    if (delta == 0) return c;
    if (wrap_) {
      if (2 * delta == side_) return (c + delta) % side_;
      return rng.below(2) == 0 ? (c + delta) % side_ : (c + side_ - delta) % side_;
    }
    const bool up = c + delta < side_;
    const bool down = c >= delta;
    if (up && down) return rng.below(2) == 0 ? c + delta : c - delta;
    return up ? c + delta : c - delta;
  }

  std::uint64_t side_;
  bool wrap_;
  std::vector<std::uint64_t> coord_;
  std::vector<std::vector<double>> mult_;
  std::vector<std::vector<double>> suffix_;
  std::vector<double> class_cum_;
};

}  // namespace detail

// KSW(n, d, gamma) with its variants: wrap-around or bounded grid, several
// long-range draws per node, or independent per-pair long-range edges.
inline Graph gen_ksw(const GenSpec& spec, unsigned threads = 1) {
  if (spec.family != Family::KSW) throw InputError("gen_ksw needs family ksw");
  spec.validate();
  const std::uint64_t n = spec.n;
  const std::uint64_t side = *integer_root(n, spec.d);
  const GridIndexer grid(side, spec.d);
  GraphBuilder b(n);
  add_grid_edges(b, grid, spec.wrap);

  if (spec.independent) {
    // P{u~v} = min(1, d0 * dB^-gamma / sum_{i=1}^{side} i^(d-1-gamma))
    double norm = 0.0;
    for (std::uint64_t i = 1; i <= side; ++i)
      norm += std::pow(static_cast<double>(i), static_cast<double>(spec.d) - 1.0 - spec.gamma);
    const double scale = spec.edges_per_node / norm;
    std::vector<double> prob(spec.d * side + 1, 0.0);
    for (std::size_t r = 1; r < prob.size(); ++r)
      prob[r] = std::min(1.0, scale * std::pow(static_cast<double>(r), -spec.gamma));
    std::vector<std::vector<Edge>> found(n);
    parallel_for(n, threads, [&](std::size_t u) {
      for (std::uint64_t v = u + 1; v < n; ++v) {
        Rng rng(stream_key(spec.seed, stream_tag::kKswPair, u, v));
        if (rng.uniform() < prob[grid_distance(grid, u, v, spec.wrap)])
          found[u].emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
      }
    });
    for (const auto& list : found)
      for (const auto& [u, v] : list) b.add_edge(u, v);
    return std::move(b).build();
  }

  const unsigned draws = spec.edges_per_node;
  std::vector<Vertex> targets(n * draws);
  const auto inv_pow = detail::inverse_powers(spec.d * side, spec.gamma);
  std::vector<std::uint64_t> origin(spec.d, 0);
  const detail::GridDistanceLaw shared(origin, side, true, inv_pow);
  parallel_for(n, threads, [&](std::size_t u) {
    std::vector<std::uint64_t> c(spec.d), t(spec.d);
    grid.coords(u, c);
    if (spec.wrap) {
      // The wrap-around law is translation invariant; sample offsets from the
      // origin's law and translate.
      for (unsigned j = 0; j < draws; ++j) {
        Rng rng(stream_key(spec.seed, stream_tag::kKswDraw, u, j));
        shared.sample(rng, t);
        for (unsigned i = 0; i < spec.d; ++i) t[i] = (t[i] + c[i]) % side;
        targets[u * draws + j] = static_cast<Vertex>(grid.id(t));
      }
    } else {
      // Bounded grid: the class counts depend on u, so the law is per node.
      const detail::GridDistanceLaw law(c, side, false, inv_pow);
      for (unsigned j = 0; j < draws; ++j) {
        Rng rng(stream_key(spec.seed, stream_tag::kKswDraw, u, j));
        law.sample(rng, t);
        targets[u * draws + j] = static_cast<Vertex>(grid.id(t));
      }
    }
  });
  for (std::uint64_t u = 0; u < n; ++u)
    for (unsigned j = 0; j < draws; ++j) b.add_edge(static_cast<Vertex>(u), targets[u * draws + j]);
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Ringed-tree families

inline std::uint64_t span_bound(FKind kind, double param, std::uint64_t n) {
  double f = 0.0;
  switch (kind) {
    case FKind::CONST: f = param; break;
    case FKind::LOG2: f = param * std::log2(static_cast<double>(n)); break;
    case FKind::POW: f = std::pow(static_cast<double>(n), param); break;
  }
  // Guard against log2/pow landing a hair under an integer.
  return f < 0 ? 0 : static_cast<std::uint64_t>(std::floor(f + 1e-9));
}

struct RtfResult {
  Graph graph;
  std::uint64_t span = 0;        // f(n)
  bool no_extra_edges = false;   // f(n) < 1
};

// RT(k) plus, for every vertex on every level >= 1, `edges_per_node` edges to
// uniformly random same-level vertices at ring distance in [1, f(n)].
inline RtfResult gen_rt_f(unsigned k, FKind f_kind, double f_param, std::uint64_t seed,
                          unsigned edges_per_node = 1) {
  if (k < 2) throw InputError("RT_F requires k >= 2");
  if (k > 31) throw InputError("RT_F k must be <= 31");
  if (edges_per_node < 1) throw InputError("edges_per_node must be >= 1");
  RtfResult out;
  const std::uint64_t n = ringed_tree_size(k);
  out.span = span_bound(f_kind, f_param, n);
  out.no_extra_edges = out.span < 1;
  GraphBuilder b(n);
  for (unsigned level = 1; level < k; ++level) {
    const auto width = level_width(level);
    for (std::uint64_t p = 0; p < width; ++p) {
      const Vertex v = vertex_id({level, p});
      b.add_edge(v, vertex_id(parent({level, p})));
      b.add_edge(v, vertex_id({level, (p + 1) % width}));
      if (out.no_extra_edges) continue;
      const std::uint64_t reach = std::min(out.span, width / 2);
      for (unsigned j = 0; j < edges_per_node; ++j) {
        Rng rng(stream_key(seed, stream_tag::kRtfDraw, v, j));
        std::uint64_t q;
        if (2 * reach < width) {
          const std::uint64_t s = rng.below(2 * reach);
          q = s < reach ? (p + s + 1) % width : (p + width - (s - reach + 1)) % width;
        } else {
          q = (p + 1 + rng.below(width - 1)) % width;
        }
        b.add_edge(v, vertex_id({level, q}));
      }
    }
  }
  out.graph = std::move(b).build();
  return out;
}

// Unnormalised closeness weight g(u, v) for two leaves.
inline double leaf_weight(GKind kind, double alpha, std::uint64_t ring_dist, unsigned lca_h) {
  switch (kind) {
    case GKind::EXP_RING: return std::exp(-alpha * static_cast<double>(ring_dist));
    case GKind::POW_RING: return std::pow(static_cast<double>(ring_dist), -alpha);
    case GKind::LCA_HEIGHT: return std::exp2(-alpha * static_cast<double>(lca_h));
  }
  return 0.0;
}

namespace detail {

// Leaf-to-leaf law on level k-1, decomposed into classes: ring-distance
// classes r = 1..L/2 (2 leaves each, 1 at r = L/2) for the ring laws, LCA
// heights h = 1..k-1 (2^(h-1) leaves each) for the ancestor law.
class LeafLaw {
 public:
  LeafLaw(unsigned k, GKind kind, double alpha) : k_(k), kind_(kind) {
    const auto leaves = level_width(k - 1);
    if (kind == GKind::LCA_HEIGHT) {
      cum_.assign(k, 0.0);
      for (unsigned h = 1; h < k; ++h)
        cum_[h] = cum_[h - 1] + std::exp2(static_cast<double>(h - 1)) * leaf_weight(kind, alpha, 0, h);
    } else {
      cum_.assign(leaves / 2 + 1, 0.0);
      for (std::uint64_t r = 1; r <= leaves / 2; ++r) {
        const double count = 2 * r == leaves ? 1.0 : 2.0;
        cum_[r] = cum_[r - 1] + count * leaf_weight(kind, alpha, r, 0);
      }
    }
  }

  // Sum of g(u, v) over u != v.
  double total() const { return cum_.back(); }

  std::uint64_t sample(std::uint64_t v, Rng& rng) const {
    const auto leaves = level_width(k_ - 1);
    const std::size_t cls = pick_cumulative(cum_, rng);
    if (kind_ == GKind::LCA_HEIGHT) {
      const auto h = static_cast<unsigned>(cls);
      const std::uint64_t base = ((v >> (h - 1)) ^ 1) << (h - 1);
      return base + rng.below(std::uint64_t{1} << (h - 1));
    }
    const std::uint64_t r = cls;
    if (2 * r == leaves) return (v + r) % leaves;
    return rng.below(2) == 0 ? (v + r) % leaves : (v + leaves - r) % leaves;
  }

 private:
  unsigned k_;
  GKind kind_;
  std::vector<double> cum_;
};

inline Graph random_leaf_edges(const GenSpec& spec, bool rings, unsigned threads) {
  spec.validate();
  const unsigned k = spec.k;
  const Graph base = ringed_tree_graph(k, rings);
  GraphBuilder b(base.n());
  for (const auto& [u, v] : base.edges()) b.add_edge(u, v);
  const auto leaves = level_width(k - 1);
  const LeafLaw law(k, spec.g_kind, spec.alpha);
  auto leaf_id = [&](std::uint64_t p) { return vertex_id({k - 1, p}); };

  if (spec.independent) {
    // Each leaf v keeps every candidate u independently with probability
    // min(1, d0 * g(u, v) / rho_v).
    const double scale = spec.edges_per_node / law.total();
    std::vector<std::vector<std::uint64_t>> chosen(leaves);
    parallel_for(leaves, threads, [&](std::size_t v) {
      for (std::uint64_t u = 0; u < leaves; ++u) {
        if (u == v) continue;
        const double g = leaf_weight(spec.g_kind, spec.alpha, ring_distance(k - 1, u, v),
                                     lca_height({k - 1, u}, {k - 1, v}));
        Rng rng(stream_key(spec.seed, stream_tag::kTreePair, v, u));
        if (rng.uniform() < std::min(1.0, scale * g)) chosen[v].push_back(u);
      }
    });
    for (std::uint64_t v = 0; v < leaves; ++v)
      for (auto u : chosen[v]) b.add_edge(leaf_id(v), leaf_id(u));
    return std::move(b).build();
  }

  const unsigned draws = spec.edges_per_node;
  std::vector<std::uint64_t> targets(leaves * draws);
  parallel_for(leaves, threads, [&](std::size_t v) {
    for (unsigned j = 0; j < draws; ++j) {
      Rng rng(stream_key(spec.seed, stream_tag::kTreeDraw, v, j));
      targets[v * draws + j] = law.sample(v, rng);
    }
  });
  for (std::uint64_t v = 0; v < leaves; ++v)
    for (unsigned j = 0; j < draws; ++j) b.add_edge(leaf_id(v), leaf_id(targets[v * draws + j]));
  return std::move(b).build();
}

}  // namespace detail

inline Graph gen_rrt(const GenSpec& spec, unsigned threads = 1) {
  if (spec.family != Family::RRT) throw InputError("gen_rrt needs family rrt");
  return detail::random_leaf_edges(spec, true, threads);
}

// Same as RRT but on the plain binary tree (all ring edges removed).
inline Graph gen_rbt(const GenSpec& spec, unsigned threads = 1) {
  if (spec.family != Family::RBT) throw InputError("gen_rbt needs family rbt");
  return detail::random_leaf_edges(spec, false, threads);
}

struct Generated {
  Graph graph;
  std::vector<std::string> warnings;
};

inline Generated generate(const GenSpec& spec, unsigned threads = 1) {
  spec.validate();
  Generated out;
  switch (spec.family) {
    case Family::KSW: out.graph = gen_ksw(spec, threads); break;
    case Family::RT: out.graph = ringed_tree_graph(spec.k); break;
    case Family::RT_F: {
      auto r = gen_rt_f(spec.k, spec.f_kind, spec.f_param, spec.seed, spec.edges_per_node);
      if (r.no_extra_edges) out.warnings.push_back("f(n) < 1: no long-range edges added");
      out.graph = std::move(r.graph);
      break;
    }
    case Family::RRT: out.graph = gen_rrt(spec, threads); break;
    case Family::RBT: out.graph = gen_rbt(spec, threads); break;
  }
  return out;
}

}  // namespace gromov
