#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "delta.hpp"
#include "distance.hpp"
#include "error.hpp"
#include "generators.hpp"
#include "genspec.hpp"
#include "graph.hpp"
#include "ringed_tree.hpp"

namespace gromov {

inline constexpr int kSweepCsvVersion = 1;

// Largest base-grid distance spanned by any edge of a KSW graph. Grid edges
// span exactly 1, so this is the maximum over long-range edges (0 if none).
inline std::uint64_t max_long_range_span(const Graph& g, const GenSpec& spec) {
  if (spec.family != Family::KSW) throw InputError("max_long_range_span needs a KSW graph");
  spec.validate();
  if (g.n() != spec.n) throw InputError("graph size does not match the KSW spec");
  const GridIndexer grid(*integer_root(spec.n, spec.d), spec.d);
  std::uint64_t best = 0;
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) {
        const auto span = grid_distance(grid, u, v, spec.wrap);
        if (span > 1) best = std::max(best, span);
      }
  return best;
}

// Largest ring distance spanned by a same-level edge of a ringed-tree
// family graph (ring edges span 1).
inline std::uint64_t max_ring_span(const Graph& g) {
  std::uint64_t best = 0;
  for (Vertex u = 0; u < g.n(); ++u)
    for (Vertex v : g.neighbors(u)) {
      if (v <= u) continue;
      const auto a = address_of(u), b = address_of(v);
      if (a.level != b.level) continue;
      const auto span = ring_distance(a, b);
      if (span > 1) best = std::max(best, span);
    }
  return best;
}

// Parameter grid of one sweep, read from a JSON document:
//
//   {
//     "family": "rrt",
//     "k": [9, 10, 11],            // tree families; KSW uses "n"
//     "g_kind": ["exp_ring", "pow_ring"], "alpha": [1.0],
//     "seeds": [1, 2, 3],
//     "samples_per_graph": 1000000
//   }
//
// Optional keys: n, d, gamma, wrap, edges_per_node, independent, f_kind,
// f_param, exact_max_n (graphs up to this size get the exact scan instead of
// sampling; default 0), memory_cap_bytes, bfs_budget (max samples * n for the
// matrix-free path), timing (record runtime_ms; default false so reruns
// produce identical bytes), output.
struct SweepConfig {
  Family family = Family::KSW;
  std::vector<std::uint64_t> n;
  std::vector<unsigned> k;
  std::vector<unsigned> d{1};
  std::vector<double> gamma{0.0};
  std::vector<GKind> g_kind{GKind::EXP_RING};
  std::vector<double> alpha{1.0};
  FKind f_kind = FKind::LOG2;
  std::vector<double> f_param{1.0};
  std::vector<bool> wrap{true};
  std::vector<unsigned> edges_per_node{1};
  std::vector<bool> independent{false};
  std::vector<std::uint64_t> seeds;
  std::uint64_t samples_per_graph = 100'000;
  std::size_t exact_max_n = 0;
  std::size_t memory_cap_bytes = kDefaultMatrixCap;
  double bfs_budget = 2e9;
  bool timing = false;
  std::string output;

  // Every GenSpec of the grid, in the order rows are emitted: size outermost,
  // seed innermost.
  std::vector<GenSpec> expand() const {
    if (seeds.empty()) throw InputError("sweep needs a nonempty seed list");
    std::vector<GenSpec> out;
    auto push = [&](GenSpec s) {
      s.validate();
      out.push_back(s);
    };
    const bool ksw = family == Family::KSW;
    const bool tree_law = family == Family::RRT || family == Family::RBT;
    if (ksw ? n.empty() : k.empty()) throw InputError(ksw ? "KSW sweep needs 'n'" : "tree sweep needs 'k'");
    const std::size_t sizes = ksw ? n.size() : k.size();
    for (std::size_t si = 0; si < sizes; ++si)
      for (unsigned dim : ksw ? d : std::vector<unsigned>{1})
        for (double gam : ksw ? gamma : std::vector<double>{0.0})
          for (GKind g : tree_law ? g_kind : std::vector<GKind>{GKind::EXP_RING})
            for (double a : tree_law ? alpha : std::vector<double>{1.0})
              for (double fp : family == Family::RT_F ? f_param : std::vector<double>{1.0})
                for (bool w : ksw ? wrap : std::vector<bool>{true})
                  for (unsigned e : edges_per_node)
                    for (bool ind : independent)
                      for (std::uint64_t seed : seeds) {
                        GenSpec s;
                        s.family = family;
                        if (ksw) s.n = n[si];
                        else s.k = k[si];
                        s.d = dim;
                        s.gamma = gam;
                        s.g_kind = g;
                        s.alpha = a;
                        s.f_kind = f_kind;
                        s.f_param = fp;
                        s.wrap = w;
                        s.edges_per_node = e;
                        s.independent = ind;
                        s.seed = seed;
                        push(s);
                      }
    if (out.empty()) throw InputError("sweep grid is empty");
    return out;
  }
};

namespace detail {

template <class T, class Conv>
std::vector<T> json_list(const nlohmann::json& j, const char* key, Conv conv) {
  std::vector<T> out;
  const auto& v = j.at(key);
  if (v.is_array()) {
    if (v.empty()) throw InputError(std::string("sweep key '") + key + "' must not be empty");
    for (const auto& x : v) out.push_back(conv(x));
  } else {
    out.push_back(conv(v));
  }
  return out;
}

}  // namespace detail

inline SweepConfig parse_sweep_config(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("sweep config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("sweep config must be a JSON object");
  static const char* known[] = {"family", "n", "k", "d", "gamma", "g_kind", "alpha", "f_kind", "f_param", "wrap",
                                "edges_per_node", "independent", "seeds", "samples_per_graph", "exact_max_n",
                                "memory_cap_bytes", "bfs_budget", "timing", "output"};
  for (const auto& [key, _] : j.items())
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
      throw InputError("unknown sweep config key '" + key + "'");
  try {
    SweepConfig c;
    c.family = parse_family(j.at("family").get<std::string>());
    auto as_u64 = [](const nlohmann::json& x) { return x.get<std::uint64_t>(); };
    auto as_unsigned = [](const nlohmann::json& x) { return x.get<unsigned>(); };
    auto as_double = [](const nlohmann::json& x) { return x.get<double>(); };
    auto as_bool = [](const nlohmann::json& x) { return x.get<bool>(); };
    if (j.contains("n")) c.n = detail::json_list<std::uint64_t>(j, "n", as_u64);
    if (j.contains("k")) c.k = detail::json_list<unsigned>(j, "k", as_unsigned);
    if (j.contains("d")) c.d = detail::json_list<unsigned>(j, "d", as_unsigned);
    if (j.contains("gamma")) c.gamma = detail::json_list<double>(j, "gamma", as_double);
    if (j.contains("g_kind"))
      c.g_kind = detail::json_list<GKind>(j, "g_kind", [](const nlohmann::json& x) { return parse_g_kind(x.get<std::string>()); });
    if (j.contains("alpha")) c.alpha = detail::json_list<double>(j, "alpha", as_double);
    if (j.contains("f_kind")) c.f_kind = parse_f_kind(j.at("f_kind").get<std::string>());
    if (j.contains("f_param")) c.f_param = detail::json_list<double>(j, "f_param", as_double);
    if (j.contains("wrap")) c.wrap = detail::json_list<bool>(j, "wrap", as_bool);
    if (j.contains("edges_per_node")) c.edges_per_node = detail::json_list<unsigned>(j, "edges_per_node", as_unsigned);
    if (j.contains("independent")) c.independent = detail::json_list<bool>(j, "independent", as_bool);
    if (!j.contains("seeds") || !j["seeds"].is_array() || j["seeds"].empty())
      throw InputError("sweep config needs a nonempty 'seeds' list");
    c.seeds = detail::json_list<std::uint64_t>(j, "seeds", as_u64);
    if (j.contains("samples_per_graph")) c.samples_per_graph = j["samples_per_graph"].get<std::uint64_t>();
    if (j.contains("exact_max_n")) c.exact_max_n = j["exact_max_n"].get<std::size_t>();
    if (j.contains("memory_cap_bytes")) c.memory_cap_bytes = j["memory_cap_bytes"].get<std::size_t>();
    if (j.contains("bfs_budget")) c.bfs_budget = j["bfs_budget"].get<double>();
    if (j.contains("timing")) c.timing = j["timing"].get<bool>();
    if (j.contains("output")) c.output = j["output"].get<std::string>();
    if (c.samples_per_graph == 0) throw InputError("samples_per_graph must be >= 1");
    c.expand();  // validates every induced GenSpec
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad sweep config value: ") + e.what());
  }
}

struct SweepRow {
  GenSpec spec;
  std::uint64_t samples = 0;  // 0 when delta was computed exactly
  std::uint32_t two_delta_hat = 0;
  std::uint32_t diameter = 0;
  std::uint64_t max_long_range_span = 0;
  std::int64_t runtime_ms = 0;
  bool skipped = false;
  std::string skip_reason;

  double delta_hat() const { return two_delta_hat / 2.0; }
};

// Generates and measures one grid point.
inline SweepRow measure(const GenSpec& spec, const SweepConfig& cfg, unsigned threads) {
  SweepRow row;
  row.spec = spec;
  const auto start = std::chrono::steady_clock::now();
  const Graph g = generate(spec, threads).graph;
  row.max_long_range_span = spec.family == Family::KSW ? max_long_range_span(g, spec) : max_ring_span(g);
  const std::size_t n = g.n();
  const std::uint64_t sample_seed = stream_key(spec.seed, 0x53, n);
  if (n <= cfg.exact_max_n) {
    const auto m = all_pairs(g, threads, cfg.memory_cap_bytes);
    const auto r = exact_delta(m, threads, cfg.exact_max_n);
    row.two_delta_hat = r.two_delta;
    row.diameter = r.diameter;
  } else if (DistanceMatrix::required_bytes(n) <= cfg.memory_cap_bytes) {
    const auto m = all_pairs(g, threads, cfg.memory_cap_bytes);
    const auto r = sampled_delta(m, cfg.samples_per_graph, sample_seed, threads);
    row.samples = cfg.samples_per_graph;
    row.two_delta_hat = r.two_delta;
    row.diameter = r.diameter;
  } else if (static_cast<double>(cfg.samples_per_graph) * static_cast<double>(n) <= cfg.bfs_budget) {
    const auto r = sampled_delta_bfs(g, cfg.samples_per_graph, sample_seed, threads);
    row.samples = cfg.samples_per_graph;
    row.two_delta_hat = r.two_delta;
    row.diameter = r.diameter;
  } else {
    row.skipped = true;
    row.skip_reason = "n=" + std::to_string(n) + " exceeds the matrix cap and the BFS sampling budget";
  }
  if (cfg.timing)
    row.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return row;
}

// One row per (grid point, seed), in SweepConfig::expand order. Rows run one
// after another with `threads` workers inside each; all randomness is keyed
// by the GenSpec, so the output does not depend on the thread count.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg, unsigned threads = 0,
                                       const std::function<void(const SweepRow&)>& on_row = {}) {
  std::vector<SweepRow> rows;
  for (const auto& spec : cfg.expand()) {
    rows.push_back(measure(spec, cfg, threads));
    if (on_row) on_row(rows.back());
  }
  return rows;
}

inline constexpr const char* kSweepCsvHeader =
    "family,n,k,d,gamma,g_kind,alpha,wrap,edges_per_node,independent,seed,samples,two_delta_hat,diameter,"
    "max_long_range_span,runtime_ms";

// Fields that do not apply to a family are left empty, as are the
// measurement cells of skipped rows.
inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.spec;
    const bool ksw = s.family == Family::KSW;
    const bool law = s.uses_alpha();
    out << to_string(s.family) << ',' << s.vertex_count() << ',' << (ksw ? "" : std::to_string(s.k)) << ','
        << (ksw ? std::to_string(s.d) : "") << ',' << (ksw ? format_real(s.gamma) : "") << ','
        << (law ? to_string(s.g_kind) : "") << ',' << (law ? format_real(s.alpha) : "") << ','
        << (ksw ? (s.wrap ? "true" : "false") : "") << ',' << s.edges_per_node << ','
        << (s.independent ? "true" : "false") << ',' << s.seed << ',';
    if (r.skipped) {
      out << ",,,,\n";
      continue;
    }
    out << r.samples << ',' << r.two_delta_hat << ',' << r.diameter << ',' << r.max_long_range_span << ','
        << r.runtime_ms << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Scaling fits

enum class XTransform { LOG_N, LOGLOG_N, LOG_LOG_SPACE };

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

inline double median(std::vector<double> v) {
  if (v.empty()) throw InputError("median of an empty set");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : (v[h - 1] + v[h]) / 2.0;
}

// Ordinary least squares of the per-n median delta_hat (in units of delta)
// against log2 n (LOG_N) or log2 log2 n (LOGLOG_N); LOG_LOG_SPACE regresses
// ln(median delta_hat) on ln n, so the slope estimates a polynomial exponent.
inline ScalingFit fit_scaling(const std::vector<SweepRow>& rows, XTransform transform) {
  std::map<std::uint64_t, std::vector<double>> by_n;
  for (const auto& r : rows)
    if (!r.skipped) by_n[r.spec.vertex_count()].push_back(r.delta_hat());
  if (by_n.size() < 3) throw InputError("scaling fit needs at least 3 distinct sizes");
  std::vector<double> xs, ys;
  for (const auto& [n, values] : by_n) {
    const double nn = static_cast<double>(n);
    const double y = median(values);
    switch (transform) {
      case XTransform::LOG_N:
        xs.push_back(std::log2(nn));
        ys.push_back(y);
        break;
      case XTransform::LOGLOG_N:
        if (nn <= 2) throw InputError("log log n undefined for n <= 2");
        xs.push_back(std::log2(std::log2(nn)));
        ys.push_back(y);
        break;
      case XTransform::LOG_LOG_SPACE:
        if (y <= 0) throw InputError("log-log fit needs positive delta medians");
        xs.push_back(std::log(nn));
        ys.push_back(std::log(y));
        break;
    }
  }
  const double count = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx <= 0) throw InputError("degenerate x values in scaling fit");
  ScalingFit fit;
  fit.points = xs.size();
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace gromov
