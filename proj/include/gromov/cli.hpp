#pragma once

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "delta.hpp"
#include "distance.hpp"
#include "edge_list.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "generators.hpp"
#include "genspec.hpp"
#include "ringed_geometry.hpp"
#include "version.hpp"

namespace gromov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitVerifyFailed = 2;

inline std::string version_text() {
  return std::string("gromov ") + GROMOV_VERSION + " (edge-list format " + std::to_string(kEdgeListVersion) +
         ", genspec " + std::to_string(kGenSpecVersion) + ", sweep csv " + std::to_string(kSweepCsvVersion) + ")";
}

inline nlohmann::json delta_record(const DeltaReport& r, std::int64_t runtime_ms) {
  nlohmann::json j;
  j["two_delta"] = r.two_delta;
  j["delta"] = r.delta();
  j["method"] = to_string(r.method);
  j["witness"] = r.witness;
  j["diameter"] = r.diameter;
  if (r.method == DeltaMethod::SAMPLED) {
    j["samples"] = r.samples;
    j["seed"] = r.seed;
  }
  j["runtime_ms"] = runtime_ms;
  return j;
}

inline std::string embed_csv(unsigned k) {
  if (k < 1 || k > 31) throw InputError("embed needs 1 <= k <= 31");
  std::string out = "id,level,pos,re,im\n";
  for (Vertex v = 0; v < ringed_tree_size(k); ++v) {
    const auto a = address_of(v);
    const auto p = poincare_embed(a);
    out += std::to_string(v) + ',' + std::to_string(a.level) + ',' + std::to_string(a.pos) + ',' +
           format_real(p.re) + ',' + format_real(p.im) + '\n';
  }
  return out;
}

// Parses argv and runs one subcommand. Data goes to `out`, diagnostics to
// `err`. Returns the process exit status.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gromov hyperbolicity of small-world graphs and ringed trees", "gromov"};
  app.fallthrough();
  app.require_subcommand(0, 1);

  std::uint64_t seed = 1;
  unsigned threads = 0;
  bool quiet = false;
  bool version = false;
  app.add_option("--seed", seed, "Random seed");
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");
  app.add_flag("--quiet", quiet, "Suppress informational messages");
  app.add_flag("--version", version, "Print version and file format versions");

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a graph and write it as an edge list");
  std::string family_name, spec_in, gen_out, spec_out;
  GenSpec flags;
  std::string g_kind_name = "exp_ring", f_kind_name = "log2";
  bool no_wrap = false;
  gen->add_option("--family", family_name, "ksw | rt | rt_f | rrt | rbt");
  gen->add_option("--spec", spec_in, "Read the model from a GenSpec document instead of flags");
  gen->add_option("--n", flags.n, "KSW vertex count");
  gen->add_option("--k", flags.k, "Level count (tree families)");
  gen->add_option("--d", flags.d, "KSW grid dimension");
  gen->add_option("--gamma", flags.gamma, "KSW exponent");
  gen->add_option("--g-kind", g_kind_name, "exp_ring | pow_ring | lca_height");
  gen->add_option("--alpha", flags.alpha, "Decay parameter for RRT/RBT");
  gen->add_option("--f-kind", f_kind_name, "const | log2 | pow (RT_F span bound)");
  gen->add_option("--f-param", flags.f_param, "Parameter of the span bound");
  gen->add_flag("--no-wrap", no_wrap, "KSW grid without wrap-around");
  gen->add_option("--edges-per-node", flags.edges_per_node, "Long-range draws per node");
  gen->add_flag("--independent", flags.independent, "Independent long-range edges");
  gen->add_option("--out", gen_out, "Edge-list output path (default: standard output)");
  gen->add_option("--spec-out", spec_out, "Also write the GenSpec document here");

  // delta
  auto* del = app.add_subcommand("delta", "Gromov delta of an edge-list graph");
  std::string delta_in, method = "exact";
  std::uint64_t samples = 100'000;
  std::size_t max_n = kDefaultExactMaxN;
  del->add_option("file", delta_in, "Edge-list file")->required();
  del->add_option("--method", method, "exact | sample")->check(CLI::IsMember({"exact", "sample"}));
  del->add_option("--samples", samples, "Quadruples to sample");
  del->add_option("--max-n", max_n, "Largest n accepted by the exact scan");

  // embed
  auto* emb = app.add_subcommand("embed", "Poincare-disk coordinates of RT(k) as CSV");
  unsigned embed_k = 0;
  std::string embed_out;
  emb->add_option("--k", embed_k, "Level count")->required();
  emb->add_option("--out", embed_out, "CSV output path (default: standard output)");

  // verify
  auto* ver = app.add_subcommand("verify", "Check the ringed-tree quasi-isometry and lemma bounds");
  unsigned verify_k = 0;
  LemmaOptions lemma_opt;
  ver->add_option("--k", verify_k, "Level count")->required();
  ver->add_option("--pair-samples", lemma_opt.pair_samples, "Sampled pairs for the rectification check");
  ver->add_option("--triple-samples", lemma_opt.triple_samples, "Sampled canonical triangles");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run a parameter sweep and write CSV rows");
  std::string config_path, csv_out;
  exp->add_option("--config", config_path, "Sweep configuration (JSON)")->required();
  exp->add_option("--out", csv_out, "CSV output path (default: config 'output' or standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }

  if (version) {
    out << version_text() << '\n';
    return kExitOk;
  }
  auto info = [&](const std::string& msg) {
    if (!quiet) err << msg << '\n';
  };

  try {
    if (*gen) {
      GenSpec spec;
      if (!spec_in.empty()) {
        spec = read_genspec(read_text_file(spec_in));
      } else {
        if (family_name.empty()) throw InputError("generate needs --family or --spec");
        spec = flags;
        spec.family = parse_family(family_name);
        spec.g_kind = parse_g_kind(g_kind_name);
        spec.f_kind = parse_f_kind(f_kind_name);
        spec.wrap = !no_wrap;
        spec.seed = seed;
      }
      const auto result = generate(spec, threads);
      for (const auto& w : result.warnings) err << "warning: " << w << '\n';
      const auto text = write_edge_list(result.graph, spec);
      if (gen_out.empty()) out << text;
      else write_text_file(gen_out, text);
      if (!spec_out.empty()) write_text_file(spec_out, write_genspec(spec));
      info("generated " + std::string(to_string(spec.family)) + ": n=" + std::to_string(result.graph.n()) +
           " edges=" + std::to_string(result.graph.edge_count()));
      return kExitOk;
    }
    if (*del) {
      const auto file = load_edge_list(delta_in);
      const auto start = std::chrono::steady_clock::now();
      if (method == "exact" && file.graph.n() > max_n)
        throw InputError("exact delta refuses n=" + std::to_string(file.graph.n()) + " (> --max-n " +
                         std::to_string(max_n) + ")");
      const auto m = all_pairs(file.graph, threads);
      const auto report = method == "exact" ? exact_delta(m, threads, max_n) : sampled_delta(m, samples, seed, threads);
      const auto ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      out << delta_record(report, ms).dump() << '\n';
      return kExitOk;
    }
    if (*emb) {
      const auto csv = embed_csv(embed_k);
      if (embed_out.empty()) out << csv;
      else write_text_file(embed_out, csv);
      return kExitOk;
    }
    if (*ver) {
      lemma_opt.seed = seed;
      lemma_opt.threads = threads;
      const auto qi = verify_quasi_isometry(verify_k, threads);
      out << "quasi-isometry k=" << verify_k << " pairs=" << qi.pairs_checked << " violations=" << qi.violations
          << " worst_margin=" << format_real(qi.worst_margin) << (qi.ok() ? " PASS" : " FAIL") << '\n';
      const auto lemmas = verify_structural_lemmas(verify_k, lemma_opt);
      for (const auto* c : lemmas.checks()) {
        out << c->name << ": checked=" << c->checked << " failures=" << c->failures << (c->ok() ? " PASS" : " FAIL");
        if (!c->ok()) out << " witness=" << c->witness;
        out << '\n';
      }
      return qi.ok() && lemmas.ok() ? kExitOk : kExitVerifyFailed;
    }
    if (*exp) {
      const auto cfg = parse_sweep_config(read_text_file(config_path));
      const auto rows = run_sweep(cfg, threads, [&](const SweepRow& r) {
        if (r.skipped) err << "skipped " << to_string(r.spec.family) << " n=" << r.spec.vertex_count() << ": "
                           << r.skip_reason << '\n';
      });
      const auto csv = sweep_csv(rows);
      const std::string path = !csv_out.empty() ? csv_out : cfg.output;
      if (path.empty()) out << csv;
      else write_text_file(path, csv);
      info("wrote " + std::to_string(rows.size()) + " rows");
      return kExitOk;
    }
    out << app.help();
    return kExitOk;
  } catch (const std::exception& e) {
    // InputError, DomainError and CapacityError all land here.
    err << "error: " << e.what() << '\n';
  }
  return kExitError;
}

}  // namespace gromov::cli
