#include <gtest/gtest.h>

#include <cmath>

#include "gromov/experiments.hpp"

namespace gromov {
namespace {

SweepRow synthetic(std::uint64_t n, std::uint32_t two_delta, std::uint64_t seed = 0) {
  SweepRow r;
  r.spec.family = Family::KSW;
  r.spec.n = n;
  r.spec.seed = seed;
  r.two_delta_hat = two_delta;
  r.diameter = 1000;
  return r;
}

TEST(SweepConfig, GridCardinality) {
  const auto cfg = parse_sweep_config(R"({"family":"ksw","n":[1024,4096,16384],"d":[1],"gamma":[0,1,4],
                                          "seeds":[1,2,3,4,5,6,7,8,9,10]})");
  const auto specs = cfg.expand();
  ASSERT_EQ(specs.size(), 90u);
  EXPECT_EQ(specs.front().n, 1024u);
  EXPECT_EQ(specs.front().seed, 1u);
  EXPECT_EQ(specs[1].seed, 2u);
  EXPECT_EQ(specs[10].gamma, 1.0);
  EXPECT_EQ(specs.back().n, 16384u);

  const auto tree = parse_sweep_config(R"({"family":"rrt","k":[9,10,11,12,13],
                                           "g_kind":["exp_ring","pow_ring","lca_height"],"seeds":[1,2]})");
  EXPECT_EQ(tree.expand().size(), 30u);
}

TEST(SweepConfig, Errors) {
  EXPECT_THROW(parse_sweep_config(R"({"family":"ksw","n":[64],"seeds":[]})"), InputError);
  EXPECT_THROW(parse_sweep_config(R"({"family":"ksw","n":[64]})"), InputError);
  EXPECT_THROW(parse_sweep_config(R"({"family":"ksw","n":[64],"seeds":[1],"colour":"red"})"), InputError);
  EXPECT_THROW(parse_sweep_config(R"({"family":"ksw","n":[10],"d":[2],"seeds":[1]})"), InputError);
  EXPECT_THROW(parse_sweep_config(R"({"family":"rrt","k":[5],"alpha":[0],"seeds":[1]})"), InputError);
  EXPECT_THROW(parse_sweep_config(R"({"family":"ksw","n":[64],"seeds":[1],"samples_per_graph":0})"), InputError);
  EXPECT_THROW(parse_sweep_config(R"({"family":"ksw","n":"64","seeds":[1]})"), InputError);
  EXPECT_THROW(parse_sweep_config("{not json"), InputError);
  EXPECT_THROW(parse_sweep_config(R"({"family":"rt","seeds":[1]})"), InputError);
  SweepConfig empty;
  empty.n = {64};
  EXPECT_THROW(empty.expand(), InputError);
}

TEST(FitScaling, SyntheticLogarithmicRows) {
  std::vector<SweepRow> rows;
  for (unsigned e = 4; e <= 12; e += 2)
    for (std::uint64_t seed = 0; seed < 3; ++seed) rows.push_back(synthetic(std::uint64_t{1} << e, 4 * e, seed));
  const auto fit = fit_scaling(rows, XTransform::LOG_N);
  EXPECT_NEAR(fit.slope, 2.0, 1e-9);
  EXPECT_NEAR(fit.intercept, 0.0, 1e-9);
  EXPECT_NEAR(fit.r2, 1.0, 1e-12);
  EXPECT_EQ(fit.points, 5u);
}

TEST(FitScaling, ConstantRowsHaveZeroSlope) {
  std::vector<SweepRow> rows;
  for (std::uint64_t n : {16u, 64u, 256u, 1024u}) rows.push_back(synthetic(n, 6));
  for (auto t : {XTransform::LOG_N, XTransform::LOGLOG_N, XTransform::LOG_LOG_SPACE})
    EXPECT_NEAR(fit_scaling(rows, t).slope, 0.0, 1e-12);
}

TEST(FitScaling, PowerLawExponent) {
  std::vector<SweepRow> rows;
  for (std::uint64_t n : {64u, 512u, 4096u, 32768u}) {
    const double delta = std::pow(static_cast<double>(n), 2.0 / 3.0);
    rows.push_back(synthetic(n, static_cast<std::uint32_t>(std::lround(2 * delta))));
  }
  EXPECT_NEAR(fit_scaling(rows, XTransform::LOG_LOG_SPACE).slope, 2.0 / 3.0, 1e-3);
}

TEST(FitScaling, UsesMediansAndRejectsDegenerateInput) {
  std::vector<SweepRow> rows;
  for (std::uint64_t n : {16u, 256u, 65536u}) {
    const double l = std::log2(static_cast<double>(n));
    rows.push_back(synthetic(n, static_cast<std::uint32_t>(2 * l)));
    rows.push_back(synthetic(n, static_cast<std::uint32_t>(2 * l) + 1000));  // outlier above
    rows.push_back(synthetic(n, static_cast<std::uint32_t>(2 * l) - 2));      // below
  }
  EXPECT_NEAR(fit_scaling(rows, XTransform::LOG_N).slope, 1.0, 1e-9);
  std::vector<SweepRow> two{synthetic(16, 2), synthetic(16, 4), synthetic(32, 2)};
  EXPECT_THROW(fit_scaling(two, XTransform::LOG_N), InputError);
  std::vector<SweepRow> zero{synthetic(16, 0), synthetic(32, 2), synthetic(64, 2)};
  EXPECT_THROW(fit_scaling(zero, XTransform::LOG_LOG_SPACE), InputError);
  EXPECT_THROW(median({}), InputError);
  EXPECT_DOUBLE_EQ(median({3, 1, 2, 10}), 2.5);
}

TEST(RunSweep, DeterministicAcrossRunsAndThreads) {
  const auto cfg = parse_sweep_config(R"({"family":"ksw","n":[64,256],"d":[1,2],"gamma":[0,2.5],
                                          "seeds":[3,4],"samples_per_graph":20000,"exact_max_n":64})");
  const auto a = sweep_csv(run_sweep(cfg, 1));
  EXPECT_EQ(a, sweep_csv(run_sweep(cfg, 4)));
  EXPECT_EQ(a, sweep_csv(run_sweep(cfg, 1)));
  const auto trees = parse_sweep_config(R"({"family":"rbt","k":[5,7],"g_kind":["pow_ring","lca_height"],
                                            "seeds":[1],"samples_per_graph":5000})");
  EXPECT_EQ(sweep_csv(run_sweep(trees, 1)), sweep_csv(run_sweep(trees, 3)));
}

TEST(RunSweep, RowsRespectDiameter) {
  for (const char* text :
       {R"({"family":"ksw","n":[256],"gamma":[0,1,4],"seeds":[1,2,3],"samples_per_graph":50000})",
        R"({"family":"rrt","k":[6,8],"g_kind":["exp_ring","pow_ring","lca_height"],"seeds":[1,2]})",
        R"({"family":"rt_f","k":[6,8],"f_kind":"log2","seeds":[5],"exact_max_n":300})",
        R"({"family":"rt","k":[3,5],"seeds":[0],"exact_max_n":100})"}) {
    const auto rows = run_sweep(parse_sweep_config(text), 2);
    for (const auto& r : rows) {
      EXPECT_FALSE(r.skipped);
      EXPECT_LE(r.two_delta_hat, r.diameter);
      EXPECT_EQ(r.runtime_ms, 0);
    }
  }
}

TEST(RunSweep, ExactPathForSmallGraphs) {
  const auto rows = run_sweep(parse_sweep_config(R"({"family":"rt","k":[4,5,6],"seeds":[1],"exact_max_n":100})"));
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.samples, 0u);
    EXPECT_EQ(r.two_delta_hat, exact_delta(all_pairs(ringed_tree_graph(r.spec.k))).two_delta);
  }
}

TEST(RunSweep, BfsFallbackAndSkips) {
  auto cfg = parse_sweep_config(R"({"family":"ksw","n":[512],"gamma":[1],"seeds":[7],"samples_per_graph":4000})");
  const auto matrix_row = run_sweep(cfg).front();
  cfg.memory_cap_bytes = 1000;
  const auto bfs_row = run_sweep(cfg).front();
  EXPECT_FALSE(bfs_row.skipped);
  EXPECT_EQ(bfs_row.two_delta_hat, matrix_row.two_delta_hat);
  EXPECT_LE(bfs_row.diameter, matrix_row.diameter);
  cfg.bfs_budget = 1000;
  const auto rows = run_sweep(cfg);
  EXPECT_TRUE(rows.front().skipped);
  EXPECT_FALSE(rows.front().skip_reason.empty());
  const auto csv = sweep_csv(rows);
  EXPECT_EQ(csv, std::string(kSweepCsvHeader) + "\nksw,512,,1,1,,,true,1,false,7,,,,,\n");
}

TEST(RunSweep, CsvLayout) {
  const auto rows = run_sweep(parse_sweep_config(R"({"family":"rrt","k":[4],"g_kind":["pow_ring"],"alpha":[1.5],
                                                     "seeds":[2],"exact_max_n":20})"));
  const auto csv = sweep_csv(rows);
  const auto& r = rows.front();
  EXPECT_EQ(csv, std::string(kSweepCsvHeader) + "\nrrt,15,4,,,pow_ring,1.5,,1,false,2,0," +
                     std::to_string(r.two_delta_hat) + "," + std::to_string(r.diameter) + "," +
                     std::to_string(r.max_long_range_span) + ",0\n");
}

TEST(RunSweep, TimingIsOptIn) {
  auto cfg = parse_sweep_config(R"({"family":"ksw","n":[4096],"gamma":[2],"seeds":[1],"samples_per_graph":200000,
                                    "timing":true})");
  EXPECT_GE(run_sweep(cfg).front().runtime_ms, 0);
}

TEST(LongRangeSpan, Examples) {
  GenSpec s;
  s.family = Family::KSW;
  s.n = 1024;
  s.d = 1;
  s.seed = 3;
  GraphBuilder ring(1024);
  for (Vertex i = 0; i < 1024; ++i) ring.add_edge(i, (i + 1) % 1024);
  EXPECT_EQ(max_long_range_span(std::move(ring).build(), s), 0u);
  s.gamma = 0;
  EXPECT_GE(max_long_range_span(generate(s).graph, s), 500u);
  s.gamma = 4;
  EXPECT_LE(max_long_range_span(generate(s).graph, s), 1024u / 2);
  GenSpec t;
  t.family = Family::RT;
  t.k = 4;
  EXPECT_THROW(max_long_range_span(ringed_tree_graph(4), t), InputError);
  EXPECT_THROW(max_long_range_span(ringed_tree_graph(4), s), InputError);
}

TEST(LongRangeSpan, RingSpanOfTreeFamilies) {
  EXPECT_EQ(max_ring_span(ringed_tree_graph(6)), 0u);  // ring edges do not count
  GenSpec s;
  s.family = Family::RBT;
  s.k = 6;
  s.g_kind = GKind::LCA_HEIGHT;
  s.seed = 2;
  EXPECT_GE(max_ring_span(generate(s).graph), 1u);
}

}  // namespace
}  // namespace gromov
