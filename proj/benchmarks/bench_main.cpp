#include <benchmark/benchmark.h>

#include "hetgraph/ingest.hpp"
#include "hetgraph/metrics.hpp"
#include "hetgraph/report.hpp"
#include "hetgraph/synth.hpp"

using namespace hetgraph;

namespace {

const Dataset& direct_graph() {
  static const Dataset d = generate_planted(PlantedConfig::balanced(2, 100000, 1000000, 0.3, 1));
  return d;
}

const Dataset& hub_graph() {
  static const Dataset d = [] {
    PlantedConfig cfg = PlantedConfig::balanced(4, 50000, 0, 0.6, 8);
    cfg.hubs.push_back({"venue", "member", 50000, 9});
    cfg.hubs.push_back({"venue", "leads", 50000, 9});
    cfg.context.push_back({"venue", "region", "located_in", 1000, 2});
    return generate_planted(cfg);
  }();
  return d;
}

const Metapath kCoMember({{0, StepDirection::Forward}, {0, StepDirection::Reverse}});

void BM_InduceDirect(benchmark::State& state) {
  const Dataset& d = direct_graph();
  InductionOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(induce_subgraph(d.graph, d.labels, Metapath({{0, StepDirection::Forward}}), opt));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.graph.edge_count(0)));
}
BENCHMARK(BM_InduceDirect)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

// dense_fraction 0 forces the bitset path, a huge value forces sort-and-merge.
void BM_InduceTwoHop(benchmark::State& state) {
  const Dataset& d = hub_graph();
  InductionOptions opt;
  opt.dense_fraction = state.range(0) ? 0.0 : 1e12;
  for (auto _ : state) benchmark::DoNotOptimize(induce_subgraph(d.graph, d.labels, kCoMember, opt));
}
BENCHMARK(BM_InduceTwoHop)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_InduceWalkCounts(benchmark::State& state) {
  const Dataset& d = hub_graph();
  InductionOptions opt;
  opt.count_multiplicity = true;
  for (auto _ : state) benchmark::DoNotOptimize(induce_subgraph(d.graph, d.labels, kCoMember, opt));
}
BENCHMARK(BM_InduceWalkCounts)->Unit(benchmark::kMillisecond);

void BM_EdgeMetrics(benchmark::State& state) {
  const Dataset& d = hub_graph();
  const InducedGraph ig = induce_subgraph(d.graph, d.labels, kCoMember);
  for (auto _ : state) {
    benchmark::DoNotOptimize(edge_heterophily(ig, d.labels));
    benchmark::DoNotOptimize(node_heterophily(ig, d.labels));
    benchmark::DoNotOptimize(adjusted_heterophily(ig, d.labels));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(ig.arcs()));
}
BENCHMARK(BM_EdgeMetrics)->Unit(benchmark::kMillisecond);

void BM_FullReport(benchmark::State& state) {
  const Dataset& d = hub_graph();
  const MetapathSet set = enumerate_metapaths(d.graph.schema(), 0, 2);
  MetricOptions opt;
  opt.induction.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_metric_report(d.graph, d.labels, set, opt));
}
BENCHMARK(BM_FullReport)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_EstimateEdgeHeterophily(benchmark::State& state) {
  const Dataset& d = direct_graph();
  const InducedGraph ig = induce_subgraph(d.graph, d.labels, Metapath({{0, StepDirection::Forward}}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_edge_heterophily(ig, d.labels, static_cast<std::uint64_t>(state.range(0)), 7));
  }
}
BENCHMARK(BM_EstimateEdgeHeterophily)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_CacheEncode(benchmark::State& state) {
  const Dataset& d = direct_graph();
  std::size_t bytes = 0;
  for (auto _ : state) {
    const auto buf = encode_cache(d);
    bytes = buf.size();
    benchmark::DoNotOptimize(buf.data());
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(bytes));
}
BENCHMARK(BM_CacheEncode)->Unit(benchmark::kMillisecond);

void BM_CacheDecode(benchmark::State& state) {
  const auto buf = encode_cache(direct_graph());
  for (auto _ : state) benchmark::DoNotOptimize(decode_cache(buf));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(buf.size()));
}
BENCHMARK(BM_CacheDecode)->Unit(benchmark::kMillisecond);

void BM_Generate(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(generate_planted(PlantedConfig::balanced(2, 100000, 1000000, 0.3, 1)));
  }
}
BENCHMARK(BM_Generate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
