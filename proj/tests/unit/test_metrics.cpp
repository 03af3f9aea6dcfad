#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "hetgraph/errors.hpp"
#include "hetgraph/metrics.hpp"
#include "hetgraph/synth.hpp"
#include "oracles.hpp"

using namespace hetgraph;
using hgtest::direct;
using hgtest::homogeneous;

namespace {

constexpr ClassId A = 0;
constexpr ClassId B = 1;

Dataset k4() { return homogeneous(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}, {A, A, B, B}, 2); }

struct Homog {
  std::uint64_t n;
  std::vector<std::pair<LocalId, LocalId>> edges;
  std::vector<ClassId> labels;
  std::uint32_t classes;
};

Homog random_homogeneous(std::mt19937_64& rng, std::uint64_t max_n = 50) {
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); };
  Homog h;
  h.n = pick(5, max_n);
  h.classes = static_cast<std::uint32_t>(pick(1, 5));
  for (std::uint64_t v = 0; v < h.n; ++v) h.labels.push_back(static_cast<ClassId>(pick(0, h.classes - 1)));
  const auto m = pick(1, 3 * h.n);
  for (std::uint64_t e = 0; e < m; ++e) {
    h.edges.emplace_back(static_cast<LocalId>(pick(0, h.n - 1)), static_cast<LocalId>(pick(0, h.n - 1)));
  }
  return h;
}

Dataset build(const Homog& h) { return homogeneous(h.n, h.edges, h.labels, h.classes); }

}  // namespace

TEST(EdgeHeterophily, SmallCases) {
  EXPECT_DOUBLE_EQ(edge_heterophily(direct(homogeneous(2, {{0, 1}}, {A, B}, 2)), LabelMap(0, 2, {A, B})), 1.0);
  const Dataset homophilic = homogeneous(4, {{0, 1}, {2, 3}}, {A, A, B, B}, 2);
  EXPECT_DOUBLE_EQ(edge_heterophily(direct(homophilic), homophilic.labels), 0.0);
  const Dataset d = k4();
  EXPECT_NEAR(edge_heterophily(direct(d), d.labels), 2.0 / 3.0, 1e-12);
}

TEST(EdgeHeterophily, EmptyGraphThrows) {
  const Dataset d = homogeneous(3, {}, {A, B, A}, 2);
  EXPECT_THROW(edge_heterophily(direct(d), d.labels), EmptyInducedGraph);
  EXPECT_THROW(node_heterophily(direct(d), d.labels), EmptyInducedGraph);
  EXPECT_THROW(class_degree_profile(direct(d), d.labels), EmptyInducedGraph);
}

TEST(NodeHeterophily, StarTriangleClique) {
  const Dataset star = homogeneous(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}, {A, B, B, B, B}, 2);
  EXPECT_DOUBLE_EQ(node_heterophily(direct(star), star.labels), 1.0);
  const Dataset tri = homogeneous(3, {{0, 1}, {1, 2}, {0, 2}}, {A, A, B}, 2);
  EXPECT_NEAR(node_heterophily(direct(tri), tri.labels), 2.0 / 3.0, 1e-12);
  const Dataset clique = homogeneous(3, {{0, 1}, {1, 2}, {0, 2}}, {B, B, B}, 2);
  EXPECT_DOUBLE_EQ(node_heterophily(direct(clique), clique.labels), 0.0);
}

TEST(NodeHeterophily, IsolatedNodesExcluded) {
  const Dataset d = homogeneous(4, {{0, 1}}, {A, B, A, A}, 2);
  const NodeHeterophily nh = node_heterophily_detail(direct(d), d.labels);
  EXPECT_DOUBLE_EQ(nh.value, 1.0);
  EXPECT_EQ(nh.contributing_nodes, 2u);
  EXPECT_EQ(nh.isolated_nodes, 2u);
}

TEST(ClassDegreeProfile, K4PathAndSingleClass) {
  const Dataset d = k4();
  const ClassDegreeTable t = class_degree_profile(direct(d), d.labels);
  EXPECT_EQ(t.class_degree, (std::vector<double>{6, 6}));
  EXPECT_EQ(t.endpoint_total, 12.0);
  EXPECT_NEAR(t.collision_mass, 0.5, 1e-12);

  const Dataset path = homogeneous(3, {{0, 1}, {1, 2}}, {A, B, A}, 2);
  const ClassDegreeTable tp = class_degree_profile(direct(path), path.labels);
  EXPECT_EQ(tp.class_degree, (std::vector<double>{2, 2}));
  EXPECT_NEAR(tp.collision_mass, 0.5, 1e-12);

  const Dataset one = homogeneous(3, {{0, 1}, {1, 2}}, {A, A, A}, 1);
  const ClassDegreeTable t1 = class_degree_profile(direct(one), one.labels);
  EXPECT_EQ(t1.class_degree[0], 4.0);
  EXPECT_DOUBLE_EQ(t1.collision_mass, 1.0);
  EXPECT_TRUE(t1.degenerate());
}

TEST(AdjustedHeterophily, K4AndDegenerate) {
  const Dataset d = k4();
  EXPECT_NEAR(adjusted_heterophily(direct(d), d.labels), 4.0 / 3.0, 1e-12);
  const Dataset homophilic = homogeneous(4, {{0, 1}, {2, 3}}, {A, A, B, B}, 2);
  EXPECT_NEAR(adjusted_heterophily(direct(homophilic), homophilic.labels), 0.0, 1e-12);
  // Two classes declared, only one present on the edges.
  const Dataset single = homogeneous(4, {{0, 1}, {1, 2}}, {A, A, A, B}, 2);
  EXPECT_THROW(adjusted_heterophily(direct(single), single.labels), DegenerateClassDistribution);
}

TEST(AdjustedHeterophily, SelfLoopCountsTwiceInDegree) {
  const Dataset d = homogeneous(2, {{0, 0}, {0, 1}}, {A, B}, 2);
  InductionOptions keep;
  keep.keep_self_loops = true;
  const InducedGraph ig = direct(d, keep);
  EXPECT_EQ(ig.m, 2u);
  // One loop at A and one A-B edge: endpoints A,A,A,B.
  EXPECT_NEAR(edge_heterophily(ig, d.labels), 0.5, 1e-12);
  const ClassDegreeTable t = class_degree_profile(ig, d.labels);
  EXPECT_EQ(t.class_degree, (std::vector<double>{3, 1}));
}

TEST(Aggregate, MeanMaxAndEmpty) {
  const std::vector<double> mlh{0.2, 0.6};
  EXPECT_NEAR(aggregate(mlh, AggregationKind::Mean), 0.4, 1e-15);
  EXPECT_DOUBLE_EQ(aggregate(mlh, AggregationKind::Max), 0.6);
  const std::vector<double> h2{4.0 / 3.0, 2.0 / 3.0};
  EXPECT_NEAR(aggregate(h2, AggregationKind::Mean), 1.0, 1e-15);
  EXPECT_THROW(aggregate(std::span<const double>{}, AggregationKind::Mean), AllMetapathsEmpty);
  EXPECT_EQ(parse_aggregation("max"), AggregationKind::Max);
  EXPECT_THROW(parse_aggregation("median"), UsageError);
}

TEST(MetapathAggregates, SingletonsAndEmptySets) {
  const Dataset d = k4();
  MetapathSet one;
  one.paths = {Metapath({{0, StepDirection::Forward}})};
  EXPECT_NEAR(metapath_label_heterophily(d.graph, d.labels, one), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(h2_index(d.graph, d.labels, one), 4.0 / 3.0, 1e-12);

  EXPECT_THROW(metapath_label_heterophily(d.graph, d.labels, MetapathSet{}), AllMetapathsEmpty);
  const Dataset none = homogeneous(3, {}, {A, B, A}, 2);
  EXPECT_THROW(metapath_label_heterophily(none.graph, none.labels, one), AllMetapathsEmpty);
  const Dataset single = homogeneous(3, {{0, 1}}, {A, A, B}, 2);
  EXPECT_NO_THROW(metapath_label_heterophily(single.graph, single.labels, one));
  EXPECT_THROW(h2_index(single.graph, single.labels, one), AllMetapathsEmpty);
}

TEST(MetricsOracle, RandomHomogeneousGraphs) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 400; ++trial) {
    const Homog h = random_homogeneous(rng);
    const Dataset d = build(h);
    for (bool loops : {false, true}) {
      for (bool weighted : {false, true}) {
        InductionOptions opt;
        opt.keep_self_loops = loops;
        opt.count_multiplicity = weighted;
        const InducedGraph ig = direct(d, opt);
        hgtest::RawGraph raw;
        raw.type_names = {"v"};
        raw.counts = {h.n};
        raw.relations = {{0, 0, "e", {}}};
        for (auto [a, b] : h.edges) raw.relations[0].edges.emplace_back(a, b);
        raw.labels = h.labels;
        const auto dense = hgtest::oracle_induce(raw, {{0, false}}, {weighted, loops, true});
        ASSERT_EQ(hgtest::max_abs_diff(hgtest::to_dense(ig), dense), 0.0);
        if (ig.empty()) continue;
        const double he = edge_heterophily(ig, d.labels);
        ASSERT_NEAR(he, hgtest::naive_edge_heterophily(dense, h.labels), 1e-12);
        ASSERT_GE(he, 0.0);
        ASSERT_LE(he, 1.0);
        const auto hn = hgtest::naive_node_heterophily(dense, h.labels);
        ASSERT_TRUE(hn.has_value());
        const double node = node_heterophily(ig, d.labels);
        ASSERT_NEAR(node, *hn, 1e-12);
        ASSERT_GE(node, 0.0);
        ASSERT_LE(node, 1.0);
        const ClassDegreeTable t = class_degree_profile(ig, d.labels);
        const double p = hgtest::naive_collision_mass(dense, h.labels, h.classes);
        ASSERT_NEAR(t.collision_mass, p, 1e-12);
        ASSERT_EQ(t.classes_present, hgtest::naive_classes_present(dense, h.labels, h.classes));
        if (t.degenerate()) {
          ASSERT_THROW(adjusted_heterophily(ig, d.labels), DegenerateClassDistribution);
        } else {
          const double adj = adjusted_heterophily(ig, d.labels);
          ASSERT_NEAR(adj, hgtest::naive_adjusted(he, t.collision_mass), 1e-12);
          ASSERT_NEAR(adjusted_heterophily(1.0 - t.collision_mass, t), 1.0, 1e-12);
        }
      }
    }
  }
}

TEST(MetricsOracle, DirectedVariantUsesInDegree) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Homog h = random_homogeneous(rng);
    const Dataset d = build(h);
    InductionOptions opt;
    opt.symmetrize = false;
    const InducedGraph ig = direct(d, opt);
    if (ig.empty()) continue;
    ASSERT_FALSE(ig.symmetric);
    const auto dense = hgtest::to_dense(ig);
    ASSERT_NEAR(edge_heterophily(ig, d.labels), hgtest::naive_edge_heterophily(dense, h.labels, false), 1e-12);
    ASSERT_NEAR(class_degree_profile(ig, d.labels).collision_mass,
                hgtest::naive_collision_mass(dense, h.labels, h.classes, false), 1e-12);
  }
}

TEST(MetricsProperty, ClassRelabelAndNodePermutationInvariance) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const Homog h = random_homogeneous(rng);
    Homog relabeled = h;
    std::vector<ClassId> rename(h.classes);
    std::iota(rename.begin(), rename.end(), 0);
    std::shuffle(rename.begin(), rename.end(), rng);
    for (auto& y : relabeled.labels) y = rename[y];

    Homog permuted = h;
    std::vector<LocalId> perm(h.n);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (auto& [a, b] : permuted.edges) {
      a = perm[a];
      b = perm[b];
    }
    for (std::uint64_t v = 0; v < h.n; ++v) permuted.labels[perm[v]] = h.labels[v];

    const Dataset base = build(h);
    const InducedGraph ig = direct(base);
    if (ig.empty()) continue;
    for (const Homog* other : {&relabeled, &permuted}) {
      const Dataset d = build(*other);
      const InducedGraph og = direct(d);
      ASSERT_NEAR(edge_heterophily(og, d.labels), edge_heterophily(ig, base.labels), 1e-12);
      ASSERT_NEAR(node_heterophily(og, d.labels), node_heterophily(ig, base.labels), 1e-12);
      const auto t0 = class_degree_profile(ig, base.labels);
      const auto t1 = class_degree_profile(og, d.labels);
      ASSERT_NEAR(t0.collision_mass, t1.collision_mass, 1e-12);
      if (!t0.degenerate()) {
        ASSERT_NEAR(adjusted_heterophily(og, d.labels), adjusted_heterophily(ig, base.labels), 1e-12);
      }
    }
  }
}

TEST(MetricsProperty, AddingEdgesMovesEdgeHeterophilyMonotonically) {
  std::mt19937_64 rng(37);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Homog h = random_homogeneous(rng);
    const Dataset d = build(h);
    const InducedGraph ig = direct(d);
    if (ig.empty()) continue;
    const double before = edge_heterophily(ig, d.labels);
    const auto dense = hgtest::to_dense(ig);
    for (LocalId u = 0; u < h.n; ++u) {
      for (LocalId v = u + 1; v < h.n; ++v) {
        if (dense[u][v] != 0) continue;
        Homog more = h;
        more.edges.emplace_back(u, v);
        const Dataset m = build(more);
        const double after = edge_heterophily(direct(m), m.labels);
        if (h.labels[u] == h.labels[v]) {
          ASSERT_LE(after, before + 1e-15);
        } else {
          ASSERT_GE(after, before - 1e-15);
        }
        ++checked;
        u = static_cast<LocalId>(h.n);  // one added edge per graph
        break;
      }
    }
  }
  EXPECT_GT(checked, 200);
}

TEST(MetricsProperty, AggregatesWithinInputRange) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const hgtest::RawGraph raw = hgtest::random_graph(rng);
    const Dataset d = hgtest::to_dataset(raw);
    const MetapathSet set = enumerate_metapaths(d.graph.schema(), 0, 2);
    std::vector<double> he, ha;
    for (const auto& p : set.paths) {
      const InducedGraph ig = induce_subgraph(d.graph, d.labels, p);
      if (ig.empty()) continue;
      he.push_back(edge_heterophily(ig, d.labels));
      const auto t = class_degree_profile(ig, d.labels);
      if (!t.degenerate()) ha.push_back(adjusted_heterophily(he.back(), t));
    }
    for (auto kind : {AggregationKind::Mean, AggregationKind::Max}) {
      MetricOptions opt;
      opt.aggregation = kind;
      if (he.empty()) {
        EXPECT_THROW(metapath_label_heterophily(d.graph, d.labels, set, opt), AllMetapathsEmpty);
        continue;
      }
      const double mlh = metapath_label_heterophily(d.graph, d.labels, set, opt);
      EXPECT_GE(mlh, *std::min_element(he.begin(), he.end()) - 1e-12);
      EXPECT_LE(mlh, *std::max_element(he.begin(), he.end()) + 1e-12);
      if (ha.empty()) continue;
      const double h2 = h2_index(d.graph, d.labels, set, opt);
      EXPECT_GE(h2, *std::min_element(ha.begin(), ha.end()) - 1e-12);
      EXPECT_LE(h2, *std::max_element(ha.begin(), ha.end()) + 1e-12);
    }
  }
}

TEST(MetricsProperty, ThreadCountDoesNotChangeResults) {
  PlantedConfig cfg = PlantedConfig::balanced(3, 5000, 60000, 0.4, 3);
  cfg.hubs.push_back({});
  const Dataset d = generate_planted(cfg);
  const MetapathSet set = enumerate_metapaths(d.graph.schema(), 0, 2);
  MetricOptions one, many;
  many.induction.threads = 4;
  EXPECT_NEAR(h2_index(d.graph, d.labels, set, one), h2_index(d.graph, d.labels, set, many), 1e-9);
  EXPECT_NEAR(metapath_label_heterophily(d.graph, d.labels, set, one),
              metapath_label_heterophily(d.graph, d.labels, set, many), 1e-9);
  for (const auto& p : set.paths) {
    InductionOptions a, b;
    b.threads = 4;
    const InducedGraph x = induce_subgraph(d.graph, d.labels, p, a);
    const InducedGraph y = induce_subgraph(d.graph, d.labels, p, b);
    ASSERT_EQ(x.neighbors, y.neighbors);
    EXPECT_EQ(node_heterophily(x, d.labels), node_heterophily(y, d.labels));
  }
}

TEST(Estimator, ExhaustiveAndZeroVariance) {
  const Dataset d = k4();
  const InducedGraph ig = direct(d);
  const EdgeEstimate exact = estimate_edge_heterophily(ig, d.labels, ig.m, 1, SamplingMode::Exhaustive);
  EXPECT_TRUE(exact.exact);
  EXPECT_NEAR(exact.estimate, 2.0 / 3.0, 1e-12);

  const Dataset bip = homogeneous(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}, {A, A, B, B}, 2);
  const EdgeEstimate all = estimate_edge_heterophily(direct(bip), bip.labels, 100, 7);
  EXPECT_DOUBLE_EQ(all.estimate, 1.0);
  EXPECT_DOUBLE_EQ(all.half_width, 0.0);
  EXPECT_EQ(all.samples, 100u);
}

TEST(Estimator, PlantedMixingWithinTolerance) {
  const Dataset d = generate_planted(PlantedConfig::balanced(2, 200000, 1000000, 0.3, 4));
  const InducedGraph ig = direct(d);
  const double exact = edge_heterophily(ig, d.labels);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const EdgeEstimate e = estimate_edge_heterophily(ig, d.labels, 100000, seed);
    EXPECT_NEAR(e.estimate, exact, 0.01);
    EXPECT_GT(e.half_width, 0.0);
    EXPECT_LT(e.half_width, 0.01);
  }
  const EdgeEstimate a = estimate_edge_heterophily(ig, d.labels, 1000, 9);
  const EdgeEstimate b = estimate_edge_heterophily(ig, d.labels, 1000, 9);
  EXPECT_EQ(a.estimate, b.estimate);
}
