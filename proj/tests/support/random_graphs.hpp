#pragma once

// Small random heterogeneous graphs kept as raw edge lists so that oracles can
// work without touching the library's CSR code.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hetgraph/graph.hpp"

namespace hgtest {

struct RawRelation {
  std::uint32_t src = 0;
  std::uint32_t dst = 0;
  std::string name;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

struct RawGraph {
  std::vector<std::string> type_names;
  std::vector<std::uint64_t> counts;
  std::vector<RawRelation> relations;
  std::uint32_t target = 0;
  std::uint32_t num_classes = 1;
  std::vector<std::int32_t> labels;  // -1 unlabeled
  std::vector<std::int64_t> timestamps;
};

inline hetgraph::Dataset to_dataset(const RawGraph& raw) {
  hetgraph::Schema schema;
  for (const auto& t : raw.type_names) schema.add_node_type(t);
  std::vector<hetgraph::EdgeList> lists;
  for (const auto& r : raw.relations) {
    schema.add_relation(raw.type_names[r.src], r.name, raw.type_names[r.dst]);
    hetgraph::EdgeList list;
    for (auto [u, v] : r.edges) {
      list.src.push_back(u);
      list.dst.push_back(v);
    }
    lists.push_back(std::move(list));
  }
  std::vector<std::optional<std::vector<hetgraph::Timestamp>>> stamps(raw.type_names.size());
  if (!raw.timestamps.empty()) stamps[raw.target] = raw.timestamps;
  hetgraph::Dataset d;
  d.graph = hetgraph::HeteroGraph::from_edge_lists(std::move(schema), raw.counts, std::move(lists), std::move(stamps));
  d.labels = hetgraph::LabelMap(raw.target, raw.num_classes, raw.labels);
  return d;
}

struct RandomGraphLimits {
  std::uint32_t max_types = 3;
  std::uint32_t max_nodes = 30;
  std::uint32_t max_relations = 4;
  std::uint32_t max_edges = 60;
  std::uint32_t max_classes = 4;
  double unlabeled_rate = 0.15;
};

// Target is type 0. At least one node is labeled. Relations may repeat a name
// across different type pairs, carry multi-edges, and loop on one type.
inline RawGraph random_graph(std::mt19937_64& rng, const RandomGraphLimits& lim = {}) {
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng); };
  RawGraph g;
  const auto types = static_cast<std::uint32_t>(pick(1, lim.max_types));
  for (std::uint32_t t = 0; t < types; ++t) {
    g.type_names.push_back("t" + std::to_string(t));
    g.counts.push_back(pick(1, lim.max_nodes));
  }
  const auto rels = static_cast<std::uint32_t>(pick(1, lim.max_relations));
  for (std::uint32_t r = 0; r < rels; ++r) {
    RawRelation rel;
    rel.src = static_cast<std::uint32_t>(pick(0, types - 1));
    rel.dst = static_cast<std::uint32_t>(pick(0, types - 1));
    rel.name = "r" + std::to_string(pick(0, 1) ? r : 0);
    bool clash = false;
    for (const auto& other : g.relations) {
      clash = clash || (other.src == rel.src && other.dst == rel.dst && other.name == rel.name);
    }
    if (clash) rel.name = "r" + std::to_string(r) + "x";
    const auto m = pick(0, lim.max_edges);
    for (std::uint64_t e = 0; e < m; ++e) {
      rel.edges.emplace_back(static_cast<std::uint32_t>(pick(0, g.counts[rel.src] - 1)),
                             static_cast<std::uint32_t>(pick(0, g.counts[rel.dst] - 1)));
    }
    g.relations.push_back(std::move(rel));
  }
  g.num_classes = static_cast<std::uint32_t>(pick(1, lim.max_classes));
  std::bernoulli_distribution unlabeled(lim.unlabeled_rate);
  for (std::uint64_t v = 0; v < g.counts[0]; ++v) {
    g.labels.push_back(unlabeled(rng) ? -1 : static_cast<std::int32_t>(pick(0, g.num_classes - 1)));
  }
  if (std::all_of(g.labels.begin(), g.labels.end(), [](auto y) { return y < 0; })) g.labels[0] = 0;
  return g;
}

}  // namespace hgtest
