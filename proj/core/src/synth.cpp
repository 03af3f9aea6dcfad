#include "hetgraph/synth.hpp"

#include <algorithm>
#include <map>

#include "hetgraph/errors.hpp"
#include "hetgraph/rng.hpp"

namespace hetgraph {

PlantedConfig PlantedConfig::balanced(std::uint32_t classes, std::uint32_t per_class, std::uint64_t direct_edges,
                                      double mixing, std::uint64_t seed) {
  PlantedConfig cfg;
  cfg.num_classes = classes;
  cfg.nodes_per_class.assign(classes, per_class);
  cfg.direct_edges = direct_edges;
  cfg.mixing = mixing;
  cfg.seed = seed;
  return cfg;
}

void check_config(const PlantedConfig& cfg) {
  if (cfg.num_classes < 1) throw UsageError("num_classes must be positive");
  if (cfg.nodes_per_class.size() != cfg.num_classes) {
    throw UsageError("nodes_per_class needs one entry per class");
  }
  for (auto n : cfg.nodes_per_class) {
    if (n == 0) throw UsageError("every class needs at least one node");
  }
  if (!(cfg.mixing >= 0.0 && cfg.mixing <= 1.0)) throw UsageError("mixing rate must lie in [0, 1]");
  if (cfg.timestamps && cfg.timestamp_range <= 0) throw UsageError("timestamp range must be positive");
  std::uint64_t total = 0;
  for (auto n : cfg.nodes_per_class) total += n;
  if (total > std::numeric_limits<LocalId>::max()) throw UsageError("too many target nodes");

  std::map<std::string, std::uint32_t> hub_sizes;
  for (const HubLayer& h : cfg.hubs) {
    if (h.hub_count == 0 || h.members_per_hub == 0) throw UsageError("hub layers need positive counts");
    if (h.hub_type == cfg.target_type) throw UsageError("hub type must differ from the target type");
    auto [it, fresh] = hub_sizes.emplace(h.hub_type, h.hub_count);
    if (!fresh && it->second != h.hub_count) {
      throw UsageError("hub layers sharing type '" + h.hub_type + "' must agree on hub_count");
    }
  }
  for (const ContextLayer& c : cfg.context) {
    if (c.count == 0 || c.edges_per_node == 0) throw UsageError("context layers need positive counts");
    if (!hub_sizes.contains(c.from_type)) throw UsageError("context layer source '" + c.from_type + "' is not a hub type");
    if (c.type == cfg.target_type || hub_sizes.contains(c.type)) {
      throw UsageError("context type '" + c.type + "' clashes with an existing type");
    }
  }
}

Dataset generate_planted(const PlantedConfig& cfg) {
  check_config(cfg);
  CounterRng rng(cfg.seed);

  const std::uint32_t classes = cfg.num_classes;
  std::vector<std::uint64_t> class_start(classes + 1, 0);
  for (std::uint32_t k = 0; k < classes; ++k) class_start[k + 1] = class_start[k] + cfg.nodes_per_class[k];
  const std::uint64_t n = class_start.back();

  auto class_of = [&](std::uint64_t v) {
    return static_cast<std::uint32_t>(std::upper_bound(class_start.begin(), class_start.end(), v) -
                                      class_start.begin() - 1);
  };
  auto node_in = [&](std::uint32_t k) { return class_start[k] + rng.below(cfg.nodes_per_class[k]); };
  auto partner_class = [&](std::uint32_t home) {
    if (classes > 1 && rng.bernoulli(cfg.mixing)) {
      const auto r = static_cast<std::uint32_t>(rng.below(classes - 1));
      return r < home ? r : r + 1;
    }
    return home;
  };
  auto draw_member = [&](std::uint32_t home) {
    return cfg.independent_labels ? rng.below(n) : node_in(partner_class(home));
  };

  Schema schema;
  schema.add_node_type(cfg.target_type);
  std::vector<std::uint64_t> counts{n};
  std::map<std::string, std::vector<std::uint32_t>> hub_home;
  for (const HubLayer& h : cfg.hubs) {
    if (schema.find_type(h.hub_type)) continue;
    schema.add_node_type(h.hub_type);
    counts.push_back(h.hub_count);
    auto& home = hub_home[h.hub_type];
    home.resize(h.hub_count);
    for (auto& k : home) k = static_cast<std::uint32_t>(rng.below(classes));
  }
  for (const ContextLayer& c : cfg.context) {
    schema.add_node_type(c.type);
    counts.push_back(c.count);
  }

  std::vector<EdgeList> edges;

  if (cfg.direct_edges > 0) {
    schema.add_relation(cfg.target_type, cfg.direct_relation, cfg.target_type);
    EdgeList list;
    list.src.reserve(cfg.direct_edges);
    list.dst.reserve(cfg.direct_edges);
    for (std::uint64_t e = 0; e < cfg.direct_edges; ++e) {
      const std::uint64_t u = rng.below(n);
      std::uint64_t v = u;
      // Resample self-pairs; a single-node class may leave one in place.
      for (int attempt = 0; attempt < 64 && v == u; ++attempt) {
        v = cfg.independent_labels ? rng.below(n) : node_in(partner_class(class_of(u)));
      }
      list.src.push_back(static_cast<LocalId>(u));
      list.dst.push_back(static_cast<LocalId>(v));
    }
    edges.push_back(std::move(list));
  }

  for (const HubLayer& h : cfg.hubs) {
    schema.add_relation(cfg.target_type, h.relation, h.hub_type);
    const auto& home = hub_home.at(h.hub_type);
    EdgeList list;
    list.src.reserve(std::uint64_t{h.hub_count} * h.members_per_hub);
    list.dst.reserve(list.src.capacity());
    for (std::uint32_t hub = 0; hub < h.hub_count; ++hub) {
      for (std::uint32_t j = 0; j < h.members_per_hub; ++j) {
        list.src.push_back(static_cast<LocalId>(draw_member(home[hub])));
        list.dst.push_back(hub);
      }
    }
    edges.push_back(std::move(list));
  }

  for (const ContextLayer& c : cfg.context) {
    schema.add_relation(c.from_type, c.relation, c.type);
    const std::uint64_t from_count = counts[schema.type_id(c.from_type)];
    EdgeList list;
    for (std::uint64_t v = 0; v < from_count; ++v) {
      for (std::uint32_t j = 0; j < c.edges_per_node; ++j) {
        list.src.push_back(static_cast<LocalId>(v));
        list.dst.push_back(static_cast<LocalId>(rng.below(c.count)));
      }
    }
    edges.push_back(std::move(list));
  }

  std::vector<std::optional<std::vector<Timestamp>>> stamps(schema.num_node_types());
  if (cfg.timestamps) {
    std::vector<Timestamp> ts(n);
    for (auto& t : ts) t = static_cast<Timestamp>(rng.below(static_cast<std::uint64_t>(cfg.timestamp_range)));
    stamps[0] = std::move(ts);
  }

  std::vector<ClassId> labels(n);
  for (std::uint64_t v = 0; v < n; ++v) labels[v] = static_cast<ClassId>(class_of(v));

  Dataset data;
  data.graph = HeteroGraph::from_edge_lists(std::move(schema), std::move(counts), std::move(edges), std::move(stamps));
  data.labels = LabelMap(0, classes, std::move(labels));
  return data;
}

}  // namespace hetgraph
