#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hetgraph/graph.hpp"

namespace hetgraph {

/// Intermediate node type whose hubs collect target nodes through `relation` (target -> hub).
struct HubLayer {
  std::string hub_type = "hub";
  std::string relation = "member";
  std::uint32_t hub_count = 1000;
  std::uint32_t members_per_hub = 8;  // fan-out of each hub; fan-in per target node follows
};

/// Untyped-for-labels edges between an existing non-target type and a new one.
struct ContextLayer {
  std::string from_type = "hub";
  std::string type = "region";
  std::string relation = "located_in";
  std::uint32_t count = 100;
  std::uint32_t edges_per_node = 1;
};

// Planted label mixing. Direct edges and hub memberships are cross-class with
// independent probability `mixing`; a cross-class partner class is uniform
// among the other classes, and nodes are uniform within their class. With
// independent_labels the structure ignores labels entirely.
struct PlantedConfig {
  std::uint32_t num_classes = 2;
  std::vector<std::uint32_t> nodes_per_class{1000, 1000};
  std::uint64_t direct_edges = 10000;  // 0 drops the direct relation
  double mixing = 0.5;
  bool independent_labels = false;
  std::vector<HubLayer> hubs;
  std::vector<ContextLayer> context;
  bool timestamps = true;
  Timestamp timestamp_range = 1000;  // timestamps uniform in [0, range)
  std::string target_type = "item";
  std::string direct_relation = "links";
  std::uint64_t seed = 1;

  /// Same nodes_per_class entry for every class.
  static PlantedConfig balanced(std::uint32_t classes, std::uint32_t per_class, std::uint64_t direct_edges,
                                double mixing, std::uint64_t seed = 1);
};

/// Throws UsageError when a count is zero, mixing is outside [0,1] or hub types clash.
void check_config(const PlantedConfig& cfg);

/// Deterministic for a fixed config (including seed).
Dataset generate_planted(const PlantedConfig& cfg);

}  // namespace hetgraph
