#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hetgraph/graph.hpp"

namespace hetgraph {

struct TypeStats {
  std::string name;
  std::uint64_t nodes = 0;
  std::optional<Timestamp> min_timestamp;
  std::optional<Timestamp> max_timestamp;
  std::uint64_t missing_timestamps = 0;
  bool has_timestamps = false;
  std::uint32_t feature_width = 0;
};

struct RelationStats {
  std::string src;
  std::string name;
  std::string dst;
  std::uint64_t edges = 0;
};

struct GraphStats {
  std::vector<TypeStats> types;
  std::vector<RelationStats> relations;  // every relation, empty ones included
  std::string target_type;
  std::uint32_t num_classes = 0;
  std::vector<std::uint64_t> class_histogram;
  std::uint64_t labeled_nodes = 0;
  double labeled_fraction = 0.0;
};

GraphStats compute_stats(const Dataset& data);
std::string format_stats(const GraphStats& stats);
std::string stats_to_json(const GraphStats& stats);

}  // namespace hetgraph
