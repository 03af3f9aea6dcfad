#include "hetgraph/stats.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>

namespace hetgraph {

GraphStats compute_stats(const Dataset& data) {
  const HeteroGraph& g = data.graph;
  const Schema& schema = g.schema();
  GraphStats s;
  for (TypeId t = 0; t < schema.num_node_types(); ++t) {
    TypeStats ts;
    ts.name = schema.type_name(t);
    ts.nodes = g.node_count(t);
    ts.has_timestamps = g.has_timestamps(t);
    if (const auto& f = g.features(t)) ts.feature_width = f->width;
    for (Timestamp x : g.timestamps(t)) {
      if (x == kMissingTimestamp) {
        ++ts.missing_timestamps;
        continue;
      }
      ts.min_timestamp = ts.min_timestamp ? std::min(*ts.min_timestamp, x) : x;
      ts.max_timestamp = ts.max_timestamp ? std::max(*ts.max_timestamp, x) : x;
    }
    s.types.push_back(std::move(ts));
  }
  for (RelationId r = 0; r < schema.num_relations(); ++r) {
    const Relation& rel = schema.relation(r);
    s.relations.push_back({schema.type_name(rel.src), rel.name, schema.type_name(rel.dst), g.edge_count(r)});
  }

  const LabelMap& labels = data.labels;
  s.target_type = schema.type_name(labels.target_type());
  s.num_classes = labels.num_classes();
  s.class_histogram.assign(labels.num_classes(), 0);
  for (ClassId y : labels.values()) {
    if (y != kUnlabeled) ++s.class_histogram[static_cast<std::size_t>(y)];
  }
  s.labeled_nodes = labels.labeled_count();
  s.labeled_fraction = labels.size() ? static_cast<double>(s.labeled_nodes) / static_cast<double>(labels.size()) : 0.0;
  return s;
}

std::string format_stats(const GraphStats& s) {
  std::string out;
  char buf[256];
  out += "node types:\n";
  for (const auto& t : s.types) {
    std::snprintf(buf, sizeof buf, "  %-24s %12llu nodes", t.name.c_str(), static_cast<unsigned long long>(t.nodes));
    out += buf;
    if (t.has_timestamps) {
      if (t.min_timestamp) {
        std::snprintf(buf, sizeof buf, "  timestamps [%lld, %lld]", static_cast<long long>(*t.min_timestamp),
                      static_cast<long long>(*t.max_timestamp));
        out += buf;
      }
      if (t.missing_timestamps) out += "  (" + std::to_string(t.missing_timestamps) + " missing)";
    }
    if (t.feature_width) out += "  features x" + std::to_string(t.feature_width);
    out += '\n';
  }
  out += "relations:\n";
  for (const auto& r : s.relations) {
    const std::string label = r.src + " -" + r.name + "-> " + r.dst;
    std::snprintf(buf, sizeof buf, "  %-40s %12llu edges\n", label.c_str(), static_cast<unsigned long long>(r.edges));
    out += buf;
  }
  std::snprintf(buf, sizeof buf, "labels: target '%s', %u classes, %llu labeled (%.4f)\n", s.target_type.c_str(),
                s.num_classes, static_cast<unsigned long long>(s.labeled_nodes), s.labeled_fraction);
  out += buf;
  for (std::size_t k = 0; k < s.class_histogram.size(); ++k) {
    std::snprintf(buf, sizeof buf, "  class %-6zu %12llu\n", k, static_cast<unsigned long long>(s.class_histogram[k]));
    out += buf;
  }
  return out;
}

std::string stats_to_json(const GraphStats& s) {
  using nlohmann::json;
  json doc;
  doc["node_types"] = json::array();
  for (const auto& t : s.types) {
    json entry = {{"name", t.name}, {"nodes", t.nodes}, {"feature_width", t.feature_width}};
    if (t.has_timestamps) {
      entry["timestamps"] = {{"min", t.min_timestamp ? json(*t.min_timestamp) : json(nullptr)},
                             {"max", t.max_timestamp ? json(*t.max_timestamp) : json(nullptr)},
                             {"missing", t.missing_timestamps}};
    }
    doc["node_types"].push_back(std::move(entry));
  }
  doc["relations"] = json::array();
  for (const auto& r : s.relations) {
    doc["relations"].push_back({{"src", r.src}, {"name", r.name}, {"dst", r.dst}, {"edges", r.edges}});
  }
  doc["labels"] = {{"target_type", s.target_type},
                   {"num_classes", s.num_classes},
                   {"histogram", s.class_histogram},
                   {"labeled_nodes", s.labeled_nodes},
                   {"labeled_fraction", s.labeled_fraction}};
  return doc.dump(2) + "\n";
}

}  // namespace hetgraph
