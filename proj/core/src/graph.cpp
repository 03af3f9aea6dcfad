#include "hetgraph/graph.hpp"

#include <algorithm>
#include <numeric>

#include "hetgraph/errors.hpp"

namespace hetgraph {

TypeId Schema::add_node_type(std::string name) {
  if (name.empty()) throw UsageError("node type name must not be empty");
  if (find_type(name)) throw UsageError("duplicate node type '" + name + "'");
  node_types_.push_back(std::move(name));
  return static_cast<TypeId>(node_types_.size() - 1);
}

RelationId Schema::add_relation(std::string_view src, std::string name, std::string_view dst) {
  if (name.empty()) throw UsageError("relation name must not be empty");
  const TypeId s = type_id(src);
  const TypeId d = type_id(dst);
  if (find_relation(src, name, dst)) {
    throw UsageError("duplicate relation '" + std::string(src) + "/" + name + "/" + std::string(dst) + "'");
  }
  relations_.push_back(Relation{s, std::move(name), d});
  return static_cast<RelationId>(relations_.size() - 1);
}

std::optional<TypeId> Schema::find_type(std::string_view name) const noexcept {
  for (std::size_t i = 0; i < node_types_.size(); ++i) {
    if (node_types_[i] == name) return static_cast<TypeId>(i);
  }
  return std::nullopt;
}

TypeId Schema::type_id(std::string_view name) const {
  if (auto id = find_type(name)) return *id;
  throw UnknownName("unknown node type '" + std::string(name) + "'");
}

std::optional<RelationId> Schema::find_relation(std::string_view src, std::string_view name,
                                                std::string_view dst) const noexcept {
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    const Relation& r = relations_[i];
    if (r.name == name && node_types_[r.src] == src && node_types_[r.dst] == dst) {
      return static_cast<RelationId>(i);
    }
  }
  return std::nullopt;
}

std::vector<RelationId> Schema::relations_named(std::string_view name) const {
  std::vector<RelationId> out;
  for (std::size_t i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) out.push_back(static_cast<RelationId>(i));
  }
  return out;
}

std::string Schema::relation_label(RelationId id) const {
  const Relation& r = relation(id);
  return node_types_[r.src] + "/" + r.name + "/" + node_types_[r.dst];
}

Csr Csr::from_edges(std::size_t rows, std::span<const LocalId> src, std::span<const LocalId> dst) {
  Csr csr;
  csr.offsets.assign(rows + 1, 0);
  for (LocalId s : src) ++csr.offsets[s + 1];
  std::partial_sum(csr.offsets.begin(), csr.offsets.end(), csr.offsets.begin());

  csr.columns.resize(src.size());
  std::vector<EdgeOffset> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (std::size_t e = 0; e < src.size(); ++e) csr.columns[cursor[src[e]]++] = dst[e];

  for (std::size_t r = 0; r < rows; ++r) {
    auto first = csr.columns.begin() + static_cast<std::ptrdiff_t>(csr.offsets[r]);
    auto last = csr.columns.begin() + static_cast<std::ptrdiff_t>(csr.offsets[r + 1]);
    if (!std::is_sorted(first, last)) std::sort(first, last);
  }
  return csr;
}

Csr Csr::transposed(std::size_t cols) const {
  Csr out;
  out.offsets.assign(cols + 1, 0);
  for (LocalId c : columns) ++out.offsets[c + 1];
  std::partial_sum(out.offsets.begin(), out.offsets.end(), out.offsets.begin());

  // Scanning source rows in ascending order leaves every output row sorted.
  out.columns.resize(columns.size());
  std::vector<EdgeOffset> cursor(out.offsets.begin(), out.offsets.end() - 1);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (LocalId c : row(r)) out.columns[cursor[c]++] = static_cast<LocalId>(r);
  }
  return out;
}

HeteroGraph HeteroGraph::from_edge_lists(Schema schema, std::vector<std::uint64_t> node_counts,
                                         std::vector<EdgeList> edges,
                                         std::vector<std::optional<std::vector<Timestamp>>> timestamps,
                                         std::vector<std::optional<FeatureBlock>> features) {
  const std::size_t types = schema.num_node_types();
  const std::size_t rels = schema.num_relations();
  if (node_counts.size() != types) throw DataError("node count vector does not match schema node types");
  if (edges.size() != rels) throw DataError("edge list vector does not match schema relations");
  if (timestamps.empty()) timestamps.resize(types);
  if (features.empty()) features.resize(types);
  if (timestamps.size() != types) throw DataError("timestamp vector does not match schema node types");
  if (features.size() != types) throw DataError("feature vector does not match schema node types");

  for (std::size_t t = 0; t < types; ++t) {
    if (node_counts[t] > std::numeric_limits<LocalId>::max()) {
      throw DataError("node type '" + schema.type_name(static_cast<TypeId>(t)) + "' exceeds 2^32-1 nodes");
    }
    if (timestamps[t] && timestamps[t]->size() != node_counts[t]) {
      throw DataError("timestamp count for '" + schema.type_name(static_cast<TypeId>(t)) +
                      "' does not match node count");
    }
    if (features[t] && features[t]->values.size() != node_counts[t] * features[t]->width) {
      throw DataError("feature block for '" + schema.type_name(static_cast<TypeId>(t)) +
                      "' does not match node count times width");
    }
  }

  std::vector<Csr> forward(rels);
  std::vector<Csr> reverse(rels);
  for (std::size_t r = 0; r < rels; ++r) {
    const Relation& rel = schema.relation(static_cast<RelationId>(r));
    const EdgeList& list = edges[r];
    if (list.src.size() != list.dst.size()) {
      throw DataError("relation '" + schema.relation_label(static_cast<RelationId>(r)) +
                      "' has mismatched src/dst lengths");
    }
    const std::uint64_t n_src = node_counts[rel.src];
    const std::uint64_t n_dst = node_counts[rel.dst];
    for (std::size_t e = 0; e < list.src.size(); ++e) {
      if (list.src[e] >= n_src || list.dst[e] >= n_dst) {
        throw DataError("relation '" + schema.relation_label(static_cast<RelationId>(r)) + "' edge " +
                        std::to_string(e) + " (" + std::to_string(list.src[e]) + "," +
                        std::to_string(list.dst[e]) + ") index out of range");
      }
    }
    forward[r] = Csr::from_edges(n_src, list.src, list.dst);
    reverse[r] = forward[r].transposed(n_dst);
  }

  return from_parts(std::move(schema), std::move(node_counts), std::move(forward), std::move(reverse),
                    std::move(timestamps), std::move(features));
}

HeteroGraph HeteroGraph::from_parts(Schema schema, std::vector<std::uint64_t> node_counts, std::vector<Csr> forward,
                                    std::vector<Csr> reverse,
                                    std::vector<std::optional<std::vector<Timestamp>>> timestamps,
                                    std::vector<std::optional<FeatureBlock>> features) {
  HeteroGraph g;
  if (timestamps.empty()) timestamps.resize(schema.num_node_types());
  if (features.empty()) features.resize(schema.num_node_types());
  g.schema_ = std::move(schema);
  g.node_counts_ = std::move(node_counts);
  g.forward_ = std::move(forward);
  g.reverse_ = std::move(reverse);
  g.timestamps_ = std::move(timestamps);
  g.features_ = std::move(features);
  return g;
}

std::span<const Timestamp> HeteroGraph::timestamps(TypeId type) const {
  const auto& ts = timestamps_.at(type);
  if (!ts) return {};
  return *ts;
}

LabelMap::LabelMap(TypeId target_type, std::uint32_t num_classes, std::vector<ClassId> labels)
    : target_type_(target_type), num_classes_(num_classes), labels_(std::move(labels)) {
  if (num_classes_ < 1) throw DataError("num_classes must be at least 1");
  bool any = false;
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    const ClassId y = labels_[v];
    if (y == kUnlabeled) continue;
    if (y < 0 || static_cast<std::uint32_t>(y) >= num_classes_) {
      throw DataError("label " + std::to_string(y) + " of node " + std::to_string(v) + " outside [0, " +
                      std::to_string(num_classes_) + ")");
    }
    any = true;
  }
  if (!any) throw DataError("label map has no labeled node");
}

std::uint64_t LabelMap::labeled_count() const noexcept {
  return static_cast<std::uint64_t>(
      std::count_if(labels_.begin(), labels_.end(), [](ClassId y) { return y != kUnlabeled; }));
}

std::uint64_t degree(const HeteroGraph& g, RelationId relation, TypedNodeRef node, Direction direction) {
  const Relation& rel = g.schema().relation(relation);
  const TypeId expected = direction == Direction::Out ? rel.src : rel.dst;
  if (node.type != expected) {
    throw TypeMismatch("node of type '" + g.schema().type_name(node.type) + "' is not the " +
                       (direction == Direction::Out ? "source" : "destination") + " type of relation '" +
                       g.schema().relation_label(relation) + "'");
  }
  if (node.index >= g.node_count(node.type)) {
    throw UsageError("node index " + std::to_string(node.index) + " out of range for type '" +
                     g.schema().type_name(node.type) + "'");
  }
  const Csr& csr = direction == Direction::Out ? g.forward(relation) : g.reverse(relation);
  return csr.row_length(node.index);
}

}  // namespace hetgraph
