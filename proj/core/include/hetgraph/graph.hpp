#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hetgraph {

using TypeId = std::uint32_t;
using RelationId = std::uint32_t;
using LocalId = std::uint32_t;
using EdgeOffset = std::uint64_t;
using Timestamp = std::int64_t;
using ClassId = std::int32_t;

inline constexpr Timestamp kMissingTimestamp = std::numeric_limits<Timestamp>::min();
inline constexpr ClassId kUnlabeled = -1;

struct Relation {
  TypeId src = 0;
  std::string name;
  TypeId dst = 0;

  bool operator==(const Relation&) const = default;
};

/// Node types and (src, name, dst) relation triples, both in declaration order.
class Schema {
 public:
  Schema() = default;

  /// Appends a node type; throws UsageError on a duplicate name.
  TypeId add_node_type(std::string name);
  /// Appends a relation between existing types; throws on a duplicate triple.
  RelationId add_relation(std::string_view src, std::string name, std::string_view dst);

  std::size_t num_node_types() const noexcept { return node_types_.size(); }
  std::size_t num_relations() const noexcept { return relations_.size(); }

  const std::vector<std::string>& node_types() const noexcept { return node_types_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  const std::string& type_name(TypeId id) const { return node_types_.at(id); }
  const Relation& relation(RelationId id) const { return relations_.at(id); }

  std::optional<TypeId> find_type(std::string_view name) const noexcept;
  /// Throws UnknownName.
  TypeId type_id(std::string_view name) const;
  std::optional<RelationId> find_relation(std::string_view src, std::string_view name,
                                          std::string_view dst) const noexcept;
  /// All relations called `name`, in declaration order.
  std::vector<RelationId> relations_named(std::string_view name) const;

  /// "src/name/dst", the unambiguous spelling of a relation.
  std::string relation_label(RelationId id) const;

  bool operator==(const Schema&) const = default;

 private:
  std::vector<std::string> node_types_;
  std::vector<Relation> relations_;
};

/// Compressed sparse rows. Columns inside a row are sorted ascending.
struct Csr {
  std::vector<EdgeOffset> offsets{0};
  std::vector<LocalId> columns;

  std::size_t rows() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  std::uint64_t nnz() const noexcept { return columns.size(); }
  std::span<const LocalId> row(std::size_t r) const noexcept {
    return {columns.data() + offsets[r], static_cast<std::size_t>(offsets[r + 1] - offsets[r])};
  }
  std::uint64_t row_length(std::size_t r) const noexcept { return offsets[r + 1] - offsets[r]; }

  /// Bucket edges by source and sort each row. Multi-edges are kept.
  static Csr from_edges(std::size_t rows, std::span<const LocalId> src, std::span<const LocalId> dst);
  /// Transpose with `cols` output rows. Every column index must be < cols.
  Csr transposed(std::size_t cols) const;

  bool operator==(const Csr&) const = default;
};

/// Opaque fixed-width numeric block attached to a node type.
struct FeatureBlock {
  std::uint32_t width = 0;
  std::vector<double> values;  // row-major, node_count * width

  bool operator==(const FeatureBlock&) const = default;
};

struct EdgeList {
  std::vector<LocalId> src;
  std::vector<LocalId> dst;
};

struct TypedNodeRef {
  TypeId type = 0;
  LocalId index = 0;
};

enum class Direction { In, Out };

/// Immutable typed graph with per-relation forward and transposed CSR.
class HeteroGraph {
 public:
  HeteroGraph() = default;

  // Builds a graph from raw edge lists. Throws DataError if an endpoint is out
  // of range, a per-type vector has the wrong length, or counts don't match the
  // schema.
  static HeteroGraph from_edge_lists(Schema schema, std::vector<std::uint64_t> node_counts,
                                     std::vector<EdgeList> edges,
                                     std::vector<std::optional<std::vector<Timestamp>>> timestamps = {},
                                     std::vector<std::optional<FeatureBlock>> features = {});

  // Assembles a graph from prebuilt CSRs without checking anything; run
  // validate_graph() on the result before trusting it.
  static HeteroGraph from_parts(Schema schema, std::vector<std::uint64_t> node_counts, std::vector<Csr> forward,
                                std::vector<Csr> reverse,
                                std::vector<std::optional<std::vector<Timestamp>>> timestamps = {},
                                std::vector<std::optional<FeatureBlock>> features = {});

  const Schema& schema() const noexcept { return schema_; }
  std::uint64_t node_count(TypeId type) const { return node_counts_.at(type); }
  const std::vector<std::uint64_t>& node_counts() const noexcept { return node_counts_; }
  const Csr& forward(RelationId r) const { return forward_.at(r); }
  const Csr& reverse(RelationId r) const { return reverse_.at(r); }
  std::uint64_t edge_count(RelationId r) const { return forward_.at(r).nnz(); }

  bool has_timestamps(TypeId type) const { return timestamps_.at(type).has_value(); }
  /// Empty span when the type carries no timestamps.
  std::span<const Timestamp> timestamps(TypeId type) const;
  const std::optional<FeatureBlock>& features(TypeId type) const { return features_.at(type); }

  bool operator==(const HeteroGraph&) const = default;

 private:
  Schema schema_;
  std::vector<std::uint64_t> node_counts_;
  std::vector<Csr> forward_;
  std::vector<Csr> reverse_;
  std::vector<std::optional<std::vector<Timestamp>>> timestamps_;
  std::vector<std::optional<FeatureBlock>> features_;
};

/// Class ids for every node of one target type; kUnlabeled marks missing labels.
class LabelMap {
 public:
  LabelMap() = default;
  // Throws DataError if a label is outside [0, num_classes) and not kUnlabeled,
  // or if no node is labeled.
  LabelMap(TypeId target_type, std::uint32_t num_classes, std::vector<ClassId> labels);

  TypeId target_type() const noexcept { return target_type_; }
  std::uint32_t num_classes() const noexcept { return num_classes_; }
  std::size_t size() const noexcept { return labels_.size(); }
  ClassId operator[](std::size_t v) const noexcept { return labels_[v]; }
  bool is_labeled(std::size_t v) const noexcept { return labels_[v] != kUnlabeled; }
  std::span<const ClassId> values() const noexcept { return labels_; }
  std::uint64_t labeled_count() const noexcept;

  bool operator==(const LabelMap&) const = default;

 private:
  TypeId target_type_ = 0;
  std::uint32_t num_classes_ = 1;
  std::vector<ClassId> labels_;
};

/// A graph together with the labels of its target type.
struct Dataset {
  HeteroGraph graph;
  LabelMap labels;

  bool operator==(const Dataset&) const = default;
};

/// Number of incident edges (with multiplicity). Direction::Out reads the
/// forward CSR row of a src-type node, Direction::In the transposed row of a
/// dst-type node. Throws TypeMismatch if the node has the wrong type.
std::uint64_t degree(const HeteroGraph& g, RelationId relation, TypedNodeRef node, Direction direction);

enum class FindingKind {
  ShapeMismatch,
  OffsetsNotMonotone,
  IndexOutOfRange,
  RowNotSorted,
  TransposeMismatch,
  TimestampLength,
  FeatureShape,
};

std::string_view to_string(FindingKind kind) noexcept;

struct Finding {
  FindingKind kind;
  std::optional<RelationId> relation;
  std::optional<std::uint64_t> row;
  std::string message;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const noexcept { return findings.empty(); }
  std::size_t count(FindingKind kind) const noexcept;
};

/// Diagnoses every violated graph invariant; never throws on bad data.
ValidationReport validate_graph(const HeteroGraph& g);

}  // namespace hetgraph
