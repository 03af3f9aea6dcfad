#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hetgraph/graph.hpp"

namespace hetgraph {

enum class StepDirection : std::uint8_t { Forward = 0, Reverse = 1 };

struct MetapathStep {
  RelationId relation = 0;
  StepDirection direction = StepDirection::Forward;

  auto operator<=>(const MetapathStep&) const = default;
};

/// Effective source type of a step: the relation's dst when traversed in reverse.
TypeId step_source(const Schema& schema, MetapathStep step);
TypeId step_target(const Schema& schema, MetapathStep step);

// A typed walk pattern. Paths order by (length, steps) with forward before
// reverse; among a path and its reversal the smaller one is canonical.
class Metapath {
 public:
  Metapath() = default;
  explicit Metapath(std::vector<MetapathStep> steps);

  const std::vector<MetapathStep>& steps() const noexcept { return steps_; }
  std::size_t length() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }

  /// Same walks traversed backwards: reversed order, every direction flipped.
  Metapath reversed() const;
  bool is_canonical() const { return !(reversed() < *this); }
  Metapath canonical() const;

  /// True when consecutive steps chain and the path starts and ends at `endpoint`.
  bool type_checks(const Schema& schema, TypeId endpoint) const;
  TypeId source_type(const Schema& schema) const;
  TypeId target_type(const Schema& schema) const;

  std::strong_ordering operator<=>(const Metapath& other) const;
  bool operator==(const Metapath&) const = default;

 private:
  std::vector<MetapathStep> steps_;
};

/// "paper <-writes- author -writes-> paper"
std::string to_arrow_string(const Metapath& path, const Schema& schema);
/// "~writes.writes"; names that are ambiguous in the schema are written src/name/dst.
std::string to_compact_string(const Metapath& path, const Schema& schema);
// Parses either syntax. In the compact form a bare relation name may be shared
// by several relations; the one that chains with the previous step is chosen.
// Throws UnknownName on unresolvable names and TypeMismatch on broken chains.
Metapath parse_metapath(std::string_view text, const Schema& schema);

struct MetapathSet {
  TypeId target_type = 0;
  std::vector<std::size_t> lengths;
  std::vector<Metapath> paths;

  std::size_t size() const noexcept { return paths.size(); }
  bool empty() const noexcept { return paths.empty(); }
};

// Every type-checking metapath from target_type back to itself whose length is
// in `lengths`, reduced to canonical representatives, in canonical order.
MetapathSet enumerate_metapaths(const Schema& schema, TypeId target_type, std::span<const std::size_t> lengths);
/// Lengths 1..max_length.
MetapathSet enumerate_metapaths(const Schema& schema, TypeId target_type, std::size_t max_length);

struct InductionOptions {
  bool count_multiplicity = false;  // weight edges by walk count instead of 0/1
  bool keep_self_loops = false;
  bool symmetrize = true;           // false: directed arcs, expert use only
  unsigned threads = 1;
  // A frontier whose candidate count exceeds this fraction of the destination
  // type size is accumulated in a bitset instead of by sort-and-merge.
  double dense_fraction = 1.0 / 32.0;
};

// Homogeneous graph over target-type nodes produced by one metapath. With
// default options it is simple and symmetric: each undirected edge appears
// once in the row of each endpoint, and every endpoint is labeled.
struct InducedGraph {
  Metapath metapath;
  std::uint64_t n = 0;
  std::vector<EdgeOffset> offsets{0};
  std::vector<LocalId> neighbors;
  std::vector<double> weights;  // parallel to neighbors; empty means every weight is 1
  bool symmetric = true;
  bool has_self_loops = false;
  std::uint64_t m = 0;  // undirected edges when symmetric, arcs otherwise (self-loops count once)

  std::span<const LocalId> row(std::size_t v) const noexcept {
    return {neighbors.data() + offsets[v], static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
  }
  std::span<const double> row_weights(std::size_t v) const noexcept {
    if (weights.empty()) return {};
    return {weights.data() + offsets[v], static_cast<std::size_t>(offsets[v + 1] - offsets[v])};
  }
  bool weighted() const noexcept { return !weights.empty(); }
  std::uint64_t arcs() const noexcept { return neighbors.size(); }
  /// Weighted row sum; the row length when unweighted. Equals in-degree when symmetric.
  double degree(std::size_t v) const noexcept;
  /// In-degrees; needed only for the directed variant.
  std::vector<double> in_degrees() const;
  bool empty() const noexcept { return m == 0; }
};

// Materializes G_P: an edge u-v between distinct labeled target nodes wherever
// some walk following the metapath connects them. Computed row by row as a
// chain of sparse boolean products; throws TypeMismatch if the path does not
// start and end at the label type.
InducedGraph induce_subgraph(const HeteroGraph& g, const LabelMap& labels, const Metapath& path,
                             const InductionOptions& options = {});

/// Union of several induced graphs over the same node set (weights add).
InducedGraph merge_induced(std::span<const InducedGraph* const> graphs);

}  // namespace hetgraph
