#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hetgraph/graph.hpp"
#include "hetgraph/metapath.hpp"

namespace hetgraph {

// Label-mixing measures on an induced graph. Every function reads labels only
// through `labels[v]`; induction has already dropped unlabeled endpoints.

/// Fraction of edges whose endpoints carry different labels. Throws EmptyInducedGraph when m == 0.
double edge_heterophily(const InducedGraph& ig, const LabelMap& labels);

struct NodeHeterophily {
  double value = 0.0;
  std::uint64_t contributing_nodes = 0;  // labeled nodes with at least one neighbor
  std::uint64_t isolated_nodes = 0;      // labeled nodes left out of the mean
};

// Mean over non-isolated labeled nodes of the fraction of neighbors with a
// different label. Throws EmptyInducedGraph when every node is isolated.
NodeHeterophily node_heterophily_detail(const InducedGraph& ig, const LabelMap& labels);
double node_heterophily(const InducedGraph& ig, const LabelMap& labels);

struct ClassDegreeTable {
  std::vector<double> class_degree;  // D_k
  double endpoint_total = 0.0;       // sum_k D_k; 2|E| for a symmetric simple graph
  double collision_mass = 0.0;       // p = sum_k D_k^2 / endpoint_total^2
  std::uint32_t classes_present = 0; // classes with D_k > 0

  /// True when a single class holds every endpoint, i.e. 1 - p == 0.
  bool degenerate() const noexcept { return classes_present <= 1; }
};

/// Per-class degree mass (in-degree for directed graphs). Throws EmptyInducedGraph when m == 0.
ClassDegreeTable class_degree_profile(const InducedGraph& ig, const LabelMap& labels);

// Edge heterophily relative to the configuration-model expectation,
// 1 - (1 - p - H_edge) / (1 - p). Can exceed 1. Throws
// DegenerateClassDistribution when p == 1.
double adjusted_heterophily(const InducedGraph& ig, const LabelMap& labels);
/// Same formula from precomputed parts.
double adjusted_heterophily(double edge_heterophily, const ClassDegreeTable& profile);

enum class AggregationKind { Mean, Max };

std::string_view to_string(AggregationKind kind) noexcept;
/// "mean" or "max"; throws UsageError otherwise.
AggregationKind parse_aggregation(std::string_view text);
/// Mean or max of non-empty `values`; the mean uses pairwise summation.
double aggregate(std::span<const double> values, AggregationKind kind);

struct MetricOptions {
  AggregationKind aggregation = AggregationKind::Mean;
  InductionOptions induction;
};

/// Agg of H_edge over the induced graphs of `paths`; empty graphs are skipped. Throws AllMetapathsEmpty.
double metapath_label_heterophily(const HeteroGraph& g, const LabelMap& labels, const MetapathSet& paths,
                                  const MetricOptions& options = {});
/// Agg of H_adj; empty and degenerate graphs are skipped. Throws AllMetapathsEmpty.
double h2_index(const HeteroGraph& g, const LabelMap& labels, const MetapathSet& paths,
                const MetricOptions& options = {});

enum class SamplingMode { WithReplacement, Exhaustive };

struct EdgeEstimate {
  double estimate = 0.0;
  double half_width = 0.0;  // 95% normal-approximation half-width
  std::uint64_t samples = 0;
  bool exact = false;
};

// Estimates H_edge from sample_size edges drawn uniformly with replacement.
// In Exhaustive mode, a sample_size covering every edge enumerates them all
// instead and returns the exact value. Deterministic for a fixed seed.
EdgeEstimate estimate_edge_heterophily(const InducedGraph& ig, const LabelMap& labels, std::uint64_t sample_size,
                                       std::uint64_t seed, SamplingMode mode = SamplingMode::WithReplacement);

}  // namespace hetgraph
