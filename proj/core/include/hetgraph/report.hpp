#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hetgraph/metrics.hpp"

namespace hetgraph {

enum class SkipReason { EmptyInducedGraph, DegenerateClassDistribution };

std::string_view to_string(SkipReason reason) noexcept;

struct MetapathRow {
  std::string metapath;  // arrow syntax
  std::string compact;
  std::uint64_t edges = 0;
  std::optional<double> h_edge;
  std::optional<double> h_node;
  std::optional<double> h_adj;
  std::optional<double> collision_mass;
  std::uint64_t isolated_nodes = 0;
};

struct SkippedMetapath {
  std::string metapath;
  SkipReason reason;
  std::string excluded_from;  // "MLH,H2" or "H2"
};

/// Effective configuration, echoed into every output.
struct ReportConfig {
  std::vector<std::size_t> lengths;
  AggregationKind aggregation = AggregationKind::Mean;
  bool count_multiplicity = false;
  bool keep_self_loops = false;
  bool symmetrize = true;
  unsigned threads = 1;
  std::vector<std::string> explicit_metapaths;
};

// Graph-level values are computed on the union of all induced graphs of the
// metapath set (the homogeneous projection onto the target type).
struct GraphLevelMetrics {
  std::uint64_t edges = 0;
  std::optional<double> h_edge;
  std::optional<double> h_node;
  std::optional<double> h_adj;
};

struct MetricReport {
  std::string dataset;
  std::string target_type;
  std::uint64_t target_nodes = 0;
  std::uint64_t labeled_nodes = 0;
  ReportConfig config;
  std::vector<MetapathRow> rows;
  std::vector<SkippedMetapath> skipped;
  GraphLevelMetrics graph;
  std::optional<double> mlh;
  std::optional<double> h2;
};

// Induces every metapath and fills a report. Nothing throws for vacuous
// metapaths: aggregates stay empty when no row survives, and callers decide
// how to surface that.
MetricReport compute_metric_report(const HeteroGraph& g, const LabelMap& labels, const MetapathSet& paths,
                                   const MetricOptions& options, std::string dataset_name = "dataset");

/// Table with metric rows and one dataset column, followed by per-metapath rows.
std::string format_report_table(const MetricReport& report);
/// Several reports side by side, one column each.
std::string format_report_table(std::span<const MetricReport> reports);
std::string report_to_json(const MetricReport& report);

}  // namespace hetgraph
