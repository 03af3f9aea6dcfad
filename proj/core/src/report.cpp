#include "hetgraph/report.hpp"

#include <cstdio>
#include <json.hpp>

#include "hetgraph/errors.hpp"
#include "hetgraph/parallel.hpp"

namespace hetgraph {

std::string_view to_string(SkipReason reason) noexcept {
  return reason == SkipReason::EmptyInducedGraph ? "empty induced graph" : "degenerate class distribution";
}

MetricReport compute_metric_report(const HeteroGraph& g, const LabelMap& labels, const MetapathSet& paths,
                                   const MetricOptions& options, std::string dataset_name) {
  const Schema& schema = g.schema();
  MetricReport report;
  report.dataset = std::move(dataset_name);
  report.target_type = schema.type_name(labels.target_type());
  report.target_nodes = g.node_count(labels.target_type());
  report.labeled_nodes = labels.labeled_count();
  report.config.lengths = paths.lengths;
  report.config.aggregation = options.aggregation;
  report.config.count_multiplicity = options.induction.count_multiplicity;
  report.config.keep_self_loops = options.induction.keep_self_loops;
  report.config.symmetrize = options.induction.symmetrize;
  report.config.threads = options.induction.threads;

  const std::size_t count = paths.size();
  std::vector<InducedGraph> induced(count);
  report.rows.resize(count);

  const unsigned threads = std::max(1u, options.induction.threads);
  const unsigned outer = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, count)));
  InductionOptions inner = options.induction;
  inner.threads = std::max(1u, threads / outer);

  parallel_for(count, outer, [&](std::size_t i) {
    induced[i] = induce_subgraph(g, labels, paths.paths[i], inner);
    const InducedGraph& ig = induced[i];
    MetapathRow& row = report.rows[i];
    row.metapath = to_arrow_string(paths.paths[i], schema);
    row.compact = to_compact_string(paths.paths[i], schema);
    row.edges = ig.m;
    if (ig.empty()) return;
    row.h_edge = edge_heterophily(ig, labels);
    const NodeHeterophily nh = node_heterophily_detail(ig, labels);
    row.h_node = nh.value;
    row.isolated_nodes = nh.isolated_nodes;
    const ClassDegreeTable profile = class_degree_profile(ig, labels);
    row.collision_mass = profile.collision_mass;
    if (!profile.degenerate()) row.h_adj = adjusted_heterophily(*row.h_edge, profile);
  });

  std::vector<double> edge_values;
  std::vector<double> adj_values;
  std::vector<const InducedGraph*> nonempty;
  for (std::size_t i = 0; i < count; ++i) {
    const MetapathRow& row = report.rows[i];
    if (!row.h_edge) {
      report.skipped.push_back({row.metapath, SkipReason::EmptyInducedGraph, "MLH,H2"});
      continue;
    }
    nonempty.push_back(&induced[i]);
    edge_values.push_back(*row.h_edge);
    if (row.h_adj) {
      adj_values.push_back(*row.h_adj);
    } else {
      report.skipped.push_back({row.metapath, SkipReason::DegenerateClassDistribution, "H2"});
    }
  }
  if (!edge_values.empty()) report.mlh = aggregate(edge_values, options.aggregation);
  if (!adj_values.empty()) report.h2 = aggregate(adj_values, options.aggregation);

  if (!nonempty.empty()) {
    const InducedGraph all = merge_induced(nonempty);
    report.graph.edges = all.m;
    report.graph.h_edge = edge_heterophily(all, labels);
    report.graph.h_node = node_heterophily(all, labels);
    const ClassDegreeTable profile = class_degree_profile(all, labels);
    if (!profile.degenerate()) report.graph.h_adj = adjusted_heterophily(*report.graph.h_edge, profile);
  }
  return report;
}

namespace {

std::string cell(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string describe_config(const ReportConfig& c) {
  std::string lengths;
  for (std::size_t i = 0; i < c.lengths.size(); ++i) lengths += (i ? "," : "") + std::to_string(c.lengths[i]);
  std::string out = "lengths=" + lengths + " agg=" + std::string(to_string(c.aggregation)) +
                    " edges=" + (c.count_multiplicity ? "walk-count" : "binary") +
                    " self-loops=" + (c.keep_self_loops ? "kept" : "removed") +
                    " induced=" + (c.symmetrize ? "symmetrized" : "directed");
  if (!c.explicit_metapaths.empty()) out += " metapaths=explicit";
  return out;
}

}  // namespace

std::string format_report_table(std::span<const MetricReport> reports) {
  struct Line {
    const char* name;
    const char* symbol;
    std::optional<double> (*get)(const MetricReport&);
  };
  static const Line lines[] = {
      {"Edge Heterophily", "H_edge", [](const MetricReport& r) { return r.graph.h_edge; }},
      {"Node Heterophily", "H_node", [](const MetricReport& r) { return r.graph.h_node; }},
      {"Adjusted Heterophily", "H_adj", [](const MetricReport& r) { return r.graph.h_adj; }},
      {"Metapath-based Label Heterophily", "MLH", [](const MetricReport& r) { return r.mlh; }},
      {"H2 Index", "H2", [](const MetricReport& r) { return r.h2; }},
  };

  constexpr std::size_t kName = 34;
  constexpr std::size_t kSymbol = 8;
  std::vector<std::size_t> widths;
  for (const auto& r : reports) widths.push_back(std::max<std::size_t>(8, r.dataset.size()));

  std::string out = pad("Heterophily Metric", kName) + pad("", kSymbol);
  for (std::size_t i = 0; i < reports.size(); ++i) out += " | " + lpad(reports[i].dataset, widths[i]);
  out += '\n';
  std::size_t rule = kName + kSymbol;
  for (auto w : widths) rule += w + 3;
  out += std::string(rule, '-') + '\n';
  for (const Line& line : lines) {
    out += pad(line.name, kName) + pad(line.symbol, kSymbol);
    for (std::size_t i = 0; i < reports.size(); ++i) out += " | " + lpad(cell(line.get(reports[i])), widths[i]);
    out += '\n';
  }
  return out;
}

std::string format_report_table(const MetricReport& report) {
  std::string out = format_report_table(std::span<const MetricReport>(&report, 1));
  out += "\nconfig: " + describe_config(report.config) + "\n";
  out += "target: " + report.target_type + " (" + std::to_string(report.labeled_nodes) + " of " +
         std::to_string(report.target_nodes) + " labeled), " + std::to_string(report.rows.size()) + " metapaths\n\n";

  std::size_t width = 8;
  for (const auto& row : report.rows) width = std::max(width, row.metapath.size());
  out += pad("metapath", width) + " | " + lpad("|E|", 10) + " | " + lpad("H_edge", 8) + " | " + lpad("H_node", 8) +
         " | " + lpad("H_adj", 8) + " | " + lpad("p", 8) + '\n';
  out += std::string(width + 59, '-') + '\n';
  for (const auto& row : report.rows) {
    out += pad(row.metapath, width) + " | " + lpad(std::to_string(row.edges), 10) + " | " + lpad(cell(row.h_edge), 8) +
           " | " + lpad(cell(row.h_node), 8) + " | " + lpad(cell(row.h_adj), 8) + " | " +
           lpad(cell(row.collision_mass), 8) + '\n';
  }
  if (!report.skipped.empty()) {
    out += "\nskipped:\n";
    for (const auto& s : report.skipped) {
      out += "  " + s.metapath + ": " + std::string(to_string(s.reason)) + " (excluded from " + s.excluded_from + ")\n";
    }
  }
  return out;
}

std::string report_to_json(const MetricReport& report) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };

  json doc;
  doc["dataset"] = report.dataset;
  doc["target_type"] = report.target_type;
  doc["target_nodes"] = report.target_nodes;
  doc["labeled_nodes"] = report.labeled_nodes;
  doc["config"] = {
      {"lengths", report.config.lengths},
      {"aggregation", to_string(report.config.aggregation)},
      {"count_multiplicity", report.config.count_multiplicity},
      {"keep_self_loops", report.config.keep_self_loops},
      {"symmetrize", report.config.symmetrize},
      {"threads", report.config.threads},
      {"explicit_metapaths", report.config.explicit_metapaths},
  };
  doc["graph"] = {{"edges", report.graph.edges},
                  {"h_edge", opt(report.graph.h_edge)},
                  {"h_node", opt(report.graph.h_node)},
                  {"h_adj", opt(report.graph.h_adj)}};
  doc["aggregates"] = {{"mlh", opt(report.mlh)}, {"h2", opt(report.h2)}};
  doc["metapaths"] = json::array();
  for (const auto& row : report.rows) {
    doc["metapaths"].push_back({{"metapath", row.metapath},
                                {"compact", row.compact},
                                {"edges", row.edges},
                                {"h_edge", opt(row.h_edge)},
                                {"h_node", opt(row.h_node)},
                                {"h_adj", opt(row.h_adj)},
                                {"p", opt(row.collision_mass)},
                                {"isolated_nodes", row.isolated_nodes}});
  }
  doc["skipped"] = json::array();
  for (const auto& s : report.skipped) {
    doc["skipped"].push_back({{"metapath", s.metapath}, {"reason", to_string(s.reason)}, {"excluded_from", s.excluded_from}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace hetgraph
