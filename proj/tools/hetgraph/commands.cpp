#include "commands.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>

#include "hetgraph/errors.hpp"
#include "hetgraph/ingest.hpp"
#include "hetgraph/metapath.hpp"
#include "hetgraph/report.hpp"
#include "hetgraph/splits.hpp"
#include "hetgraph/stats.hpp"
#include "hetgraph/synth.hpp"

namespace hetgraph::cli {

namespace {

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& token, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw UsageError(std::string("invalid ") + what + " '" + token + "'");
  }
  return value;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw DataError("cannot write '" + path + "'");
}

std::string require(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string(flag) + " is required");
  return value;
}

Dataset load_graph(const RunConfig& c) { return load_cache(require(c.graph, "--graph")); }

// --target must name the labeled type; an empty flag means "the labeled type".
TypeId resolve_target(const Dataset& data, const std::string& target) {
  const Schema& schema = data.graph.schema();
  const TypeId labeled = data.labels.target_type();
  if (target.empty()) return labeled;
  const TypeId t = schema.type_id(target);
  if (t != labeled) {
    throw UsageError("type '" + target + "' has no labels; labels are on '" + schema.type_name(labeled) + "'");
  }
  return t;
}

MetapathSet select_metapaths(const RunConfig& c, const Schema& schema, TypeId target) {
  MetapathSet set;
  set.target_type = target;
  if (c.metapaths.empty()) return enumerate_metapaths(schema, target, parse_lengths(c.lengths));
  std::set<Metapath> seen;
  std::set<std::size_t> lengths;
  for (const std::string& text : c.metapaths) {
    const Metapath p = parse_metapath(text, schema);
    if (!p.type_checks(schema, target)) {
      throw TypeMismatch("metapath '" + text + "' does not start and end at '" + schema.type_name(target) + "'");
    }
    if (seen.insert(p.canonical()).second) lengths.insert(p.length());
  }
  set.paths.assign(seen.begin(), seen.end());
  set.lengths.assign(lengths.begin(), lengths.end());
  return set;
}

std::string join_lengths(const std::vector<std::size_t>& lengths) {
  std::string out;
  for (std::size_t i = 0; i < lengths.size(); ++i) out += (i ? "," : "") + std::to_string(lengths[i]);
  return out;
}

}  // namespace

std::vector<std::size_t> parse_lengths(const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& token : split_commas(text)) {
    const auto k = parse_number<std::size_t>(token, "metapath length");
    if (k == 0) throw UsageError("metapath lengths must be positive");
    out.push_back(k);
  }
  return out;
}

int cmd_convert(const RunConfig& c) {
  const DatasetBundle bundle = load_bundle_manifest(require(c.bundle, "--bundle"));
  const Dataset data = load_csv_bundle(bundle, c.threads);
  save_cache(data, require(c.output, "--output"));

  const Schema& schema = data.graph.schema();
  std::string line = "wrote " + c.output + ": ";
  for (TypeId t = 0; t < schema.num_node_types(); ++t) {
    line += (t ? ", " : "") + schema.type_name(t) + "=" + std::to_string(data.graph.node_count(t));
  }
  std::uint64_t edges = 0;
  for (RelationId r = 0; r < schema.num_relations(); ++r) edges += data.graph.edge_count(r);
  line += "; " + std::to_string(schema.num_relations()) + " relations, " + std::to_string(edges) + " edges; " +
          std::to_string(data.labels.labeled_count()) + " labeled '" + schema.type_name(data.labels.target_type()) +
          "' nodes";
  std::cout << line << '\n';
  return kExitOk;
}

int cmd_metrics(const RunConfig& c) {
  if (c.directed && !c.expert) throw UsageError("--directed changes metric semantics; pass --expert as well");
  const Dataset data = load_graph(c);
  const Schema& schema = data.graph.schema();
  const TypeId target = resolve_target(data, c.target);
  const MetapathSet paths = select_metapaths(c, schema, target);
  if (paths.empty()) {
    throw AllMetapathsEmpty("no metapaths of length " + join_lengths(paths.lengths) + " return to '" +
                            schema.type_name(target) + "'");
  }

  MetricOptions options;
  options.aggregation = parse_aggregation(c.aggregation);
  options.induction.count_multiplicity = c.count_multiplicity;
  options.induction.keep_self_loops = c.keep_self_loops;
  options.induction.symmetrize = !c.directed;
  options.induction.threads = c.threads;

  std::string name = c.name;
  if (name.empty()) name = std::filesystem::path(c.graph).stem().string();
  MetricReport report = compute_metric_report(data.graph, data.labels, paths, options, name);
  for (const std::string& text : c.metapaths) report.config.explicit_metapaths.push_back(text);

  const std::string table = format_report_table(report);
  std::cout << table << std::flush;
  if (!c.output.empty()) write_file(c.output, report_to_json(report));
  if (!c.table_output.empty()) write_file(c.table_output, table);

  if (!report.mlh) throw AllMetapathsEmpty("every induced graph is empty; MLH and H2 are undefined");
  if (!report.h2) {
    throw DegenerateClassDistribution(
        "H_adj is undefined on every induced graph (a single class holds all degree mass); H2 index not computed");
  }
  return kExitOk;
}

int cmd_metapaths(const RunConfig& c) {
  const Dataset data = load_graph(c);
  const Schema& schema = data.graph.schema();
  const TypeId target = resolve_target(data, c.target);
  const MetapathSet paths = select_metapaths(c, schema, target);

  std::cout << paths.size() << " metapaths (target=" << schema.type_name(target)
            << ", lengths=" << join_lengths(paths.lengths) << ")\n";
  InductionOptions options;
  options.count_multiplicity = c.count_multiplicity;
  options.keep_self_loops = c.keep_self_loops;
  options.threads = c.threads;
  for (const Metapath& p : paths.paths) {
    std::cout << to_arrow_string(p, schema) << '\t' << to_compact_string(p, schema);
    if (c.materialize) std::cout << '\t' << induce_subgraph(data.graph, data.labels, p, options).m << " edges";
    std::cout << '\n';
  }
  return kExitOk;
}

int cmd_split(const RunConfig& c) {
  const Dataset data = load_graph(c);
  resolve_target(data, c.target);
  const std::string output = require(c.output, "--output");

  SplitMasks masks;
  if (c.strategy == "temporal") {
    if (!c.boundaries.empty()) {
      const auto parts = split_commas(c.boundaries);
      if (parts.size() != 2) throw UsageError("--boundaries expects t1,t2");
      masks = temporal_split_at(data.graph, data.labels, parse_number<Timestamp>(parts[0], "boundary"),
                                parse_number<Timestamp>(parts[1], "boundary"));
    } else {
      masks = temporal_split(data.graph, data.labels, parse_ratios(c.ratios));
    }
  } else if (c.strategy == "random") {
    if (!c.boundaries.empty()) throw UsageError("--boundaries applies to the temporal strategy only");
    masks = random_split(data.graph, data.labels, parse_ratios(c.ratios), c.seed);
  } else {
    throw UsageError("unknown split strategy '" + c.strategy + "' (expected temporal or random)");
  }

  write_file(output, split_to_json(masks, data.graph.schema()));
  if (!c.csv_dir.empty()) write_split_csvs(masks, c.csv_dir);

  const auto& d = masks.descriptor;
  std::cout << "split " << to_string(d.kind) << ": train=" << masks.train_indices().size()
            << " val=" << masks.val_indices().size() << " test=" << masks.test_indices().size();
  if (d.ratios) std::cout << " ratios=" << d.ratios->train << ',' << d.ratios->val << ',' << d.ratios->test;
  if (d.seed) std::cout << " seed=" << *d.seed;
  if (d.cut_points) std::cout << " boundaries=" << (*d.cut_points)[0] << ',' << (*d.cut_points)[1];
  auto show = [](const char* key, const std::optional<Timestamp>& t) {
    std::cout << ' ' << key << '=';
    if (t) {
      std::cout << *t;
    } else {
      std::cout << "none";
    }
  };
  if (d.kind != SplitKind::Random) {
    show("train_max", d.train_max);
    show("val_min", d.val_min);
    show("val_max", d.val_max);
    show("test_min", d.test_min);
  }
  std::cout << '\n';
  return kExitOk;
}

int cmd_stats(const RunConfig& c) {
  const Dataset data = load_graph(c);
  const GraphStats stats = compute_stats(data);
  std::cout << format_stats(stats);
  if (!c.output.empty()) write_file(c.output, stats_to_json(stats));
  return kExitOk;
}

int cmd_generate(const RunConfig& c) {
  PlantedConfig cfg = PlantedConfig::balanced(c.classes, c.nodes_per_class, c.direct_edges, c.mixing, c.seed);
  cfg.independent_labels = c.independent_labels;
  cfg.timestamps = !c.no_timestamps;
  if (c.hubs > 0) {
    HubLayer hub;
    hub.hub_count = c.hubs;
    hub.members_per_hub = c.members_per_hub;
    cfg.hubs.push_back(hub);
  }
  const Dataset data = generate_planted(cfg);
  const auto manifest = write_csv_bundle(data, require(c.output, "--output"));
  std::cout << "wrote " << manifest.string() << ": " << data.graph.node_count(0) << " '" << cfg.target_type
            << "' nodes, " << c.classes << " classes, mixing=" << c.mixing << ", seed=" << c.seed << '\n';
  return kExitOk;
}

}  // namespace hetgraph::cli
