#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "hetgraph/errors.hpp"
#include "hetgraph/parallel.hpp"

using namespace hetgraph;
using namespace hetgraph::cli;

namespace {

void add_metapath_flags(CLI::App* sub, RunConfig& c) {
  sub->add_option("--metapath", c.metapaths, "Explicit metapath (arrow or compact syntax); repeatable");
  sub->add_flag("--count-multiplicity", c.count_multiplicity, "Weight induced edges by walk count");
  sub->add_flag("--keep-self-loops", c.keep_self_loops, "Keep u-u edges from closed walks");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig c;
  c.threads = default_thread_count();

  CLI::App app{"Heterophily measurement for heterogeneous graphs"};
  app.set_config("--config", "", "TOML or INI file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--graph", c.graph, "Binary graph cache");
  app.add_option("--target", c.target, "Target (labeled) node type");
  app.add_option("--lengths", c.lengths, "Metapath lengths, comma separated")->capture_default_str();
  app.add_option("--agg", c.aggregation, "Aggregation over metapaths")
      ->check(CLI::IsMember({"mean", "max"}))
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads")
      ->envname(kThreadsEnvVar)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--output", c.output, "Output file or directory");

  auto* convert = app.add_subcommand("convert", "CSV bundle to binary cache");
  convert->add_option("--bundle", c.bundle, "Bundle manifest (dataset.json)");

  auto* metrics = app.add_subcommand("metrics", "Heterophily report");
  add_metapath_flags(metrics, c);
  metrics->add_flag("--directed", c.directed, "Skip symmetrization of induced graphs (needs --expert)");
  metrics->add_flag("--expert", c.expert, "Allow non-default metric semantics");
  metrics->add_option("--name", c.name, "Dataset column name");
  metrics->add_option("--table", c.table_output, "Also write the text table here");

  auto* metapaths = app.add_subcommand("metapaths", "List metapaths for the target type");
  add_metapath_flags(metapaths, c);
  metapaths->add_flag("--materialize", c.materialize, "Induce each metapath and print its edge count");

  auto* split = app.add_subcommand("split", "Train/val/test masks");
  split->add_option("--strategy", c.strategy, "temporal or random")
      ->check(CLI::IsMember({"temporal", "random"}))
      ->capture_default_str();
  split->add_option("--ratios", c.ratios, "train,val,test fractions")->capture_default_str();
  split->add_option("--boundaries", c.boundaries, "Explicit cut timestamps t1,t2");
  split->add_option("--csv-dir", c.csv_dir, "Also write train/val/test CSVs here");

  app.add_subcommand("stats", "Dataset statistics");

  auto* generate = app.add_subcommand("generate", "Planted-mixing synthetic bundle");
  generate->add_option("--classes", c.classes, "Number of classes")->capture_default_str();
  generate->add_option("--nodes-per-class", c.nodes_per_class, "Target nodes per class")->capture_default_str();
  generate->add_option("--direct-edges", c.direct_edges, "Target-target edges")->capture_default_str();
  generate->add_option("--mixing", c.mixing, "Cross-class probability")->capture_default_str();
  generate->add_option("--hubs", c.hubs, "Hub nodes in an intermediate layer (0 for none)")->capture_default_str();
  generate->add_option("--members-per-hub", c.members_per_hub, "Members drawn per hub")->capture_default_str();
  generate->add_flag("--independent-labels", c.independent_labels, "Structure ignores labels");
  generate->add_flag("--no-timestamps", c.no_timestamps, "Omit target timestamps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  c.subcommand = chosen->get_name();
  try {
    if (c.subcommand == "convert") return cmd_convert(c);
    if (c.subcommand == "metrics") return cmd_metrics(c);
    if (c.subcommand == "metapaths") return cmd_metapaths(c);
    if (c.subcommand == "split") return cmd_split(c);
    if (c.subcommand == "stats") return cmd_stats(c);
    if (c.subcommand == "generate") return cmd_generate(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
