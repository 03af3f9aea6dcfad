#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hetgraph::cli {

// Exit codes are a stable contract for pipelines.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitDegenerate = 3;

struct RunConfig {
  std::string subcommand;

  // Shared across subcommands.
  std::string graph;
  std::string output;
  std::string target;
  std::string lengths = "1,2";
  std::string aggregation = "mean";
  std::uint64_t seed = 1;
  unsigned threads = 1;

  // convert
  std::string bundle;

  // metrics / metapaths
  std::vector<std::string> metapaths;
  std::string name;
  std::string table_output;
  bool count_multiplicity = false;
  bool keep_self_loops = false;
  bool directed = false;
  bool expert = false;
  bool materialize = false;

  // split
  std::string strategy = "temporal";
  std::string ratios = "0.8,0.1,0.1";
  std::string boundaries;
  std::string csv_dir;

  // generate
  std::uint32_t classes = 2;
  std::uint32_t nodes_per_class = 1000;
  std::uint64_t direct_edges = 10000;
  double mixing = 0.5;
  std::uint32_t hubs = 0;
  std::uint32_t members_per_hub = 8;
  bool independent_labels = false;
  bool no_timestamps = false;
};

int cmd_convert(const RunConfig& config);
int cmd_metrics(const RunConfig& config);
int cmd_metapaths(const RunConfig& config);
int cmd_split(const RunConfig& config);
int cmd_stats(const RunConfig& config);
int cmd_generate(const RunConfig& config);

/// Positive integers from "1,2".
std::vector<std::size_t> parse_lengths(const std::string& text);

}  // namespace hetgraph::cli
