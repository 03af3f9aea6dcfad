#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "hetgraph/graph.hpp"
#include "hetgraph/metapath.hpp"

namespace hgtest {

// Homogeneous labeled graph on one type "v" with relation "e" (stored once per
// undirected edge; symmetrization happens at induction).
inline hetgraph::Dataset homogeneous(std::uint64_t n, const std::vector<std::pair<hetgraph::LocalId, hetgraph::LocalId>>& edges,
                                     std::vector<hetgraph::ClassId> labels, std::uint32_t classes) {
  hetgraph::Schema s;
  s.add_node_type("v");
  s.add_relation("v", "e", "v");
  hetgraph::EdgeList list;
  for (auto [a, b] : edges) {
    list.src.push_back(a);
    list.dst.push_back(b);
  }
  hetgraph::Dataset d;
  d.graph = hetgraph::HeteroGraph::from_edge_lists(std::move(s), {n}, {std::move(list)});
  d.labels = hetgraph::LabelMap(0, classes, std::move(labels));
  return d;
}

inline hetgraph::InducedGraph direct(const hetgraph::Dataset& d, hetgraph::InductionOptions opt = {}) {
  return hetgraph::induce_subgraph(d.graph, d.labels, hetgraph::Metapath({{0, hetgraph::StepDirection::Forward}}), opt);
}

// paper(3) <- writes - author(2); paper -cites-> paper.
inline hetgraph::Schema academic_schema() {
  hetgraph::Schema s;
  s.add_node_type("paper");
  s.add_node_type("author");
  s.add_relation("author", "writes", "paper");
  s.add_relation("paper", "cites", "paper");
  return s;
}

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng(std::random_device{}());
    path_ = std::filesystem::temp_directory_path() / ("hetgraph-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace hgtest
