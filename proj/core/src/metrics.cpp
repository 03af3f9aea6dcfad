#include "hetgraph/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "hetgraph/errors.hpp"
#include "hetgraph/parallel.hpp"
#include "hetgraph/rng.hpp"

namespace hetgraph {

namespace {

void require_edges(const InducedGraph& ig, const char* metric) {
  if (ig.m == 0) {
    throw EmptyInducedGraph(std::string(metric) + " is undefined on an empty induced graph (|E| = 0)");
  }
}

struct EdgeMass {
  double cross = 0.0;
  double total = 0.0;
};

// Symmetric graphs store each undirected edge as two arcs, so every non-loop
// arc carries half an edge; scaling by 2 keeps unweighted sums integral.
EdgeMass edge_mass(const InducedGraph& ig, const LabelMap& labels) {
  EdgeMass mass;
  for (std::uint64_t v = 0; v < ig.n; ++v) {
    const auto row = ig.row(v);
    const auto ws = ig.row_weights(v);
    for (std::size_t i = 0; i < row.size(); ++i) {
      const LocalId u = row[i];
      const double w = ws.empty() ? 1.0 : ws[i];
      if (ig.symmetric && u == v) {
        mass.total += 2 * w;
      } else {
        mass.total += w;
        if (labels[u] != labels[v]) mass.cross += w;
      }
    }
  }
  return mass;
}

}  // namespace

double edge_heterophily(const InducedGraph& ig, const LabelMap& labels) {
  require_edges(ig, "edge heterophily");
  const EdgeMass mass = edge_mass(ig, labels);
  return mass.cross / mass.total;
}

NodeHeterophily node_heterophily_detail(const InducedGraph& ig, const LabelMap& labels) {
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (ig.n + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  std::vector<double> fractions;
  NodeHeterophily out;

  for (std::size_t c = 0; c < chunks; ++c) {
    fractions.clear();
    const std::uint64_t last = std::min<std::uint64_t>(ig.n, (c + 1) * kChunk);
    for (std::uint64_t v = c * kChunk; v < last; ++v) {
      if (!labels.is_labeled(v)) continue;
      const auto row = ig.row(v);
      if (row.empty()) {
        ++out.isolated_nodes;
        continue;
      }
      const auto ws = ig.row_weights(v);
      double differ = 0.0;
      double total = 0.0;
      for (std::size_t i = 0; i < row.size(); ++i) {
        const double w = ws.empty() ? 1.0 : ws[i];
        total += w;
        if (labels[row[i]] != labels[v]) differ += w;
      }
      fractions.push_back(differ / total);
      ++out.contributing_nodes;
    }
    partial[c] = pairwise_sum(fractions);
  }

  if (out.contributing_nodes == 0) {
    throw EmptyInducedGraph("node heterophily is undefined: every labeled node is isolated");
  }
  out.value = pairwise_sum(partial) / static_cast<double>(out.contributing_nodes);
  return out;
}

double node_heterophily(const InducedGraph& ig, const LabelMap& labels) {
  return node_heterophily_detail(ig, labels).value;
}

ClassDegreeTable class_degree_profile(const InducedGraph& ig, const LabelMap& labels) {
  require_edges(ig, "class degree profile");
  ClassDegreeTable table;
  table.class_degree.assign(labels.num_classes(), 0.0);

  if (ig.symmetric) {
    for (std::uint64_t v = 0; v < ig.n; ++v) {
      const auto row = ig.row(v);
      if (row.empty()) continue;
      const auto ws = ig.row_weights(v);
      double d = 0.0;
      for (std::size_t i = 0; i < row.size(); ++i) d += (ws.empty() ? 1.0 : ws[i]) * (row[i] == v ? 2.0 : 1.0);
      table.class_degree[static_cast<std::size_t>(labels[v])] += d;
    }
  } else {
    const auto in = ig.in_degrees();
    for (std::uint64_t v = 0; v < ig.n; ++v) {
      if (in[v] > 0) table.class_degree[static_cast<std::size_t>(labels[v])] += in[v];
    }
  }

  double squares = 0.0;
  for (double d : table.class_degree) {
    table.endpoint_total += d;
    squares += d * d;
    if (d > 0) ++table.classes_present;
  }
  table.collision_mass = squares / (table.endpoint_total * table.endpoint_total);
  return table;
}

double adjusted_heterophily(double edge_heterophily, const ClassDegreeTable& profile) {
  if (profile.degenerate()) {
    throw DegenerateClassDistribution(
        "adjusted heterophily is undefined: all edge endpoints fall in one class, so the denominator "
        "1 - sum_k D_k^2/(2|E|)^2 is zero");
  }
  const double expected = 1.0 - profile.collision_mass;
  return 1.0 - (expected - edge_heterophily) / expected;
}

double adjusted_heterophily(const InducedGraph& ig, const LabelMap& labels) {
  const ClassDegreeTable profile = class_degree_profile(ig, labels);
  return adjusted_heterophily(edge_heterophily(ig, labels), profile);
}

std::string_view to_string(AggregationKind kind) noexcept {
  return kind == AggregationKind::Mean ? "mean" : "max";
}

AggregationKind parse_aggregation(std::string_view text) {
  if (text == "mean") return AggregationKind::Mean;
  if (text == "max") return AggregationKind::Max;
  throw UsageError("unknown aggregation '" + std::string(text) + "' (expected mean or max)");
}

double aggregate(std::span<const double> values, AggregationKind kind) {
  if (values.empty()) throw AllMetapathsEmpty("nothing to aggregate");
  if (kind == AggregationKind::Max) return *std::max_element(values.begin(), values.end());
  return pairwise_sum(values) / static_cast<double>(values.size());
}

namespace {

enum class PerPath { EdgeOnly, Adjusted };

// Induces every path (outer workers over paths, inner workers within one
// induction) and collects the requested per-path value; nullopt marks a skip.
std::vector<std::optional<double>> per_path_values(const HeteroGraph& g, const LabelMap& labels,
                                                   const MetapathSet& paths, const MetricOptions& options,
                                                   PerPath what) {
  std::vector<std::optional<double>> values(paths.size());
  const unsigned threads = std::max(1u, options.induction.threads);
  const unsigned outer = static_cast<unsigned>(std::min<std::size_t>(threads, paths.size()));
  InductionOptions inner = options.induction;
  inner.threads = std::max(1u, threads / std::max(1u, outer));
  parallel_for(paths.size(), outer, [&](std::size_t i) {
    const InducedGraph ig = induce_subgraph(g, labels, paths.paths[i], inner);
    if (ig.empty()) return;
    const double h = edge_heterophily(ig, labels);
    if (what == PerPath::EdgeOnly) {
      values[i] = h;
      return;
    }
    const ClassDegreeTable profile = class_degree_profile(ig, labels);
    if (!profile.degenerate()) values[i] = adjusted_heterophily(h, profile);
  });
  return values;
}

double aggregate_survivors(const std::vector<std::optional<double>>& values, AggregationKind kind, const char* metric) {
  std::vector<double> kept;
  for (const auto& v : values) {
    if (v) kept.push_back(*v);
  }
  if (kept.empty()) {
    throw AllMetapathsEmpty(std::string(metric) + ": every one of " + std::to_string(values.size()) +
                            " metapaths was skipped (empty or degenerate induced graph)");
  }
  return aggregate(kept, kind);
}

}  // namespace

double metapath_label_heterophily(const HeteroGraph& g, const LabelMap& labels, const MetapathSet& paths,
                                  const MetricOptions& options) {
  if (paths.empty()) throw AllMetapathsEmpty("MLH: the metapath set is empty");
  return aggregate_survivors(per_path_values(g, labels, paths, options, PerPath::EdgeOnly), options.aggregation,
                             "MLH");
}

double h2_index(const HeteroGraph& g, const LabelMap& labels, const MetapathSet& paths, const MetricOptions& options) {
  if (paths.empty()) throw AllMetapathsEmpty("H2: the metapath set is empty");
  return aggregate_survivors(per_path_values(g, labels, paths, options, PerPath::Adjusted), options.aggregation, "H2");
}

EdgeEstimate estimate_edge_heterophily(const InducedGraph& ig, const LabelMap& labels, std::uint64_t sample_size,
                                       std::uint64_t seed, SamplingMode mode) {
  require_edges(ig, "edge heterophily");
  if (sample_size < 1) throw UsageError("sample size must be at least 1");
  if (ig.weighted()) throw UsageError("edge sampling supports unweighted induced graphs only");

  EdgeEstimate out;
  if (mode == SamplingMode::Exhaustive && sample_size >= ig.m) {
    out.estimate = edge_heterophily(ig, labels);
    out.samples = ig.m;
    out.exact = true;
    return out;
  }

  // Uniform arc = uniform edge on a symmetric loop-free graph (two arcs per edge).
  CounterRng rng(seed);
  const std::uint64_t arcs = ig.arcs();
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < sample_size; ++s) {
    const std::uint64_t idx = rng.below(arcs);
    const auto it = std::upper_bound(ig.offsets.begin(), ig.offsets.end(), idx);
    const auto v = static_cast<std::uint64_t>(it - ig.offsets.begin() - 1);
    hits += labels[ig.neighbors[idx]] != labels[v];
  }
  const double p = static_cast<double>(hits) / static_cast<double>(sample_size);
  out.estimate = p;
  out.half_width = 1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(sample_size));
  out.samples = sample_size;
  return out;
}

}  // namespace hetgraph
