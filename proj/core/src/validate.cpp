#include <algorithm>

#include "hetgraph/graph.hpp"

namespace hetgraph {

std::string_view to_string(FindingKind kind) noexcept {
  switch (kind) {
    case FindingKind::ShapeMismatch: return "shape mismatch";
    case FindingKind::OffsetsNotMonotone: return "offsets not monotone";
    case FindingKind::IndexOutOfRange: return "index out of range";
    case FindingKind::RowNotSorted: return "row not sorted";
    case FindingKind::TransposeMismatch: return "transpose mismatch";
    case FindingKind::TimestampLength: return "timestamp length";
    case FindingKind::FeatureShape: return "feature shape";
  }
  return "unknown";
}

std::size_t ValidationReport::count(FindingKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(findings.begin(), findings.end(), [kind](const Finding& f) { return f.kind == kind; }));
}

namespace {

// Checks one CSR's structure. Returns false when the CSR is too broken for
// further checks (a transpose of it would read out of bounds).
bool check_csr(const Csr& csr, std::uint64_t rows, std::uint64_t cols, RelationId rel, const char* which,
               std::vector<Finding>& out) {
  const std::string prefix = std::string(which) + " csr: ";
  if (csr.offsets.size() != rows + 1) {
    out.push_back({FindingKind::ShapeMismatch, rel, std::nullopt,
                   prefix + "has " + std::to_string(csr.offsets.size()) + " offsets, expected " +
                       std::to_string(rows + 1)});
    return false;
  }
  if (csr.offsets.front() != 0 || csr.offsets.back() != csr.columns.size()) {
    out.push_back({FindingKind::ShapeMismatch, rel, std::nullopt,
                   prefix + "offsets do not span the column array"});
    return false;
  }
  bool usable = true;
  for (std::uint64_t r = 0; r < rows; ++r) {
    if (csr.offsets[r] > csr.offsets[r + 1]) {
      out.push_back({FindingKind::OffsetsNotMonotone, rel, r, prefix + "offsets decrease"});
      return false;
    }
  }
  for (std::uint64_t r = 0; r < rows; ++r) {
    const auto row = csr.row(r);
    for (LocalId c : row) {
      if (c >= cols) {
        out.push_back({FindingKind::IndexOutOfRange, rel, r,
                       prefix + "index out of range: " + std::to_string(c) + " >= " + std::to_string(cols)});
        usable = false;
        break;
      }
    }
    if (!std::is_sorted(row.begin(), row.end())) {
      out.push_back({FindingKind::RowNotSorted, rel, r, prefix + "columns not sorted"});
    }
  }
  return usable;
}

}  // namespace

ValidationReport validate_graph(const HeteroGraph& g) {
  ValidationReport report;
  auto& out = report.findings;
  const Schema& schema = g.schema();

  if (g.node_counts().size() != schema.num_node_types()) {
    out.push_back({FindingKind::ShapeMismatch, std::nullopt, std::nullopt,
                   "node count vector does not match schema node types"});
    return report;
  }

  for (TypeId t = 0; t < schema.num_node_types(); ++t) {
    if (g.has_timestamps(t) && g.timestamps(t).size() != g.node_count(t)) {
      out.push_back({FindingKind::TimestampLength, std::nullopt, std::nullopt,
                     "timestamps of '" + schema.type_name(t) + "' do not match node count"});
    }
    if (const auto& f = g.features(t); f && f->values.size() != g.node_count(t) * f->width) {
      out.push_back({FindingKind::FeatureShape, std::nullopt, std::nullopt,
                     "feature block of '" + schema.type_name(t) + "' does not match node count"});
    }
  }

  for (RelationId r = 0; r < schema.num_relations(); ++r) {
    const Relation& rel = schema.relation(r);
    const std::uint64_t n_src = g.node_count(rel.src);
    const std::uint64_t n_dst = g.node_count(rel.dst);
    const bool fwd_ok = check_csr(g.forward(r), n_src, n_dst, r, "forward", out);
    const bool rev_ok = check_csr(g.reverse(r), n_dst, n_src, r, "reverse", out);
    if (!fwd_ok || !rev_ok) continue;

    const Csr expected = g.forward(r).transposed(n_dst);
    const Csr& actual = g.reverse(r);
    for (std::uint64_t row = 0; row < n_dst; ++row) {
      const auto a = expected.row(row);
      const auto b = actual.row(row);
      if (!std::equal(a.begin(), a.end(), b.begin(), b.end())) {
        out.push_back({FindingKind::TransposeMismatch, r, row,
                       "transpose mismatch: reverse row " + std::to_string(row) + " has " +
                           std::to_string(b.size()) + " entries, forward implies " + std::to_string(a.size())});
        break;
      }
    }
  }
  return report;
}

}  // namespace hetgraph
