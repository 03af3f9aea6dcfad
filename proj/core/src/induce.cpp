#include <algorithm>
#include <bit>
#include <numeric>

#include "hetgraph/errors.hpp"
#include "hetgraph/metapath.hpp"
#include "hetgraph/parallel.hpp"

namespace hetgraph {

double InducedGraph::degree(std::size_t v) const noexcept {
  if (weights.empty()) return static_cast<double>(offsets[v + 1] - offsets[v]);
  double total = 0.0;
  for (double w : row_weights(v)) total += w;
  return total;
}

std::vector<double> InducedGraph::in_degrees() const {
  std::vector<double> in(n, 0.0);
  for (std::size_t i = 0; i < neighbors.size(); ++i) in[neighbors[i]] += weights.empty() ? 1.0 : weights[i];
  return in;
}

namespace {

constexpr std::size_t kRowBlock = 2048;
constexpr std::uint64_t kMinDenseSize = 256;

struct StepView {
  const Csr* csr;
  std::uint64_t n_dst;
};

struct Rows {
  std::vector<EdgeOffset> offsets{0};
  std::vector<LocalId> cols;
  std::vector<double> weights;
};

// Per-worker accumulator for one frontier expansion (one sparse row times one
// relation matrix). Small frontiers are gathered, sorted and merged; large ones
// go through a bitset sized to the destination type.
class Expander {
 public:
  void expand(std::span<const LocalId> frontier, const StepView& step, double dense_fraction,
              std::vector<LocalId>& out) {
    out.clear();
    std::uint64_t total = 0;
    for (LocalId w : frontier) total += step.csr->row_length(w);
    if (total == 0) return;

    if (step.n_dst >= kMinDenseSize && static_cast<double>(total) > dense_fraction * static_cast<double>(step.n_dst)) {
      const std::size_t words = (step.n_dst + 63) / 64;
      if (bits_.size() < words) bits_.resize(words, 0);
      for (LocalId w : frontier) {
        for (LocalId v : step.csr->row(w)) bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
      }
      for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t word = bits_[i];
        bits_[i] = 0;
        while (word) {
          out.push_back(static_cast<LocalId>(i * 64 + static_cast<std::size_t>(std::countr_zero(word))));
          word &= word - 1;
        }
      }
      return;
    }

    out.reserve(total);
    for (LocalId w : frontier) {
      const auto row = step.csr->row(w);
      out.insert(out.end(), row.begin(), row.end());
    }
    if (frontier.size() > 1) std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }

  // Walk-count variant: out weight of v is the sum over frontier entries w of
  // weight(w) times the multiplicity of v in row w.
  void expand_weighted(std::span<const LocalId> frontier, std::span<const double> weight, const StepView& step,
                       double dense_fraction, std::vector<LocalId>& out, std::vector<double>& out_weight) {
    out.clear();
    out_weight.clear();
    std::uint64_t total = 0;
    for (LocalId w : frontier) total += step.csr->row_length(w);
    if (total == 0) return;

    if (step.n_dst >= kMinDenseSize && static_cast<double>(total) > dense_fraction * static_cast<double>(step.n_dst)) {
      const std::size_t words = (step.n_dst + 63) / 64;
      if (bits_.size() < words) bits_.resize(words, 0);
      if (dense_.size() < step.n_dst) dense_.resize(step.n_dst, 0.0);
      for (std::size_t i = 0; i < frontier.size(); ++i) {
        for (LocalId v : step.csr->row(frontier[i])) {
          bits_[v >> 6] |= std::uint64_t{1} << (v & 63);
          dense_[v] += weight[i];
        }
      }
      for (std::size_t i = 0; i < words; ++i) {
        std::uint64_t word = bits_[i];
        bits_[i] = 0;
        while (word) {
          const auto v = static_cast<LocalId>(i * 64 + static_cast<std::size_t>(std::countr_zero(word)));
          out.push_back(v);
          out_weight.push_back(dense_[v]);
          dense_[v] = 0.0;
          word &= word - 1;
        }
      }
      return;
    }

    pairs_.clear();
    pairs_.reserve(total);
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (LocalId v : step.csr->row(frontier[i])) pairs_.emplace_back(v, weight[i]);
    }
    std::sort(pairs_.begin(), pairs_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [v, w] : pairs_) {
      if (!out.empty() && out.back() == v) {
        out_weight.back() += w;
      } else {
        out.push_back(v);
        out_weight.push_back(w);
      }
    }
  }

 private:
  std::vector<std::uint64_t> bits_;
  std::vector<double> dense_;
  std::vector<std::pair<LocalId, double>> pairs_;
};

// Builds row-blocked output in parallel and stitches the blocks in row order,
// so the result does not depend on the thread count.
template <typename FillRow>
Rows build_rows(std::uint64_t n, unsigned threads, bool weighted, FillRow&& fill_row) {
  const std::size_t blocks = (n + kRowBlock - 1) / kRowBlock;
  std::vector<Rows> parts(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    thread_local Expander expander;
    Rows& part = parts[b];
    const std::uint64_t first = b * kRowBlock;
    const std::uint64_t last = std::min<std::uint64_t>(n, first + kRowBlock);
    part.offsets.reserve(last - first + 1);
    for (std::uint64_t v = first; v < last; ++v) {
      fill_row(static_cast<LocalId>(v), expander, part.cols, part.weights);
      part.offsets.push_back(part.cols.size());
    }
  });

  Rows out;
  std::uint64_t total = 0;
  for (const Rows& p : parts) total += p.cols.size();
  out.offsets.reserve(n + 1);
  out.cols.reserve(total);
  if (weighted) out.weights.reserve(total);
  for (Rows& p : parts) {
    const EdgeOffset base = out.cols.size();
    for (std::size_t i = 1; i < p.offsets.size(); ++i) out.offsets.push_back(base + p.offsets[i]);
    out.cols.insert(out.cols.end(), p.cols.begin(), p.cols.end());
    if (weighted) out.weights.insert(out.weights.end(), p.weights.begin(), p.weights.end());
    p = Rows{};
  }
  return out;
}

Rows transpose_rows(const Rows& a, std::uint64_t n) {
  Rows t;
  t.offsets.assign(n + 1, 0);
  for (LocalId c : a.cols) ++t.offsets[c + 1];
  std::partial_sum(t.offsets.begin(), t.offsets.end(), t.offsets.begin());
  t.cols.resize(a.cols.size());
  if (!a.weights.empty()) t.weights.resize(a.cols.size());
  std::vector<EdgeOffset> cursor(t.offsets.begin(), t.offsets.end() - 1);
  for (std::uint64_t r = 0; r < n; ++r) {
    for (EdgeOffset i = a.offsets[r]; i < a.offsets[r + 1]; ++i) {
      const EdgeOffset pos = cursor[a.cols[i]]++;
      t.cols[pos] = static_cast<LocalId>(r);
      if (!a.weights.empty()) t.weights[pos] = a.weights[i];
    }
  }
  return t;
}

InducedGraph finish(Metapath path, std::uint64_t n, Rows rows, bool symmetric, bool weighted) {
  InducedGraph ig;
  ig.metapath = std::move(path);
  ig.n = n;
  ig.offsets = std::move(rows.offsets);
  ig.neighbors = std::move(rows.cols);
  if (weighted) ig.weights = std::move(rows.weights);
  ig.symmetric = symmetric;

  std::uint64_t loops = 0;
  for (std::uint64_t v = 0; v < n; ++v) {
    for (LocalId u : ig.row(v)) loops += u == v;
  }
  ig.has_self_loops = loops > 0;
  ig.m = symmetric ? (ig.neighbors.size() - loops) / 2 + loops : ig.neighbors.size();
  return ig;
}

}  // namespace

InducedGraph induce_subgraph(const HeteroGraph& g, const LabelMap& labels, const Metapath& path,
                             const InductionOptions& options) {
  const Schema& schema = g.schema();
  const TypeId target = labels.target_type();
  if (!path.type_checks(schema, target)) {
    throw TypeMismatch("metapath '" + (path.empty() ? std::string("<empty>") : to_compact_string(path, schema)) +
                       "' does not start and end at '" + schema.type_name(target) + "'");
  }
  const std::uint64_t n = g.node_count(target);
  if (labels.size() != n) throw DataError("label count does not match target type node count");

  std::vector<StepView> steps;
  for (const auto& s : path.steps()) {
    const Relation& rel = schema.relation(s.relation);
    if (s.direction == StepDirection::Forward) {
      steps.push_back({&g.forward(s.relation), g.node_count(rel.dst)});
    } else {
      steps.push_back({&g.reverse(s.relation), g.node_count(rel.src)});
    }
  }

  const bool weighted = options.count_multiplicity;
  const bool keep_loops = options.keep_self_loops;
  const double dense = options.dense_fraction;

  auto fill = [&](LocalId u, Expander& ex, std::vector<LocalId>& cols, std::vector<double>& ws) {
    if (!labels.is_labeled(u)) return;
    thread_local std::vector<LocalId> frontier, next;
    thread_local std::vector<double> fw, nw;
    frontier.assign(1, u);
    fw.assign(1, 1.0);
    for (const StepView& step : steps) {
      if (weighted) {
        ex.expand_weighted(frontier, fw, step, dense, next, nw);
        std::swap(fw, nw);
      } else {
        ex.expand(frontier, step, dense, next);
      }
      std::swap(frontier, next);
      if (frontier.empty()) return;
    }
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const LocalId v = frontier[i];
      if ((v == u && !keep_loops) || !labels.is_labeled(v)) continue;
      cols.push_back(v);
      if (weighted) ws.push_back(fw[i]);
    }
  };
  Rows arcs = build_rows(n, options.threads, weighted, fill);

  // A palindromic path already yields a symmetric relation.
  if (!options.symmetrize || path == path.reversed()) {
    return finish(path, n, std::move(arcs), options.symmetrize, weighted);
  }

  const Rows back = transpose_rows(arcs, n);
  auto merge = [&](LocalId v, Expander&, std::vector<LocalId>& cols, std::vector<double>& ws) {
    EdgeOffset i = arcs.offsets[v], ie = arcs.offsets[v + 1];
    EdgeOffset j = back.offsets[v], je = back.offsets[v + 1];
    while (i < ie || j < je) {
      if (j == je || (i < ie && arcs.cols[i] < back.cols[j])) {
        cols.push_back(arcs.cols[i]);
        if (weighted) ws.push_back(arcs.weights[i] / 2);
        ++i;
      } else if (i == ie || back.cols[j] < arcs.cols[i]) {
        cols.push_back(back.cols[j]);
        if (weighted) ws.push_back(back.weights[j] / 2);
        ++j;
      } else {
        cols.push_back(arcs.cols[i]);
        if (weighted) ws.push_back((arcs.weights[i] + back.weights[j]) / 2);
        ++i;
        ++j;
      }
    }
  };
  Rows sym = build_rows(n, options.threads, weighted, merge);
  return finish(path, n, std::move(sym), true, weighted);
}

InducedGraph merge_induced(std::span<const InducedGraph* const> graphs) {
  if (graphs.empty()) throw UsageError("merge_induced needs at least one graph");
  const std::uint64_t n = graphs.front()->n;
  bool weighted = false;
  bool symmetric = true;
  for (const InducedGraph* g : graphs) {
    if (g->n != n) throw UsageError("merge_induced: graphs have different node counts");
    weighted = weighted || g->weighted();
    symmetric = symmetric && g->symmetric;
  }

  auto fill = [&](LocalId v, Expander&, std::vector<LocalId>& cols, std::vector<double>& ws) {
    thread_local std::vector<std::pair<LocalId, double>> entries;
    entries.clear();
    for (const InducedGraph* g : graphs) {
      const auto row = g->row(v);
      const auto rw = g->row_weights(v);
      for (std::size_t i = 0; i < row.size(); ++i) entries.emplace_back(row[i], rw.empty() ? 1.0 : rw[i]);
    }
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const std::size_t row_start = cols.size();
    for (const auto& [u, w] : entries) {
      if (cols.size() > row_start && cols.back() == u) {
        if (weighted) ws.back() += w;
        continue;
      }
      cols.push_back(u);
      if (weighted) ws.push_back(w);
    }
  };
  Rows rows = build_rows(n, 1, weighted, fill);
  return finish(Metapath{}, n, std::move(rows), symmetric, weighted);
}

}  // namespace hetgraph
