#pragma once

// Brute-force reference implementations. Everything here works on raw edge
// lists and dense matrices and is deliberately slow and obvious.

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>
#include <vector>

#include "random_graphs.hpp"

namespace hgtest {

// (relation index, reversed?) pairs.
using RawStep = std::pair<std::uint32_t, bool>;
using RawPath = std::vector<RawStep>;
using Dense = std::vector<std::vector<double>>;

inline std::uint32_t raw_from(const RawGraph& g, RawStep s) {
  return s.second ? g.relations[s.first].dst : g.relations[s.first].src;
}
inline std::uint32_t raw_to(const RawGraph& g, RawStep s) {
  return s.second ? g.relations[s.first].src : g.relations[s.first].dst;
}

// Follows every individual edge recursively and counts complete walks.
inline void walk(const RawGraph& g, const RawPath& path, std::size_t depth, std::uint32_t node, std::uint32_t start,
                 Dense& counts) {
  if (depth == path.size()) {
    counts[start][node] += 1.0;
    return;
  }
  const auto& rel = g.relations[path[depth].first];
  for (auto [a, b] : rel.edges) {
    const std::uint32_t from = path[depth].second ? b : a;
    const std::uint32_t to = path[depth].second ? a : b;
    if (from == node) walk(g, path, depth + 1, to, start, counts);
  }
}

inline Dense walk_counts(const RawGraph& g, const RawPath& path) {
  const auto n = g.counts[g.target];
  Dense c(n, std::vector<double>(n, 0.0));
  for (std::uint32_t u = 0; u < n; ++u) walk(g, path, 0, u, u, c);
  return c;
}

struct OracleInduction {
  bool weighted = false;
  bool keep_loops = false;
  bool symmetrize = true;
};

// Dense adjacency of the induced graph: 0 means no edge.
inline Dense oracle_induce(const RawGraph& g, const RawPath& path, const OracleInduction& opt = {}) {
  Dense c = walk_counts(g, path);
  const auto n = c.size();
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      if (g.labels[u] < 0 || g.labels[v] < 0 || (u == v && !opt.keep_loops)) c[u][v] = 0.0;
      if (!opt.weighted && c[u][v] > 0) c[u][v] = 1.0;
    }
  }
  if (!opt.symmetrize) return c;
  Dense s(n, std::vector<double>(n, 0.0));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = 0; v < n; ++v) {
      s[u][v] = opt.weighted ? (c[u][v] + c[v][u]) / 2 : (c[u][v] > 0 || c[v][u] > 0 ? 1.0 : 0.0);
    }
  }
  return s;
}

inline Dense to_dense(const hetgraph::InducedGraph& ig) {
  Dense d(ig.n, std::vector<double>(ig.n, 0.0));
  for (std::size_t v = 0; v < ig.n; ++v) {
    const auto row = ig.row(v);
    const auto ws = ig.row_weights(v);
    for (std::size_t i = 0; i < row.size(); ++i) d[v][row[i]] += ws.empty() ? 1.0 : ws[i];
  }
  return d;
}

inline bool empty_matrix(const Dense& a) {
  for (const auto& row : a) {
    for (double x : row) {
      if (x != 0) return false;
    }
  }
  return true;
}

// Undirected convention: a u-v edge has both endpoints in the sum, a loop u-u
// contributes its weight twice. Directed: arcs count once.
inline double naive_edge_heterophily(const Dense& a, const std::vector<std::int32_t>& y, bool symmetric = true) {
  double cross = 0, total = 0;
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = 0; v < a.size(); ++v) {
      const double w = (symmetric && u == v) ? 2 * a[u][v] : a[u][v];
      total += w;
      if (y[u] != y[v]) cross += w;
    }
  }
  return cross / total;
}

inline std::optional<double> naive_node_heterophily(const Dense& a, const std::vector<std::int32_t>& y) {
  double sum = 0;
  std::size_t count = 0;
  for (std::size_t u = 0; u < a.size(); ++u) {
    if (y[u] < 0) continue;
    double differ = 0, total = 0;
    for (std::size_t v = 0; v < a.size(); ++v) {
      total += a[u][v];
      if (y[u] != y[v]) differ += a[u][v];
    }
    if (total == 0) continue;
    sum += differ / total;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

inline double naive_collision_mass(const Dense& a, const std::vector<std::int32_t>& y, std::uint32_t classes,
                                   bool symmetric = true) {
  std::vector<double> mass(classes, 0.0);
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (symmetric) {
        if (a[u][v] != 0) mass[y[u]] += (u == v ? 2 : 1) * a[u][v];
      } else if (a[u][v] != 0) {
        mass[y[v]] += a[u][v];  // in-degree of v
      }
    }
  }
  double total = 0, squares = 0;
  for (double d : mass) {
    total += d;
    squares += d * d;
  }
  return squares / (total * total);
}

inline std::size_t naive_classes_present(const Dense& a, const std::vector<std::int32_t>& y, std::uint32_t classes) {
  std::vector<bool> seen(classes, false);
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (a[u][v] != 0) seen[y[u]] = seen[y[v]] = true;
    }
  }
  return static_cast<std::size_t>(std::count(seen.begin(), seen.end(), true));
}

// Closed form of adjusted heterophily, as opposed to the library's tabled form.
inline double naive_adjusted(double h_edge, double p) { return h_edge / (1.0 - p); }

// All step sequences of length L, filtered to chains that start and end at the target.
inline std::vector<RawPath> raw_paths_of_length(const RawGraph& g, std::size_t length) {
  std::vector<RawPath> out;
  const std::size_t options = g.relations.size() * 2;
  std::vector<std::size_t> digits(length, 0);
  while (true) {
    RawPath p;
    for (std::size_t d : digits) p.emplace_back(static_cast<std::uint32_t>(d / 2), d % 2 == 1);
    bool ok = raw_from(g, p.front()) == g.target && raw_to(g, p.back()) == g.target;
    for (std::size_t i = 1; ok && i < p.size(); ++i) ok = raw_to(g, p[i - 1]) == raw_from(g, p[i]);
    if (ok) out.push_back(p);
    std::size_t i = 0;
    while (i < length && ++digits[i] == options) digits[i++] = 0;
    if (i == length) break;
  }
  return out;
}

inline RawPath raw_reverse(RawPath p) {
  std::reverse(p.begin(), p.end());
  for (auto& s : p) s.second = !s.second;
  return p;
}

// Shorter first, then lexicographic on (relation, reversed).
inline bool raw_less(const RawPath& a, const RawPath& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline std::vector<RawPath> oracle_enumerate(const RawGraph& g, const std::vector<std::size_t>& lengths) {
  std::vector<RawPath> out;
  for (std::size_t L : lengths) {
    for (const RawPath& p : raw_paths_of_length(g, L)) {
      const RawPath r = raw_reverse(p);
      const RawPath& canon = raw_less(r, p) ? r : p;
      if (std::find(out.begin(), out.end(), canon) == out.end()) out.push_back(canon);
    }
  }
  std::sort(out.begin(), out.end(), raw_less);
  return out;
}

inline RawPath to_raw(const hetgraph::Metapath& p) {
  RawPath out;
  for (const auto& s : p.steps()) out.emplace_back(s.relation, s.direction == hetgraph::StepDirection::Reverse);
  return out;
}

inline hetgraph::Metapath from_raw(const RawPath& p) {
  std::vector<hetgraph::MetapathStep> steps;
  for (auto [r, rev] : p) {
    steps.push_back({static_cast<hetgraph::RelationId>(r),
                     rev ? hetgraph::StepDirection::Reverse : hetgraph::StepDirection::Forward});
  }
  return hetgraph::Metapath(std::move(steps));
}

inline double max_abs_diff(const Dense& a, const Dense& b) {
  double worst = 0;
  for (std::size_t u = 0; u < a.size(); ++u) {
    for (std::size_t v = 0; v < a.size(); ++v) worst = std::max(worst, std::abs(a[u][v] - b[u][v]));
  }
  return worst;
}

}  // namespace hgtest
