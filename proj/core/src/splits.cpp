#include "hetgraph/splits.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>

#include "hetgraph/errors.hpp"
#include "hetgraph/rng.hpp"

namespace hetgraph {

std::string_view to_string(SplitKind kind) noexcept {
  switch (kind) {
    case SplitKind::Temporal: return "temporal";
    case SplitKind::TemporalBoundaries: return "temporal-boundaries";
    case SplitKind::Random: return "random";
  }
  return "unknown";
}

void check_ratios(const SplitRatios& r) {
  if (!(r.train > 0 && r.val > 0 && r.test > 0)) throw UsageError("split ratios must all be positive");
  if (std::abs(r.train + r.val + r.test - 1.0) > 1e-9) throw UsageError("split ratios must sum to 1");
}

SplitRatios parse_ratios(std::string_view text) {
  double parts[3];
  std::size_t count = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view token = text.substr(start, comma - start);
    if (count == 3) throw UsageError("expected three ratios a,b,c");
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), parts[count]);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw UsageError("invalid ratio '" + std::string(token) + "'");
    }
    ++count;
    start = comma + 1;
  }
  if (count != 3) throw UsageError("expected three ratios a,b,c");
  SplitRatios r{parts[0], parts[1], parts[2]};
  check_ratios(r);
  return r;
}

std::array<std::uint64_t, 3> split_sizes(std::uint64_t n, const SplitRatios& ratios) {
  const double nd = static_cast<double>(n);
  auto train = static_cast<std::uint64_t>(std::floor(ratios.train * nd + 1e-9));
  auto val = static_cast<std::uint64_t>(std::floor(ratios.val * nd + 1e-9));
  train = std::min(train, n);
  val = std::min(val, n - train);
  return {train, val, n - train - val};
}

namespace {

std::vector<LocalId> indices_of(const std::vector<bool>& mask) {
  std::vector<LocalId> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(static_cast<LocalId>(i));
  }
  return out;
}

std::vector<LocalId> labeled_nodes(const LabelMap& labels) {
  std::vector<LocalId> out;
  out.reserve(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels.is_labeled(v)) out.push_back(static_cast<LocalId>(v));
  }
  return out;
}

std::span<const Timestamp> checked_timestamps(const HeteroGraph& g, const LabelMap& labels) {
  const TypeId t = labels.target_type();
  const std::string& name = g.schema().type_name(t);
  if (!g.has_timestamps(t)) {
    throw MissingTimestamps(labels.labeled_count(), "temporal split needs timestamps, but type '" + name +
                                                        "' has none (" + std::to_string(labels.labeled_count()) +
                                                        " labeled nodes without timestamp)");
  }
  const auto stamps = g.timestamps(t);
  std::uint64_t missing = 0;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels.is_labeled(v) && stamps[v] == kMissingTimestamp) ++missing;
  }
  if (missing) {
    throw MissingTimestamps(missing, std::to_string(missing) + " labeled '" + name + "' nodes have no timestamp");
  }
  return stamps;
}

SplitMasks empty_masks(const LabelMap& labels) {
  SplitMasks m;
  m.target_type = labels.target_type();
  m.train.assign(labels.size(), false);
  m.val.assign(labels.size(), false);
  m.test.assign(labels.size(), false);
  return m;
}

void assign_in_order(SplitMasks& m, std::span<const LocalId> order, const std::array<std::uint64_t, 3>& sizes) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (i < sizes[0]) {
      m.train[order[i]] = true;
    } else if (i < sizes[0] + sizes[1]) {
      m.val[order[i]] = true;
    } else {
      m.test[order[i]] = true;
    }
  }
}

void record_boundaries(SplitMasks& m, std::span<const Timestamp> stamps) {
  auto& d = m.descriptor;
  for (std::size_t v = 0; v < stamps.size(); ++v) {
    const Timestamp t = stamps[v];
    if (m.train[v]) d.train_max = d.train_max ? std::max(*d.train_max, t) : t;
    if (m.val[v]) {
      d.val_min = d.val_min ? std::min(*d.val_min, t) : t;
      d.val_max = d.val_max ? std::max(*d.val_max, t) : t;
    }
    if (m.test[v]) d.test_min = d.test_min ? std::min(*d.test_min, t) : t;
  }
}

}  // namespace

std::vector<LocalId> SplitMasks::train_indices() const { return indices_of(train); }
std::vector<LocalId> SplitMasks::val_indices() const { return indices_of(val); }
std::vector<LocalId> SplitMasks::test_indices() const { return indices_of(test); }

SplitMasks temporal_split(const HeteroGraph& g, const LabelMap& labels, const SplitRatios& ratios) {
  check_ratios(ratios);
  const auto stamps = checked_timestamps(g, labels);
  std::vector<LocalId> order = labeled_nodes(labels);
  std::sort(order.begin(), order.end(), [&](LocalId a, LocalId b) {
    return stamps[a] != stamps[b] ? stamps[a] < stamps[b] : a < b;
  });

  SplitMasks m = empty_masks(labels);
  m.descriptor.kind = SplitKind::Temporal;
  m.descriptor.ratios = ratios;
  assign_in_order(m, order, split_sizes(order.size(), ratios));
  record_boundaries(m, stamps);
  return m;
}

SplitMasks temporal_split_at(const HeteroGraph& g, const LabelMap& labels, Timestamp val_start, Timestamp test_start) {
  if (val_start > test_start) throw UsageError("split boundaries must be non-decreasing");
  const auto stamps = checked_timestamps(g, labels);
  SplitMasks m = empty_masks(labels);
  m.descriptor.kind = SplitKind::TemporalBoundaries;
  m.descriptor.cut_points = std::array<Timestamp, 2>{val_start, test_start};
  for (LocalId v : labeled_nodes(labels)) {
    if (stamps[v] < val_start) {
      m.train[v] = true;
    } else if (stamps[v] < test_start) {
      m.val[v] = true;
    } else {
      m.test[v] = true;
    }
  }
  record_boundaries(m, stamps);
  return m;
}

SplitMasks random_split(const HeteroGraph&, const LabelMap& labels, const SplitRatios& ratios, std::uint64_t seed) {
  check_ratios(ratios);
  std::vector<LocalId> order = labeled_nodes(labels);
  CounterRng rng(seed);
  fisher_yates_shuffle(std::span<LocalId>(order), rng);

  SplitMasks m = empty_masks(labels);
  m.descriptor.kind = SplitKind::Random;
  m.descriptor.ratios = ratios;
  m.descriptor.seed = seed;
  assign_in_order(m, order, split_sizes(order.size(), ratios));
  return m;
}

std::string split_to_json(const SplitMasks& masks, const Schema& schema) {
  using nlohmann::json;
  const auto& d = masks.descriptor;
  auto opt = [](const std::optional<Timestamp>& t) { return t ? json(*t) : json(nullptr); };

  json strategy;
  strategy["kind"] = to_string(d.kind);
  if (d.ratios) strategy["ratios"] = {d.ratios->train, d.ratios->val, d.ratios->test};
  if (d.seed) strategy["seed"] = *d.seed;
  if (d.cut_points) strategy["cut_points"] = {(*d.cut_points)[0], (*d.cut_points)[1]};
  if (d.kind != SplitKind::Random) {
    strategy["boundaries"] = {{"train_max", opt(d.train_max)},
                              {"val_min", opt(d.val_min)},
                              {"val_max", opt(d.val_max)},
                              {"test_min", opt(d.test_min)}};
  }

  json doc;
  doc["target_type"] = schema.type_name(masks.target_type);
  doc["strategy"] = strategy;
  doc["sizes"] = {{"train", masks.train_indices().size()},
                  {"val", masks.val_indices().size()},
                  {"test", masks.test_indices().size()}};
  doc["train"] = masks.train_indices();
  doc["val"] = masks.val_indices();
  doc["test"] = masks.test_indices();
  return doc.dump(2) + "\n";
}

void write_split_csvs(const SplitMasks& masks, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const std::pair<const char*, std::vector<LocalId>> parts[] = {
      {"train.csv", masks.train_indices()}, {"val.csv", masks.val_indices()}, {"test.csv", masks.test_indices()}};
  for (const auto& [file, ids] : parts) {
    std::ofstream out(dir / file, std::ios::binary);
    if (!out) throw DataError("cannot write '" + (dir / file).string() + "'");
    out << "local_id\n";
    for (LocalId v : ids) out << v << '\n';
  }
}

}  // namespace hetgraph
