#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hetgraph/graph.hpp"

namespace hetgraph {

enum class SplitKind { Temporal, TemporalBoundaries, Random };

std::string_view to_string(SplitKind kind) noexcept;

struct SplitRatios {
  double train = 0.8;
  double val = 0.1;
  double test = 0.1;
};

/// Parses "a,b,c"; each must be positive and they must sum to 1 (within 1e-9).
SplitRatios parse_ratios(std::string_view text);
void check_ratios(const SplitRatios& ratios);

struct SplitDescriptor {
  SplitKind kind = SplitKind::Temporal;
  std::optional<SplitRatios> ratios;
  std::optional<std::uint64_t> seed;
  // Explicit cut points: train t < first, val first <= t < second, test t >= second.
  std::optional<std::array<Timestamp, 2>> cut_points;
  // Observed boundaries of a temporal split; absent for empty partitions.
  std::optional<Timestamp> train_max;
  std::optional<Timestamp> val_min;
  std::optional<Timestamp> val_max;
  std::optional<Timestamp> test_min;
};

struct SplitMasks {
  TypeId target_type = 0;
  std::vector<bool> train;
  std::vector<bool> val;
  std::vector<bool> test;
  SplitDescriptor descriptor;

  std::vector<LocalId> train_indices() const;
  std::vector<LocalId> val_indices() const;
  std::vector<LocalId> test_indices() const;
};

// Sizes by the floor-floor-remainder rule: train floor(r1*n), val floor(r2*n),
// test the rest. A 1e-9 slack absorbs binary rounding in r*n.
std::array<std::uint64_t, 3> split_sizes(std::uint64_t n, const SplitRatios& ratios);

// Labeled nodes ordered by (timestamp, index) and cut by ratio. Throws
// MissingTimestamps if any labeled node lacks a timestamp.
SplitMasks temporal_split(const HeteroGraph& g, const LabelMap& labels, const SplitRatios& ratios);
/// Cut labeled nodes at explicit timestamps instead of ratios.
SplitMasks temporal_split_at(const HeteroGraph& g, const LabelMap& labels, Timestamp val_start, Timestamp test_start);
/// Seeded Fisher-Yates permutation of labeled nodes (ascending index order), cut by ratio.
SplitMasks random_split(const HeteroGraph& g, const LabelMap& labels, const SplitRatios& ratios, std::uint64_t seed);

/// JSON document with the descriptor and three sorted index arrays.
std::string split_to_json(const SplitMasks& masks, const Schema& schema);
/// Writes train.csv, val.csv and test.csv (single local_id column) under `dir`.
void write_split_csvs(const SplitMasks& masks, const std::filesystem::path& dir);

}  // namespace hetgraph
