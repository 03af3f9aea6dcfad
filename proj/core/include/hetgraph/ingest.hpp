#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hetgraph/graph.hpp"

namespace hetgraph {

struct RelationTable {
  std::string src;
  std::string name;
  std::string dst;
  std::filesystem::path path;
};

struct NodeTable {
  std::string type;
  std::filesystem::path path;
};

// Everything needed to load one dataset from CSV. A bundle is usually read
// from a JSON manifest:
//
//   {
//     "schema": "schema.json",
//     "target_type": "paper",
//     "num_classes": 2,
//     "nodes": {"paper": "nodes/paper.csv", "author": "nodes/author.csv"},
//     "relations": [{"src": "author", "name": "writes", "dst": "paper",
//                    "path": "edges/author__writes__paper.csv"}]
//   }
//
// Relative paths resolve against the manifest's directory. Node or relation
// entries may be omitted; they then default to nodes/<type>.csv and
// edges/<src>__<name>__<dst>.csv.
struct DatasetBundle {
  std::filesystem::path schema_path;
  std::vector<NodeTable> node_tables;
  std::vector<RelationTable> relation_tables;
  std::string target_type;
  std::uint32_t num_classes = 0;
};

/// Parses a schema document: {"node_types": [...], "relations": [{"src","name","dst"}, ...]}.
Schema load_schema(const std::filesystem::path& path);
std::string schema_to_json(const Schema& schema);

/// Reads a bundle manifest and fills in default table paths.
DatasetBundle load_bundle_manifest(const std::filesystem::path& manifest);

// Loads every table of the bundle. Node tables need a local_id column and may
// carry label (target type only) and timestamp columns; any further columns are
// carried as an opaque numeric feature block. Edge tables need
// src_local_id,dst_local_id. Errors are IngestError with file and line.
Dataset load_csv_bundle(const DatasetBundle& bundle, unsigned threads = 1);

/// Writes schema.json, dataset.json, nodes/*.csv and edges/*.csv under `dir`.
/// Returns the manifest path.
std::filesystem::path write_csv_bundle(const Dataset& data, const std::filesystem::path& dir);

inline constexpr std::uint32_t kCacheVersion = 1;

/// Deterministic little-endian serialization; identical graphs give identical bytes.
std::vector<std::uint8_t> encode_cache(const Dataset& data);
/// Throws CacheError distinguishing bad magic, version, truncation, checksum and corruption.
Dataset decode_cache(std::span<const std::uint8_t> bytes);

void save_cache(const Dataset& data, const std::filesystem::path& path);
Dataset load_cache(const std::filesystem::path& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept;

}  // namespace hetgraph
