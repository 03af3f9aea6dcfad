#include "hetgraph/ingest.hpp"

#include <charconv>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "csv.hpp"
#include "hetgraph/errors.hpp"
#include "hetgraph/parallel.hpp"

namespace hetgraph {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IngestError(path.string(), 0, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw IngestError(path.string(), 0, std::string("invalid JSON: ") + e.what());
  }
}

std::string get_string(const json& obj, const char* key, const fs::path& file) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw IngestError(file.string(), 0, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string default_relation_file(std::string_view src, std::string_view name, std::string_view dst) {
  return "edges/" + std::string(src) + "__" + std::string(name) + "__" + std::string(dst) + ".csv";
}

struct NodeTableData {
  std::uint64_t count = 0;
  std::optional<std::vector<ClassId>> labels;
  std::optional<std::vector<Timestamp>> timestamps;
  std::optional<FeatureBlock> features;
};

NodeTableData read_node_table(const fs::path& path, bool is_target, std::uint32_t num_classes) {
  csv::Reader reader(path);
  const auto id_col = reader.column("local_id");
  if (!id_col) throw IngestError(reader.file(), 1, "header lacks required column 'local_id'");
  const auto label_col = reader.column("label");
  const auto ts_col = reader.column("timestamp");
  if (is_target && !label_col) throw IngestError(reader.file(), 1, "target type table lacks 'label' column");
  if (!is_target && label_col) throw IngestError(reader.file(), 1, "'label' column is only valid on the target type");

  std::vector<std::size_t> feature_cols;
  for (std::size_t c = 0; c < reader.header().size(); ++c) {
    if (c != *id_col && c != label_col && c != ts_col) feature_cols.push_back(c);
  }
  const std::size_t width = reader.header().size();

  std::vector<std::uint64_t> ids;
  std::vector<std::uint64_t> lines;
  std::vector<ClassId> labels;
  std::vector<Timestamp> stamps;
  std::vector<double> features;

  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    if (fields.size() != width) {
      reader.fail("expected " + std::to_string(width) + " columns, found " + std::to_string(fields.size()));
    }
    const auto id = csv::parse_u64(fields[*id_col]);
    if (!id) reader.fail("local_id '" + std::string(fields[*id_col]) + "' is not a non-negative integer");
    ids.push_back(*id);
    lines.push_back(reader.line());

    if (label_col) {
      const std::string_view cell = fields[*label_col];
      if (cell.empty()) {
        labels.push_back(kUnlabeled);
      } else {
        const auto y = csv::parse_i64(cell);
        if (!y) reader.fail("label '" + std::string(cell) + "' is not an integer");
        if (*y == kUnlabeled) {
          labels.push_back(kUnlabeled);
        } else if (*y < 0 || *y >= static_cast<std::int64_t>(num_classes)) {
          reader.fail("label " + std::to_string(*y) + " outside [0, " + std::to_string(num_classes) + ")");
        } else {
          labels.push_back(static_cast<ClassId>(*y));
        }
      }
    }
    if (ts_col) {
      const std::string_view cell = fields[*ts_col];
      if (cell.empty()) {
        stamps.push_back(kMissingTimestamp);
      } else {
        const auto t = csv::parse_i64(cell);
        if (!t) reader.fail("timestamp '" + std::string(cell) + "' is not an integer");
        stamps.push_back(*t);
      }
    }
    for (std::size_t c : feature_cols) {
      const auto x = csv::parse_double(fields[c]);
      if (!x) reader.fail("feature '" + reader.header()[c] + "' value '" + std::string(fields[c]) + "' is not numeric");
      features.push_back(*x);
    }
  }

  // Ids must be a permutation of [0, n); rows may come in any order.
  const std::uint64_t n = ids.size();
  if (n > std::numeric_limits<LocalId>::max()) throw IngestError(reader.file(), 0, "too many nodes");
  std::vector<std::uint64_t> row_of(n, std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t i = 0; i < n; ++i) {
    if (ids[i] >= n) {
      throw IngestError(reader.file(), lines[i],
                        "local_id " + std::to_string(ids[i]) + " outside dense range [0, " + std::to_string(n) + ")");
    }
    if (row_of[ids[i]] != std::numeric_limits<std::uint64_t>::max()) {
      throw IngestError(reader.file(), lines[i],
                        "duplicate local_id " + std::to_string(ids[i]) + " (first at line " +
                            std::to_string(lines[row_of[ids[i]]]) + ")");
    }
    row_of[ids[i]] = i;
  }

  NodeTableData out;
  out.count = n;
  if (label_col) {
    std::vector<ClassId> ordered(n);
    for (std::uint64_t v = 0; v < n; ++v) ordered[v] = labels[row_of[v]];
    out.labels = std::move(ordered);
  }
  if (ts_col) {
    std::vector<Timestamp> ordered(n);
    for (std::uint64_t v = 0; v < n; ++v) ordered[v] = stamps[row_of[v]];
    out.timestamps = std::move(ordered);
  }
  if (!feature_cols.empty()) {
    FeatureBlock block;
    block.width = static_cast<std::uint32_t>(feature_cols.size());
    block.values.resize(n * block.width);
    for (std::uint64_t v = 0; v < n; ++v) {
      std::copy_n(features.begin() + static_cast<std::ptrdiff_t>(row_of[v] * block.width), block.width,
                  block.values.begin() + static_cast<std::ptrdiff_t>(v * block.width));
    }
    out.features = std::move(block);
  }
  return out;
}

EdgeList read_edge_table(const fs::path& path, std::uint64_t n_src, std::uint64_t n_dst) {
  csv::Reader reader(path);
  const auto src_col = reader.column("src_local_id");
  const auto dst_col = reader.column("dst_local_id");
  if (!src_col || !dst_col || reader.header().size() != 2) {
    throw IngestError(reader.file(), 1, "header must be exactly src_local_id,dst_local_id");
  }
  EdgeList list;
  std::vector<std::string_view> fields;
  while (reader.next(fields)) {
    if (fields.size() != 2) reader.fail("expected 2 columns, found " + std::to_string(fields.size()));
    const auto s = csv::parse_u64(fields[*src_col]);
    const auto d = csv::parse_u64(fields[*dst_col]);
    if (!s || !d) reader.fail("endpoint is not a non-negative integer");
    if (*s >= n_src) {
      reader.fail("src_local_id " + std::to_string(*s) + " out of range (source type has " + std::to_string(n_src) +
                  " nodes)");
    }
    if (*d >= n_dst) {
      reader.fail("dst_local_id " + std::to_string(*d) + " out of range (destination type has " +
                  std::to_string(n_dst) + " nodes)");
    }
    list.src.push_back(static_cast<LocalId>(*s));
    list.dst.push_back(static_cast<LocalId>(*d));
  }
  return list;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

void append_number(std::string& out, double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  out.append(buf, ptr);
}

}  // namespace

Schema load_schema(const fs::path& path) {
  const json doc = read_json(path);
  Schema schema;
  try {
    for (const auto& name : doc.at("node_types")) schema.add_node_type(name.get<std::string>());
    for (const auto& rel : doc.at("relations")) {
      schema.add_relation(get_string(rel, "src", path), get_string(rel, "name", path), get_string(rel, "dst", path));
    }
  } catch (const json::exception& e) {
    throw IngestError(path.string(), 0, std::string("malformed schema: ") + e.what());
  } catch (const UsageError& e) {
    throw IngestError(path.string(), 0, e.what());
  }
  return schema;
}

std::string schema_to_json(const Schema& schema) {
  json doc;
  doc["node_types"] = schema.node_types();
  doc["relations"] = json::array();
  for (const Relation& r : schema.relations()) {
    doc["relations"].push_back({{"src", schema.type_name(r.src)}, {"name", r.name}, {"dst", schema.type_name(r.dst)}});
  }
  return doc.dump(2) + "\n";
}

DatasetBundle load_bundle_manifest(const fs::path& manifest) {
  const json doc = read_json(manifest);
  const fs::path base = manifest.parent_path();
  DatasetBundle bundle;
  bundle.schema_path = resolve(base, get_string(doc, "schema", manifest));
  bundle.target_type = get_string(doc, "target_type", manifest);
  if (!doc.contains("num_classes") || !doc["num_classes"].is_number_unsigned()) {
    throw IngestError(manifest.string(), 0, "missing unsigned field 'num_classes'");
  }
  bundle.num_classes = doc["num_classes"].get<std::uint32_t>();

  const Schema schema = load_schema(bundle.schema_path);
  const json nodes = doc.value("nodes", json::object());
  for (const std::string& type : schema.node_types()) {
    const std::string file = nodes.contains(type) ? nodes[type].get<std::string>() : "nodes/" + type + ".csv";
    bundle.node_tables.push_back({type, resolve(base, file)});
  }
  const json rels = doc.value("relations", json::array());
  for (const Relation& r : schema.relations()) {
    const std::string& src = schema.type_name(r.src);
    const std::string& dst = schema.type_name(r.dst);
    std::string file = default_relation_file(src, r.name, dst);
    for (const auto& entry : rels) {
      if (entry.value("src", "") == src && entry.value("name", "") == r.name && entry.value("dst", "") == dst) {
        file = get_string(entry, "path", manifest);
      }
    }
    bundle.relation_tables.push_back({src, r.name, dst, resolve(base, file)});
  }
  return bundle;
}

Dataset load_csv_bundle(const DatasetBundle& bundle, unsigned threads) {
  const std::string schema_file = bundle.schema_path.string();
  Schema schema = load_schema(bundle.schema_path);
  const auto target = schema.find_type(bundle.target_type);
  if (!target) throw IngestError(schema_file, 0, "target type '" + bundle.target_type + "' not in schema");
  if (bundle.num_classes < 1) throw IngestError(schema_file, 0, "num_classes must be at least 1");

  const std::size_t types = schema.num_node_types();
  std::vector<const NodeTable*> node_table(types, nullptr);
  for (const NodeTable& t : bundle.node_tables) {
    const auto id = schema.find_type(t.type);
    if (!id) throw IngestError(t.path.string(), 0, "node table for unknown type '" + t.type + "'");
    node_table[*id] = &t;
  }
  for (TypeId t = 0; t < types; ++t) {
    if (!node_table[t]) throw IngestError(schema_file, 0, "no node table for type '" + schema.type_name(t) + "'");
  }

  std::vector<NodeTableData> nodes(types);
  parallel_for(types, threads, [&](std::size_t t) {
    nodes[t] = read_node_table(node_table[t]->path, t == *target, bundle.num_classes);
  });

  const std::size_t rels = schema.num_relations();
  std::vector<const RelationTable*> rel_table(rels, nullptr);
  for (const RelationTable& r : bundle.relation_tables) {
    const auto id = schema.find_relation(r.src, r.name, r.dst);
    if (!id) throw IngestError(r.path.string(), 0, "edge table for unknown relation '" + r.name + "'");
    rel_table[*id] = &r;
  }
  for (RelationId r = 0; r < rels; ++r) {
    if (!rel_table[r]) throw IngestError(schema_file, 0, "no edge table for relation '" + schema.relation_label(r) + "'");
  }

  std::vector<EdgeList> edges(rels);
  parallel_for(rels, threads, [&](std::size_t r) {
    const Relation& rel = schema.relation(static_cast<RelationId>(r));
    edges[r] = read_edge_table(rel_table[r]->path, nodes[rel.src].count, nodes[rel.dst].count);
  });

  std::vector<std::uint64_t> counts(types);
  std::vector<std::optional<std::vector<Timestamp>>> stamps(types);
  std::vector<std::optional<FeatureBlock>> features(types);
  for (TypeId t = 0; t < types; ++t) {
    counts[t] = nodes[t].count;
    stamps[t] = std::move(nodes[t].timestamps);
    features[t] = std::move(nodes[t].features);
  }

  Dataset data;
  try {
    data.labels = LabelMap(*target, bundle.num_classes, std::move(*nodes[*target].labels));
  } catch (const DataError& e) {
    throw IngestError(node_table[*target]->path.string(), 0, e.what());
  }
  data.graph = HeteroGraph::from_edge_lists(std::move(schema), std::move(counts), std::move(edges), std::move(stamps),
                                            std::move(features));
  return data;
}

fs::path write_csv_bundle(const Dataset& data, const fs::path& dir) {
  const HeteroGraph& g = data.graph;
  const Schema& schema = g.schema();
  fs::create_directories(dir / "nodes");
  fs::create_directories(dir / "edges");
  write_text(dir / "schema.json", schema_to_json(schema));

  json manifest;
  manifest["schema"] = "schema.json";
  manifest["target_type"] = schema.type_name(data.labels.target_type());
  manifest["num_classes"] = data.labels.num_classes();
  manifest["nodes"] = json::object();
  manifest["relations"] = json::array();

  for (TypeId t = 0; t < schema.num_node_types(); ++t) {
    const std::string& name = schema.type_name(t);
    const bool is_target = t == data.labels.target_type();
    const auto stamps = g.timestamps(t);
    const auto& features = g.features(t);

    std::string text = "local_id";
    if (is_target) text += ",label";
    if (g.has_timestamps(t)) text += ",timestamp";
    if (features) {
      for (std::uint32_t f = 0; f < features->width; ++f) text += ",f" + std::to_string(f);
    }
    text += '\n';
    for (std::uint64_t v = 0; v < g.node_count(t); ++v) {
      text += std::to_string(v);
      if (is_target) {
        text += ',';
        if (data.labels.is_labeled(v)) text += std::to_string(data.labels[v]);
      }
      if (g.has_timestamps(t)) {
        text += ',';
        if (stamps[v] != kMissingTimestamp) text += std::to_string(stamps[v]);
      }
      if (features) {
        for (std::uint32_t f = 0; f < features->width; ++f) {
          text += ',';
          append_number(text, features->values[v * features->width + f]);
        }
      }
      text += '\n';
    }
    const std::string file = "nodes/" + name + ".csv";
    write_text(dir / file, text);
    manifest["nodes"][name] = file;
  }

  for (RelationId r = 0; r < schema.num_relations(); ++r) {
    const Relation& rel = schema.relation(r);
    const std::string file = default_relation_file(schema.type_name(rel.src), rel.name, schema.type_name(rel.dst));
    std::string text = "src_local_id,dst_local_id\n";
    const Csr& csr = g.forward(r);
    for (std::size_t s = 0; s < csr.rows(); ++s) {
      for (LocalId d : csr.row(s)) {
        text += std::to_string(s);
        text += ',';
        text += std::to_string(d);
        text += '\n';
      }
    }
    write_text(dir / file, text);
    manifest["relations"].push_back(
        {{"src", schema.type_name(rel.src)}, {"name", rel.name}, {"dst", schema.type_name(rel.dst)}, {"path", file}});
  }

  const fs::path manifest_path = dir / "dataset.json";
  write_text(manifest_path, manifest.dump(2) + "\n");
  return manifest_path;
}

}  // namespace hetgraph
