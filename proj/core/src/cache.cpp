// Binary cache, all integers little-endian:
//
//   "HGB1" | u32 version | u32 T | u32 R
//   T type names, then R triples (src, name, dst), each string u16 len + bytes
//   per type: u64 n | u8 flags | [u32 C, n x i32 labels] | [n x i64 timestamps]
//             | [u32 width, n*width x f64 features]
//   per relation: u64 m | (n_src+1) x u64 offsets | m x u64 columns
//   u64 FNV-1a of everything before it
//
// flags: bit 0 labels, bit 1 timestamps, bit 2 features. The transposed CSR is
// rebuilt on load.

#include <bit>
#include <cstring>
#include <fstream>

#include "hetgraph/errors.hpp"
#include "hetgraph/ingest.hpp"

namespace hetgraph {

namespace {

constexpr std::uint8_t kMagic[4] = {'H', 'G', 'B', '1'};
constexpr std::uint8_t kHasLabels = 1u << 0;
constexpr std::uint8_t kHasTimestamps = 1u << 1;
constexpr std::uint8_t kHasFeatures = 1u << 2;

class Writer {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const std::uint8_t*>(data);
    out_.insert(out_.end(), p, p + n);
  }
  template <typename T>
  void le(T value) {
    using U = std::make_unsigned_t<T>;
    auto u = static_cast<U>(value);
    for (std::size_t i = 0; i < sizeof(T); ++i) out_.push_back(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void f64(double x) { le(std::bit_cast<std::uint64_t>(x)); }
  void str(const std::string& s) {
    if (s.size() > 0xffff) throw DataError("name longer than 65535 bytes: '" + s.substr(0, 32) + "...'");
    le(static_cast<std::uint16_t>(s.size()));
    bytes(s.data(), s.size());
  }
  std::vector<std::uint8_t> take() && { return std::move(out_); }
  std::span<const std::uint8_t> view() const { return out_; }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  void need(std::uint64_t n, const char* what) const {
    if (n > data_.size() - pos_) {
      throw CacheError(CacheErrorKind::Truncated, std::string("truncated cache file while reading ") + what);
    }
  }
  template <typename T>
  T le(const char* what) {
    need(sizeof(T), what);
    std::make_unsigned_t<T> u = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) u |= static_cast<std::make_unsigned_t<T>>(data_[pos_ + i]) << (8 * i);
    pos_ += sizeof(T);
    return static_cast<T>(u);
  }
  double f64(const char* what) { return std::bit_cast<double>(le<std::uint64_t>(what)); }
  std::string str(const char* what) {
    const auto len = le<std::uint16_t>(what);
    need(len, what);
    std::string s(reinterpret_cast<const char*>(data_.data() + pos_), len);
    pos_ += len;
    return s;
  }
  /// Fails before any allocation if `count` elements of `width` bytes can't fit.
  void need_array(std::uint64_t count, std::uint64_t width, const char* what) const {
    if (count > (data_.size() - pos_) / width) {
      throw CacheError(CacheErrorKind::Truncated, std::string("truncated cache file while reading ") + what);
    }
  }
  std::size_t pos() const { return pos_; }

 private:
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

[[noreturn]] void corrupt(const std::string& message) {
  throw CacheError(CacheErrorKind::Corrupt, "corrupt cache file: " + message);
}

}  // namespace

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint8_t b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::uint8_t> encode_cache(const Dataset& data) {
  const HeteroGraph& g = data.graph;
  const Schema& schema = g.schema();
  Writer w;
  w.bytes(kMagic, sizeof kMagic);
  w.le(kCacheVersion);
  w.le(static_cast<std::uint32_t>(schema.num_node_types()));
  w.le(static_cast<std::uint32_t>(schema.num_relations()));
  for (const std::string& name : schema.node_types()) w.str(name);
  for (const Relation& r : schema.relations()) {
    w.str(schema.type_name(r.src));
    w.str(r.name);
    w.str(schema.type_name(r.dst));
  }

  for (TypeId t = 0; t < schema.num_node_types(); ++t) {
    const std::uint64_t n = g.node_count(t);
    const bool labels = t == data.labels.target_type();
    const auto& features = g.features(t);
    std::uint8_t flags = 0;
    if (labels) flags |= kHasLabels;
    if (g.has_timestamps(t)) flags |= kHasTimestamps;
    if (features) flags |= kHasFeatures;
    w.le(n);
    w.le(flags);
    if (labels) {
      w.le(data.labels.num_classes());
      for (ClassId y : data.labels.values()) w.le(y);
    }
    if (g.has_timestamps(t)) {
      for (Timestamp ts : g.timestamps(t)) w.le(ts);
    }
    if (features) {
      w.le(features->width);
      for (double x : features->values) w.f64(x);
    }
  }

  for (RelationId r = 0; r < schema.num_relations(); ++r) {
    const Csr& csr = g.forward(r);
    w.le(csr.nnz());
    for (EdgeOffset o : csr.offsets) w.le(o);
    for (LocalId c : csr.columns) w.le(static_cast<std::uint64_t>(c));
  }
  w.le(fnv1a64(w.view()));
  return std::move(w).take();
}

namespace {

Dataset decode_checked(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof kMagic) throw CacheError(CacheErrorKind::Truncated, "truncated cache file: no header");
  if (std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
    throw CacheError(CacheErrorKind::BadMagic, "bad magic: not a hetgraph cache file");
  }
  Reader in(bytes);
  in.need(sizeof kMagic, "magic");
  for (std::size_t i = 0; i < sizeof kMagic; ++i) in.le<std::uint8_t>("magic");
  const auto version = in.le<std::uint32_t>("version");
  if (version != kCacheVersion) {
    throw CacheError(CacheErrorKind::UnsupportedVersion, "unsupported cache format version " + std::to_string(version));
  }
  const auto types = in.le<std::uint32_t>("type count");
  const auto rels = in.le<std::uint32_t>("relation count");

  Schema schema;
  try {
    for (std::uint32_t t = 0; t < types; ++t) schema.add_node_type(in.str("type name"));
    for (std::uint32_t r = 0; r < rels; ++r) {
      std::string src = in.str("relation source");
      std::string name = in.str("relation name");
      std::string dst = in.str("relation destination");
      schema.add_relation(src, std::move(name), dst);
    }
  } catch (const UsageError& e) {
    corrupt(e.what());
  }

  std::vector<std::uint64_t> counts(types);
  std::vector<std::optional<std::vector<Timestamp>>> stamps(types);
  std::vector<std::optional<FeatureBlock>> features(types);
  std::optional<TypeId> label_type;
  std::uint32_t num_classes = 0;
  std::vector<ClassId> labels;

  for (TypeId t = 0; t < types; ++t) {
    const auto n = in.le<std::uint64_t>("node count");
    const auto flags = in.le<std::uint8_t>("type flags");
    if (flags & ~(kHasLabels | kHasTimestamps | kHasFeatures)) corrupt("unknown type flags");
    if (n > std::numeric_limits<LocalId>::max()) corrupt("node count exceeds 2^32-1");
    counts[t] = n;
    if (flags & kHasLabels) {
      if (label_type) corrupt("more than one labeled node type");
      label_type = t;
      num_classes = in.le<std::uint32_t>("class count");
      in.need_array(n, 4, "labels");
      labels.resize(n);
      for (auto& y : labels) y = in.le<std::int32_t>("labels");
    }
    if (flags & kHasTimestamps) {
      in.need_array(n, 8, "timestamps");
      std::vector<Timestamp> ts(n);
      for (auto& x : ts) x = in.le<std::int64_t>("timestamps");
      stamps[t] = std::move(ts);
    }
    if (flags & kHasFeatures) {
      FeatureBlock block;
      block.width = in.le<std::uint32_t>("feature width");
      if (block.width != 0 && n > std::numeric_limits<std::uint64_t>::max() / block.width) corrupt("feature size");
      in.need_array(n * block.width, 8, "features");
      block.values.resize(n * block.width);
      for (auto& x : block.values) x = in.f64("features");
      features[t] = std::move(block);
    }
  }

  std::vector<Csr> forward(rels);
  for (RelationId r = 0; r < rels; ++r) {
    const Relation& rel = schema.relation(r);
    const auto m = in.le<std::uint64_t>("edge count");
    const std::uint64_t n_src = counts[rel.src];
    in.need_array(n_src + 1, 8, "row offsets");
    Csr& csr = forward[r];
    csr.offsets.resize(n_src + 1);
    for (auto& o : csr.offsets) o = in.le<std::uint64_t>("row offsets");
    in.need_array(m, 8, "columns");
    csr.columns.resize(m);
    for (auto& c : csr.columns) {
      const auto v = in.le<std::uint64_t>("columns");
      if (v > std::numeric_limits<LocalId>::max()) corrupt("column index exceeds 2^32-1");
      c = static_cast<LocalId>(v);
    }
  }

  const std::size_t body = in.pos();
  const auto stored = in.le<std::uint64_t>("checksum");
  if (in.pos() != bytes.size()) corrupt("unexpected trailing bytes");
  if (fnv1a64(bytes.first(body)) != stored) {
    throw CacheError(CacheErrorKind::ChecksumMismatch, "checksum mismatch: cache file is damaged");
  }

  if (!label_type) corrupt("no labeled node type");

  // Structural checks on the forward CSR before transposing it.
  for (RelationId r = 0; r < rels; ++r) {
    const Relation& rel = schema.relation(r);
    const Csr& csr = forward[r];
    if (csr.offsets.front() != 0 || csr.offsets.back() != csr.columns.size()) corrupt("row offsets do not span columns");
    for (std::size_t i = 0; i + 1 < csr.offsets.size(); ++i) {
      if (csr.offsets[i] > csr.offsets[i + 1]) corrupt("row offsets decrease");
    }
    for (LocalId c : csr.columns) {
      if (c >= counts[rel.dst]) corrupt("column index out of range in relation '" + schema.relation_label(r) + "'");
    }
  }
  std::vector<Csr> reverse(rels);
  for (RelationId r = 0; r < rels; ++r) reverse[r] = forward[r].transposed(counts[schema.relation(r).dst]);

  Dataset data;
  data.graph = HeteroGraph::from_parts(std::move(schema), std::move(counts), std::move(forward), std::move(reverse),
                                       std::move(stamps), std::move(features));
  if (const auto report = validate_graph(data.graph); !report.ok()) corrupt(report.findings.front().message);
  try {
    data.labels = LabelMap(*label_type, num_classes, std::move(labels));
  } catch (const DataError& e) {
    corrupt(e.what());
  }
  return data;
}

}  // namespace

Dataset decode_cache(std::span<const std::uint8_t> bytes) {
  try {
    return decode_checked(bytes);
  } catch (const CacheError& e) {
    // A flipped byte can make the structure look inconsistent before the
    // checksum is reached; prefer the checksum diagnosis when it also fails.
    if (e.kind() == CacheErrorKind::Corrupt && bytes.size() >= 8) {
      std::uint64_t stored = 0;
      for (std::size_t i = 0; i < 8; ++i) stored |= static_cast<std::uint64_t>(bytes[bytes.size() - 8 + i]) << (8 * i);
      if (fnv1a64(bytes.first(bytes.size() - 8)) != stored) {
        throw CacheError(CacheErrorKind::ChecksumMismatch, "checksum mismatch: cache file is damaged");
      }
    }
    throw;
  }
}

void save_cache(const Dataset& data, const std::filesystem::path& path) {
  if (const auto report = validate_graph(data.graph); !report.ok()) {
    throw DataError("refusing to cache an invalid graph: " + report.findings.front().message);
  }
  if (data.labels.size() != data.graph.node_count(data.labels.target_type())) {
    throw DataError("label count does not match target type node count");
  }
  const auto bytes = encode_cache(data);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError(CacheErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw CacheError(CacheErrorKind::Io, "write failed for '" + path.string() + "'");
}

Dataset load_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError(CacheErrorKind::Io, "cannot open cache file '" + path.string() + "'");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw CacheError(CacheErrorKind::Io, "read failed for '" + path.string() + "'");
  return decode_cache(bytes);
}

}  // namespace hetgraph
