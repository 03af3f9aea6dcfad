#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "hetgraph/errors.hpp"
#include "hetgraph/ingest.hpp"
#include "hetgraph/synth.hpp"
#include "random_graphs.hpp"

using namespace hetgraph;

namespace {

Dataset sample() {
  PlantedConfig cfg = PlantedConfig::balanced(3, 40, 300, 0.4, 5);
  cfg.hubs.push_back({"author", "writes", 20, 4});
  return generate_planted(cfg);
}

CacheErrorKind kind_of(std::span<const std::uint8_t> bytes) {
  try {
    decode_cache(bytes);
  } catch (const CacheError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "decode succeeded";
  return CacheErrorKind::Io;
}

}  // namespace

TEST(Cache, RoundTripAndDeterminism) {
  hgtest::TempDir tmp;
  const Dataset d = sample();
  save_cache(d, tmp / "a.hgb");
  save_cache(d, tmp / "b.hgb");
  EXPECT_EQ(load_cache(tmp / "a.hgb"), d);
  std::ifstream a(tmp / "a.hgb", std::ios::binary), b(tmp / "b.hgb", std::ios::binary);
  const std::string sa((std::istreambuf_iterator<char>(a)), {}), sb((std::istreambuf_iterator<char>(b)), {});
  EXPECT_EQ(sa, sb);
  EXPECT_EQ(sa.substr(0, 4), "HGB1");
}

TEST(Cache, RandomGraphsRoundTrip) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    hgtest::RawGraph raw = hgtest::random_graph(rng);
    if (trial % 2) {
      raw.timestamps.resize(raw.counts[0]);
      for (auto& t : raw.timestamps) t = static_cast<Timestamp>(rng());
    }
    const Dataset d = hgtest::to_dataset(raw);
    const auto bytes = encode_cache(d);
    ASSERT_EQ(decode_cache(bytes), d);
    ASSERT_EQ(encode_cache(decode_cache(bytes)), bytes);
  }
}

TEST(Cache, EmptyRelationSurvives) {
  Schema s = hgtest::academic_schema();
  Dataset d;
  d.graph = HeteroGraph::from_edge_lists(s, {3, 2}, {EdgeList{{0}, {1}}, EdgeList{}});
  d.labels = LabelMap(0, 2, {0, 1, 0});
  const Dataset back = decode_cache(encode_cache(d));
  EXPECT_EQ(back.graph.schema().num_relations(), 2u);
  EXPECT_EQ(back.graph.edge_count(1), 0u);
  EXPECT_EQ(back, d);
}

TEST(Cache, FeaturesRoundTrip) {
  Schema s;
  s.add_node_type("v");
  s.add_relation("v", "e", "v");
  std::vector<std::optional<FeatureBlock>> f{FeatureBlock{2, {1.5, -2, 0, 3}}};
  Dataset d;
  d.graph = HeteroGraph::from_edge_lists(s, {2}, {EdgeList{{0}, {1}}}, {}, f);
  d.labels = LabelMap(0, 1, {0, 0});
  EXPECT_EQ(decode_cache(encode_cache(d)), d);
}

TEST(Cache, BadMagicAndVersion) {
  auto bytes = encode_cache(sample());
  auto flipped = bytes;
  flipped[0] ^= 0x01;
  EXPECT_EQ(kind_of(flipped), CacheErrorKind::BadMagic);
  auto version = bytes;
  version[4] = 9;
  EXPECT_EQ(kind_of(version), CacheErrorKind::UnsupportedVersion);
}

TEST(Cache, EveryTruncationFailsClosed) {
  const auto bytes = encode_cache(sample());
  for (std::size_t len = 0; len < bytes.size(); len += (len < 200 ? 1 : 37)) {
    const auto k = kind_of(std::span<const std::uint8_t>(bytes.data(), len));
    ASSERT_TRUE(k == CacheErrorKind::Truncated || (len < 4 && k == CacheErrorKind::BadMagic)) << len;
  }
}

TEST(Cache, FlippedBodyByteIsDetected) {
  const auto bytes = encode_cache(sample());
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    auto bad = bytes;
    const std::size_t pos = 8 + rng() % (bad.size() - 8);
    bad[pos] ^= static_cast<std::uint8_t>(1u << (rng() % 8));
    const auto k = kind_of(bad);
    ASSERT_TRUE(k == CacheErrorKind::ChecksumMismatch || k == CacheErrorKind::Truncated ||
                k == CacheErrorKind::Corrupt)
        << pos;
  }
  auto tail = bytes;
  tail.back() ^= 0xFF;
  EXPECT_EQ(kind_of(tail), CacheErrorKind::ChecksumMismatch);
}

TEST(Cache, TrailingBytesAndMissingFile) {
  auto bytes = encode_cache(sample());
  bytes.push_back(0);
  EXPECT_EQ(kind_of(bytes), CacheErrorKind::ChecksumMismatch);
  try {
    load_cache("/nonexistent/graph.hgb");
    FAIL();
  } catch (const CacheError& e) {
    EXPECT_EQ(e.kind(), CacheErrorKind::Io);
  }
}

TEST(Cache, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a64({}), 0xcbf29ce484222325ull);
  const std::uint8_t a[] = {'a'};
  EXPECT_EQ(fnv1a64(a), 0xaf63dc4c8601ec8cull);
}

TEST(Cache, ValidChecksumOverBrokenGraphIsCorrupt) {
  Schema s;
  s.add_node_type("v");
  s.add_relation("v", "e", "v");
  Csr fwd;
  fwd.offsets = {0, 1, 1};
  fwd.columns = {5};
  Dataset d;
  d.graph = HeteroGraph::from_parts(s, {2}, {fwd}, {Csr::from_edges(2, {}, {})});
  d.labels = LabelMap(0, 1, {0, 0});
  EXPECT_EQ(kind_of(encode_cache(d)), CacheErrorKind::Corrupt);
}
