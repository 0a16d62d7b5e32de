// tests/unit/tensor_io_test.cpp

// Copyright 2026   The wordseg Authors

// See the LICENSE file for clarification regarding multiple authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "wordseg/tensor_io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "oracles.hpp"
#include "scratch.hpp"
#include "wordseg/errors.hpp"

using namespace wordseg;

namespace {

FrameSequence small_sequence() {
  FrameSequence s;
  s.utterance_id = "a";
  s.num_frames = 3;
  s.dim = 2;
  s.frame_period_ms = 20.0f;
  s.data = {1.0f, -2.0f, 0.5f, 0.25f, -0.0f, 3.0e-8f};
  return s;
}

void dump(const std::filesystem::path& p, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace

TEST(FeatureCodec, HeaderLayoutIsLittleEndian) {
  const auto bytes = encode_features(small_sequence());
  ASSERT_EQ(bytes.size(), 16u + 6u * 4u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "GSF1");
  EXPECT_EQ(bytes[4], 3);
  EXPECT_EQ(bytes[5], 0);
  EXPECT_EQ(bytes[8], 2);
  // 20.0f == 0x41a00000
  EXPECT_EQ(bytes[12], 0x00);
  EXPECT_EQ(bytes[14], 0xa0);
  EXPECT_EQ(bytes[15], 0x41);
  // first payload value 1.0f == 0x3f800000
  EXPECT_EQ(bytes[19], 0x3f);
  EXPECT_EQ(bytes[18], 0x80);
}

TEST(FeatureCodec, RoundTripIsBitExact) {
  const auto s = small_sequence();
  const auto back = decode_features(encode_features(s), "a");
  EXPECT_EQ(back.num_frames, 3u);
  EXPECT_EQ(back.dim, 2u);
  EXPECT_EQ(back.frame_period_ms, 20.0f);
  ASSERT_EQ(back.data.size(), s.data.size());
  for (std::size_t i = 0; i < s.data.size(); ++i)
    EXPECT_EQ(std::bit_cast<std::uint32_t>(back.data[i]), std::bit_cast<std::uint32_t>(s.data[i]));
}

TEST(FeatureCodec, FileRoundTripPreservesBytes) {
  ScratchDir dir("codec");
  const auto s = small_sequence();
  write_features(s, dir / "a.gsf");
  const auto back = read_features(dir / "a.gsf");
  EXPECT_EQ(encode_features(back), encode_features(s));
  EXPECT_EQ(back.utterance_id, "a");
}

TEST(FeatureCodec, RejectsBadInput) {
  auto bytes = encode_features(small_sequence());

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(decode_features(bad_magic, "a"), FormatError);

  auto bad_version = bytes;
  bad_version[3] = '2';
  EXPECT_THROW(decode_features(bad_version, "a"), FormatError);

  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(decode_features(truncated, "a"), LengthError);

  auto extra = bytes;
  extra.push_back(0);
  EXPECT_THROW(decode_features(extra, "a"), LengthError);

  EXPECT_THROW(decode_features(std::span(bytes.data(), 10), "a"), LengthError);

  auto nan_bytes = encode_features(small_sequence());
  const auto bits = std::bit_cast<std::uint32_t>(std::numeric_limits<float>::quiet_NaN());
  for (int i = 0; i < 4; ++i) nan_bytes[16 + 12 + i] = static_cast<std::uint8_t>(bits >> (8 * i));
  EXPECT_THROW(decode_features(nan_bytes, "a"), DataError);
}

TEST(FeatureCodec, TruncatedFileIsLengthError) {
  ScratchDir dir("trunc");
  auto bytes = encode_features(small_sequence());
  bytes.resize(bytes.size() - 3);
  dump(dir / "t.gsf", bytes);
  EXPECT_THROW(read_features(dir / "t.gsf"), LengthError);
  bytes[1] = 'Q';
  dump(dir / "t.gsf", bytes);
  EXPECT_THROW(read_features(dir / "t.gsf"), FormatError);
}

TEST(FeatureCodec, MissingFileIsIoError) {
  EXPECT_THROW(read_features("/nonexistent/x.gsf"), IoError);
}

TEST(TimeConversion, RoundsHalfAwayFromZero) {
  struct Case {
    double ms, period;
    std::size_t frame;
  };
  const Case cases[] = {{0, 20, 0},    {9.99, 20, 0},  {10, 20, 1},  {29.9, 20, 1},
                        {30, 20, 2},   {50, 20, 3},    {1234, 10, 123}, {1235, 10, 124},
                        {7.5, 5, 2},   {12.5, 5, 3}};
  for (const auto& c : cases) EXPECT_EQ(time_to_frame(c.ms, c.period), c.frame) << c.ms << "/" << c.period;
  EXPECT_DOUBLE_EQ(frame_to_time(7, 20), 140.0);
  EXPECT_THROW(time_to_frame(-1, 20), ArgumentError);
  EXPECT_THROW(time_to_frame(10, 0), ArgumentError);
}

TEST(TimeConversion, BoundariesDropEdgesAndDuplicates) {
  const std::vector<double> ms = {0, 5, 100, 101, 109, 300, 390, 400};
  const auto b = boundaries_from_ms("u", ms, 20, 20);
  EXPECT_EQ(b.frames, (std::vector<std::size_t>{5, 15}));
  EXPECT_EQ(b.total_frames, 20u);
  const std::vector<double> neg = {-3};
  EXPECT_THROW(boundaries_from_ms("u", neg, 20, 20), DataError);
}

class ManifestTest : public ::testing::Test {
 protected:
  ScratchDir dir{"manifest"};

  void write_feature(const std::string& id, std::size_t n) {
    FrameSequence s;
    s.utterance_id = id;
    s.num_frames = n;
    s.dim = 2;
    s.data.assign(n * 2, 0.5f);
    write_features(s, dir / (id + ".gsf"));
  }
  void write_lines(const std::string& text) {
    std::ofstream(dir / "m.jsonl") << text;
  }
};

TEST_F(ManifestTest, ParsesRelativePathsAndOptionalGroundTruth) {
  write_feature("x", 4);
  write_feature("y", 6);
  write_lines(
      R"({"utterance_id":"x","features":"x.gsf","num_frames":4,"ground_truth_boundaries_ms":[20,40]})"
      "\n\n"
      R"({"utterance_id":"y","features":"y.gsf","num_frames":6})"
      "\n");
  const auto m = read_manifest(dir / "m.jsonl");
  ASSERT_EQ(m.entries.size(), 2u);
  EXPECT_EQ(m.resolve(m.entries[0]), dir / "x.gsf");
  ASSERT_TRUE(m.entries[0].ground_truth_ms.has_value());
  EXPECT_EQ(m.entries[0].ground_truth_ms->size(), 2u);
  EXPECT_FALSE(m.entries[1].ground_truth_ms.has_value());

  const auto corpus = load_corpus(m, 2);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[1].features.utterance_id, "y");
  EXPECT_EQ(corpus[1].features.num_frames, 6u);
}

TEST_F(ManifestTest, DuplicateIdIsFormatError) {
  write_feature("x", 4);
  write_lines(R"({"utterance_id":"x","features":"x.gsf","num_frames":4})"
              "\n"
              R"({"utterance_id":"x","features":"x.gsf","num_frames":4})"
              "\n");
  EXPECT_THROW(read_manifest(dir / "m.jsonl"), FormatError);
}

TEST_F(ManifestTest, FrameCountMismatchIsFormatError) {
  write_feature("x", 4);
  write_lines(R"({"utterance_id":"x","features":"x.gsf","num_frames":5})"
              "\n");
  EXPECT_THROW(read_manifest(dir / "m.jsonl"), FormatError);
}

TEST_F(ManifestTest, MalformedLineIsFormatError) {
  write_lines("{not json\n");
  EXPECT_THROW(read_manifest(dir / "m.jsonl"), FormatError);
  write_lines(R"({"utterance_id":"x"})"
              "\n");
  EXPECT_THROW(read_manifest(dir / "m.jsonl"), FormatError);
}

TEST_F(ManifestTest, WriteCorpusRoundTrips) {
  std::vector<Utterance> corpus(2);
  for (int i = 0; i < 2; ++i) {
    auto& s = corpus[static_cast<std::size_t>(i)].features;
    s.utterance_id = "u" + std::to_string(i);
    s.num_frames = 5;
    s.dim = 3;
    s.data.assign(15, static_cast<float>(i));
  }
  corpus[0].ground_truth_ms = std::vector<double>{40.0};
  write_corpus(corpus, dir.path() / "out");
  const auto back = load_corpus(read_manifest(dir.path() / "out" / "manifest.jsonl"));
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].ground_truth_ms, corpus[0].ground_truth_ms);
  EXPECT_FALSE(back[1].ground_truth_ms.has_value());
  EXPECT_EQ(back[1].features.data, corpus[1].features.data);
}

TEST(BoundaryFile, RoundTrips) {
  ScratchDir dir("bounds");
  std::vector<BoundaryRecord> recs = {{BoundarySet{"a", {3, 9}, 12}, 20.0}, {BoundarySet{"b", {}, 4}, 20.0}};
  write_boundary_file(recs, dir / "b.jsonl");
  const auto back = read_boundary_file(dir / "b.jsonl");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].boundaries, recs[0].boundaries);
  EXPECT_EQ(back[1].boundaries, recs[1].boundaries);
  EXPECT_DOUBLE_EQ(back[0].frame_period_ms, 20.0);
}

TEST(BoundarySetValidation, RejectsUnorderedOrOutOfRange) {
  EXPECT_NO_THROW((BoundarySet{"a", {1, 2}, 3}.validate()));
  EXPECT_THROW((BoundarySet{"a", {2, 1}, 3}.validate()), ArgumentError);
  EXPECT_THROW((BoundarySet{"a", {3}, 3}.validate()), ArgumentError);
}
