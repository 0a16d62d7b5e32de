// include/wordseg/tensor_io.hpp

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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wordseg {

/// One utterance worth of frame embeddings, stored frame-major (N rows of D floats).
struct FrameSequence {
  std::string utterance_id;
  std::size_t num_frames = 0;
  std::size_t dim = 0;
  float frame_period_ms = 20.0f;
  std::vector<float> data;

  std::span<const float> frame(std::size_t t) const {
    return {data.data() + t * dim, dim};
  }
  std::span<float> frame(std::size_t t) { return {data.data() + t * dim, dim}; }

  /// Throws ArgumentError on shape problems and DataError on non-finite values.
  void validate() const;
};

/// Interior word boundaries of one utterance, as frame indices.
struct BoundarySet {
  std::string utterance_id;
  std::vector<std::size_t> frames;
  std::size_t total_frames = 0;

  void validate() const;
  bool operator==(const BoundarySet&) const = default;
};

struct ManifestEntry {
  std::string utterance_id;
  std::filesystem::path feature_path;  // as written; relative paths resolve against the manifest
  std::size_t num_frames = 0;
  std::optional<std::vector<double>> ground_truth_ms;
};

struct DatasetManifest {
  std::vector<ManifestEntry> entries;
  std::filesystem::path base_dir;

  std::filesystem::path resolve(const ManifestEntry& e) const;
};

/// A loaded manifest entry.
struct Utterance {
  FrameSequence features;
  std::optional<std::vector<double>> ground_truth_ms;
};

struct FeatureHeader {
  std::uint32_t num_frames = 0;
  std::uint32_t dim = 0;
  float frame_period_ms = 0.0f;
};

FrameSequence read_features(const std::filesystem::path& path);
FeatureHeader read_feature_header(const std::filesystem::path& path);
void write_features(const FrameSequence& seq, const std::filesystem::path& path);

/// Encoded ".gsf" bytes; write_features writes exactly these.
std::vector<std::uint8_t> encode_features(const FrameSequence& seq);
FrameSequence decode_features(std::span<const std::uint8_t> bytes, std::string utterance_id);

/// round(t_ms / frame_period_ms), halves rounded away from zero.
std::size_t time_to_frame(double t_ms, double frame_period_ms);
double frame_to_time(std::size_t frame, double frame_period_ms);

/// Interior boundaries implied by millisecond times. Times mapping to frame 0 or
/// past the last frame are endpoints and dropped; duplicates collapse.
BoundarySet boundaries_from_ms(std::string utterance_id, std::span<const double> times_ms,
                               std::size_t total_frames, double frame_period_ms);

/// JSON-lines manifest. Rejects duplicate ids and num_frames that disagree with
/// the feature file header.
DatasetManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const DatasetManifest& manifest, const std::filesystem::path& path);

/// Loads every feature file of the manifest, in manifest order.
std::vector<Utterance> load_corpus(const DatasetManifest& manifest, int jobs = 1);

/// Writes one feature file per utterance plus manifest.jsonl into out_dir.
DatasetManifest write_corpus(std::span<const Utterance> corpus, const std::filesystem::path& out_dir);

struct BoundaryRecord {
  BoundarySet boundaries;
  double frame_period_ms = 20.0;
};

void write_boundary_file(std::span<const BoundaryRecord> records, const std::filesystem::path& path);
std::vector<BoundaryRecord> read_boundary_file(const std::filesystem::path& path);

/// Whole-file helpers shared by the readers and writers.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wordseg
