// src/tensor_io.cpp

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

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wordseg/errors.hpp"
#include "wordseg/parallel.hpp"

namespace wordseg {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr char kMagic[4] = {'G', 'S', 'F', '1'};
constexpr std::size_t kHeaderBytes = 16;

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

void put_f32(std::vector<std::uint8_t>& out, float v) { put_u32(out, std::bit_cast<std::uint32_t>(v)); }

float get_f32(const std::uint8_t* p) { return std::bit_cast<float>(get_u32(p)); }

FeatureHeader decode_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes)
    throw LengthError("feature file shorter than its 16-byte header");
  if (std::memcmp(bytes.data(), kMagic, 3) != 0)
    throw FormatError("bad magic: not a GSF feature file");
  if (bytes[3] != static_cast<std::uint8_t>(kMagic[3]))
    throw FormatError("unsupported GSF version '" + std::string(1, static_cast<char>(bytes[3])) + "'");
  FeatureHeader h;
  h.num_frames = get_u32(bytes.data() + 4);
  h.dim = get_u32(bytes.data() + 8);
  h.frame_period_ms = get_f32(bytes.data() + 12);
  return h;
}

std::string stem_id(const fs::path& p) { return p.stem().string(); }

std::vector<std::uint8_t> read_binary_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <typename T>
T required(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw FormatError(where + ": missing field '" + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw FormatError(where + ": bad field '" + key + "': " + e.what());
  }
}

json parse_line(const std::string& line, const std::string& where) {
  try {
    return json::parse(line);
  } catch (const json::parse_error& e) {
    throw FormatError(where + ": " + e.what());
  }
}

template <typename Fn>
void for_each_record(const fs::path& path, Fn&& fn) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    fn(parse_line(line, where), where);
  }
}

}  // namespace

void FrameSequence::validate() const {
  if (num_frames < 1 || dim < 1)
    throw ArgumentError("frame sequence '" + utterance_id + "' must have N >= 1 and D >= 1");
  if (data.size() != num_frames * dim)
    throw ArgumentError("frame sequence '" + utterance_id + "' payload size does not match N*D");
  if (!(frame_period_ms > 0.0f) || !std::isfinite(frame_period_ms))
    throw ArgumentError("frame sequence '" + utterance_id + "' needs a positive frame period");
  for (float v : data)
    if (!std::isfinite(v)) throw DataError("non-finite value in frame sequence '" + utterance_id + "'");
}

void BoundarySet::validate() const {
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (frames[i] >= total_frames)
      throw ArgumentError("boundary " + std::to_string(frames[i]) + " out of range for '" + utterance_id + "'");
    if (i > 0 && frames[i] <= frames[i - 1])
      throw ArgumentError("boundaries of '" + utterance_id + "' are not strictly increasing");
  }
}

fs::path DatasetManifest::resolve(const ManifestEntry& e) const {
  if (e.feature_path.is_absolute() || base_dir.empty()) return e.feature_path;
  return base_dir / e.feature_path;
}

std::vector<std::uint8_t> encode_features(const FrameSequence& seq) {
  seq.validate();
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + seq.data.size() * 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u32(out, static_cast<std::uint32_t>(seq.num_frames));
  put_u32(out, static_cast<std::uint32_t>(seq.dim));
  put_f32(out, seq.frame_period_ms);
  for (float v : seq.data) put_f32(out, v);
  return out;
}

FrameSequence decode_features(std::span<const std::uint8_t> bytes, std::string utterance_id) {
  const FeatureHeader h = decode_header(bytes);
  if (h.num_frames == 0 || h.dim == 0) throw FormatError("feature header declares an empty matrix");
  if (!(h.frame_period_ms > 0.0f) || !std::isfinite(h.frame_period_ms))
    throw FormatError("feature header has a non-positive frame period");
  const std::uint64_t count = std::uint64_t(h.num_frames) * h.dim;
  const std::uint64_t expected = kHeaderBytes + count * 4;
  if (bytes.size() != expected)
    throw LengthError("payload holds " + std::to_string((bytes.size() - kHeaderBytes) / 4) +
                      " values, header declares " + std::to_string(count));
  FrameSequence seq;
  seq.utterance_id = std::move(utterance_id);
  seq.num_frames = h.num_frames;
  seq.dim = h.dim;
  seq.frame_period_ms = h.frame_period_ms;
  seq.data.resize(count);
  const std::uint8_t* p = bytes.data() + kHeaderBytes;
  for (std::size_t i = 0; i < count; ++i, p += 4) {
    seq.data[i] = get_f32(p);
    if (!std::isfinite(seq.data[i]))
      throw DataError("non-finite value at frame " + std::to_string(i / h.dim) + " of '" +
                      seq.utterance_id + "'");
  }
  return seq;
}

FrameSequence read_features(const fs::path& path) {
  const auto bytes = read_binary_file(path);
  try {
    return decode_features(bytes, stem_id(path));
  } catch (const FormatError& e) {
    if (dynamic_cast<const LengthError*>(&e)) throw LengthError(path.string() + ": " + e.what());
    throw FormatError(path.string() + ": " + e.what());
  }
}

FeatureHeader read_feature_header(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::uint8_t buf[kHeaderBytes];
  in.read(reinterpret_cast<char*>(buf), kHeaderBytes);
  return decode_header(std::span<const std::uint8_t>(buf, static_cast<std::size_t>(in.gcount())));
}

void write_features(const FrameSequence& seq, const fs::path& path) {
  const auto bytes = encode_features(seq);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::size_t time_to_frame(double t_ms, double frame_period_ms) {
  if (!(t_ms >= 0.0) || !(frame_period_ms > 0.0))
    throw ArgumentError("time_to_frame needs t_ms >= 0 and a positive frame period");
  // std::round rounds halfway cases away from zero.
  return static_cast<std::size_t>(std::round(t_ms / frame_period_ms));
}

double frame_to_time(std::size_t frame, double frame_period_ms) {
  return static_cast<double>(frame) * frame_period_ms;
}

BoundarySet boundaries_from_ms(std::string utterance_id, std::span<const double> times_ms,
                               std::size_t total_frames, double frame_period_ms) {
  std::set<std::size_t> frames;
  for (double t : times_ms) {
    if (!std::isfinite(t) || t < 0.0)
      throw DataError("invalid boundary time " + std::to_string(t) + " in '" + utterance_id + "'");
    const std::size_t f = time_to_frame(t, frame_period_ms);
    if (f > 0 && f < total_frames) frames.insert(f);
  }
  return BoundarySet{std::move(utterance_id), {frames.begin(), frames.end()}, total_frames};
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

DatasetManifest read_manifest(const fs::path& path) {
  DatasetManifest m;
  m.base_dir = path.parent_path();
  std::set<std::string> seen;
  for_each_record(path, [&](const json& j, const std::string& where) {
    ManifestEntry e;
    e.utterance_id = required<std::string>(j, "utterance_id", where);
    e.feature_path = required<std::string>(j, "features", where);
    e.num_frames = required<std::size_t>(j, "num_frames", where);
    if (auto it = j.find("ground_truth_boundaries_ms"); it != j.end() && !it->is_null())
      e.ground_truth_ms = required<std::vector<double>>(j, "ground_truth_boundaries_ms", where);
    if (!seen.insert(e.utterance_id).second)
      throw FormatError(where + ": duplicate utterance_id '" + e.utterance_id + "'");
    const FeatureHeader h = read_feature_header(m.resolve(e));
    if (h.num_frames != e.num_frames)
      throw FormatError(where + ": num_frames " + std::to_string(e.num_frames) +
                        " disagrees with feature header (" + std::to_string(h.num_frames) + ")");
    m.entries.push_back(std::move(e));
  });
  return m;
}

void write_manifest(const DatasetManifest& manifest, const fs::path& path) {
  std::string text;
  for (const auto& e : manifest.entries) {
    json j;
    j["utterance_id"] = e.utterance_id;
    j["features"] = e.feature_path.generic_string();
    j["num_frames"] = e.num_frames;
    if (e.ground_truth_ms) j["ground_truth_boundaries_ms"] = *e.ground_truth_ms;
    text += j.dump() + "\n";
  }
  write_text_file(path, text);
}

std::vector<Utterance> load_corpus(const DatasetManifest& manifest, int jobs) {
  std::vector<Utterance> corpus(manifest.entries.size());
  parallel_for(corpus.size(), jobs, [&](std::size_t i) {
    const auto& e = manifest.entries[i];
    corpus[i].features = read_features(manifest.resolve(e));
    corpus[i].features.utterance_id = e.utterance_id;
    corpus[i].ground_truth_ms = e.ground_truth_ms;
  });
  return corpus;
}

DatasetManifest write_corpus(std::span<const Utterance> corpus, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());
  DatasetManifest m;
  m.base_dir = out_dir;
  for (const auto& u : corpus) {
    const fs::path rel = u.features.utterance_id + ".gsf";
    write_features(u.features, out_dir / rel);
    m.entries.push_back({u.features.utterance_id, rel, u.features.num_frames, u.ground_truth_ms});
  }
  write_manifest(m, out_dir / "manifest.jsonl");
  return m;
}

void write_boundary_file(std::span<const BoundaryRecord> records, const fs::path& path) {
  std::string text;
  for (const auto& r : records) {
    r.boundaries.validate();
    json j;
    j["utterance_id"] = r.boundaries.utterance_id;
    j["num_frames"] = r.boundaries.total_frames;
    j["frame_period_ms"] = r.frame_period_ms;
    j["boundaries_frames"] = r.boundaries.frames;
    json ms = json::array();
    for (auto f : r.boundaries.frames) ms.push_back(frame_to_time(f, r.frame_period_ms));
    j["boundaries_ms"] = std::move(ms);
    text += j.dump() + "\n";
  }
  write_text_file(path, text);
}

std::vector<BoundaryRecord> read_boundary_file(const fs::path& path) {
  std::vector<BoundaryRecord> out;
  std::set<std::string> seen;
  for_each_record(path, [&](const json& j, const std::string& where) {
    BoundaryRecord r;
    r.boundaries.utterance_id = required<std::string>(j, "utterance_id", where);
    r.boundaries.total_frames = required<std::size_t>(j, "num_frames", where);
    r.boundaries.frames = required<std::vector<std::size_t>>(j, "boundaries_frames", where);
    r.frame_period_ms = required<double>(j, "frame_period_ms", where);
    if (!(r.frame_period_ms > 0.0)) throw FormatError(where + ": frame_period_ms must be positive");
    try {
      r.boundaries.validate();
    } catch (const ArgumentError& e) {
      throw FormatError(where + ": " + e.what());
    }
    if (!seen.insert(r.boundaries.utterance_id).second)
      throw FormatError(where + ": duplicate utterance_id '" + r.boundaries.utterance_id + "'");
    out.push_back(std::move(r));
  });
  return out;
}

}  // namespace wordseg
