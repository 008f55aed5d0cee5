// Copyright 2026 The srfuse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fusion.hpp"
#include "image.hpp"
#include "prep.hpp"

namespace srfuse::dataset {

// One candidate set on disk. Paths are resolved (relative entries are taken
// against the manifest's directory). An empty `lr` means "derive from gt".
struct Entry {
  std::string id;
  std::string gt;
  std::string lr;
  std::vector<std::string> candidates;
  std::vector<std::string> references;
};

// Line-oriented `key = value` text:
//
//   # comment
//   scale = 4
//   id = 000
//   gt = 000_gt.png
//   lr = 000_lr.png
//   sr = 000_sr1.png
//   sr = 000_sr2.png
//   ref = 000_ref1.png
//
// `scale` must precede the first `id`; every other key belongs to the most
// recent `id`. `sr` order is candidate order.
struct Manifest {
  int scale = 4;
  std::vector<Entry> entries;
};

Manifest parse_manifest(std::istream& in, const std::string& base_dir);
Manifest read_manifest(const std::string& path);
// Entries are written with paths relative to the manifest's directory when
// they live inside it.
void write_manifest(const Manifest& manifest, const std::string& path);

// Builds a manifest from `<id>_gt.png`, `<id>_lr.png` (optional) and
// `<id>_sr<k>.png` files; ids sorted, candidates by numeric k.
Manifest scan_directory(const std::string& dir, int scale);

struct LoadedEntry {
  std::string id;
  RgbImage gt;
  fusion::CandidateSet set;
};

// Loads PNGs; the gt is cropped to a multiple of the scale and the LR input
// is derived from it when the entry has none.
LoadedEntry load_entry(const Entry& entry, int scale,
                       fusion::CropPolicy policy);

struct PrepOptions {
  std::string hr_dir;        // read every *.png here, or
  int generate = 0;          // synthesize this many ground truths
  int generate_width = 128;
  int generate_height = 128;
  std::string out_dir;
  int scale = 4;
  std::uint64_t seed = 0;
  int synthetic_candidates = 0;  // 0 disables <id>_sr<k>.png generation
  std::vector<prep::Distortion> distortions;
  int tele_width = 0;  // 0 disables <id>_ref<k>.png generation
  int tele_height = 0;
  double tele_zoom = 1.0;
};

struct PrepSummary {
  int images = 0;
  std::string manifest_path;
  std::vector<std::string> notes;
};

// Writes <out>/<id>_gt.png, _lr.png, _ref<k>.png, _sr<k>.png and
// <out>/manifest.txt.
PrepSummary prepare_dataset(const PrepOptions& options);

// Default synthetic distortion menu: candidate 1 gets mild mosaic noise
// (amplitude 12, one cell per LR pixel), later candidates alternate a strong
// blur (sigma 6) and strong mosaic noise (amplitude 48).
std::vector<prep::Distortion> default_distortions(int n, int scale);

}  // namespace srfuse::dataset
