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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fusion.hpp"
#include "image.hpp"

namespace srfuse::sweep {

enum class SweepKind { kBeta, kBetaG, kHeatmap, kFuseCount };

struct SweepSpec {
  std::vector<double> beta_grid{0, 30, 90, 180, 300, 450, 630, 810};
  std::vector<double> beta_g_grid{0, 0.5, 1, 2, 4, 8};
  // Empty means 1..N of the smallest candidate set.
  std::vector<int> fuse_counts;
  // Parameters held fixed by the fuse-count sweep.
  double fixed_beta = 300.0;
  double fixed_beta_g = 2.0;
  std::optional<double> mask_beta;
  bool area_as_fraction = false;
  double weight_epsilon = 1e-12;

  // Grids must be nonempty, ascending and nonnegative.
  void validate() const;
};

struct SweepInput {
  std::string id;
  RgbImage gt;
  fusion::CandidateSet set;
};

struct SweepRecord {
  std::string image_id;
  double beta = 0.0;
  double beta_g = 0.0;
  int n_fused = 0;
  double psnr_y = 0.0;
  double ssim = 0.0;

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

inline constexpr const char* kMeanId = "__mean__";

struct SweepResult {
  std::vector<SweepRecord> records;  // sorted by (id, beta, beta_g, n_fused)
  std::vector<SweepRecord> means;    // image_id == kMeanId, one per point
  // Per mean row: images left out of the PSNR mean for an infinite PSNR.
  std::vector<int> excluded_infinite;
};

SweepResult sweep_beta(std::span<const SweepInput> inputs,
                       const SweepSpec& spec);
SweepResult sweep_beta_g(std::span<const SweepInput> inputs,
                         const SweepSpec& spec);
SweepResult sweep_heatmap(std::span<const SweepInput> inputs,
                          const SweepSpec& spec);
SweepResult sweep_fuse_count(std::span<const SweepInput> inputs,
                             const SweepSpec& spec);
SweepResult run(SweepKind kind, std::span<const SweepInput> inputs,
                const SweepSpec& spec);

// Header `image_id,beta,beta_g,n_fused,psnr_y,ssim`, records then mean
// rows, LF endings. Reals use the shortest round-trip form; infinite PSNR
// is written as `inf`.
std::string to_csv(const SweepResult& result);
void write_csv(const SweepResult& result, const std::string& path);

std::string format_real(double v);

}  // namespace srfuse::sweep
