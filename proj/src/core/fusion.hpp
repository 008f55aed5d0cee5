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

#include "image.hpp"

namespace srfuse::fusion {

// How candidates whose sizes disagree are reconciled before fusion.
enum class CropPolicy {
  kCenterCrop,  // center-crop every candidate to the common minimum size
  kError,       // any size disagreement is a dimension error
};

struct FusionConfig {
  // Penalty on the squared luma discrepancy between a downsampled candidate
  // and the LR input, intensities normalized to [0, 1].
  double beta = 300.0;
  // Exponent scale on the binary-mask area of each candidate.
  double beta_g = 2.0;
  // Measure mask areas as a fraction of the image instead of in pixels
  // before applying beta_g.
  bool area_as_fraction = false;
  // Penalty used only when deriving the binary masks (and so the global
  // weights). Unset means `beta`.
  std::optional<double> mask_beta;
  int scale = 4;
  // Lower clamp on per-pixel weights; keeps every denominator positive.
  double weight_epsilon = 1e-12;
  CropPolicy crop_policy = CropPolicy::kCenterCrop;
  bool export_masks = false;

  // Throws kInvalidArgument on negative/non-finite parameters.
  void validate() const;
  double effective_mask_beta() const { return mask_beta.value_or(beta); }
};

// LR input plus N >= 1 super-resolved candidates of it. Index 0 is the
// candidate produced with the most relevant reference.
struct CandidateSet {
  RgbImage lr_input;
  std::vector<RgbImage> candidates;
  int scale = 4;
};

// Applies `policy` to the candidates and checks every CandidateSet
// invariant. Throws kDimensionMismatch / kInvalidArgument.
CandidateSet make_candidate_set(RgbImage lr_input,
                                std::vector<RgbImage> candidates, int scale,
                                CropPolicy policy = CropPolicy::kCenterCrop);
void validate(const CandidateSet& set);

struct WeightMask {
  Plane weights;  // in [weight_epsilon, 1]
  int source_index = 0;
};

struct BinaryMask {
  Plane mask;  // samples are exactly 0.0 or 1.0
  int source_index = 0;
};

struct FusionReport {
  RgbImage fused;
  std::vector<double> global_weights;      // max-normalized, max entry is 1
  std::vector<double> log_global_weights;  // beta_g * (area_i - max area)
  std::vector<double> mask_areas;          // pixel counts, sum == W * H
  std::vector<WeightMask> weight_masks;    // filled when export_masks
  std::vector<BinaryMask> binary_masks;    // filled when export_masks
};

// Per-pixel, per-channel arithmetic mean.
RgbImage naive_fuse(std::span<const RgbImage> candidates);

// exp(-beta * (D(Y_candidate) - Y_lr)^2 / 255^2) on the LR grid. Values are
// in (0, 1] and never increase with beta.
Plane consistency_field(const RgbImage& candidate, const RgbImage& lr_input,
                        double beta, int scale);

// consistency_field bicubically upsampled to the candidate grid and clamped
// to [eps, 1]. The upsampling kernel has negative lobes, so monotonicity in
// beta holds on the LR grid but only approximately per HR pixel.
WeightMask adaptive_weight_mask(const RgbImage& candidate,
                                const RgbImage& lr_input, double beta,
                                int scale, double weight_epsilon = 1e-12,
                                int source_index = 0);

// sum_i I_i(p) W_i(p) / sum_i W_i(p); one shared mask for all channels.
RgbImage masked_fuse(std::span<const RgbImage> candidates,
                     std::span<const WeightMask> masks);

// One-hot argmax of the weights at each pixel; ties go to the lowest index.
std::vector<BinaryMask> binary_masks(std::span<const WeightMask> masks);

std::vector<double> mask_areas(std::span<const BinaryMask> masks);

struct GlobalWeights {
  std::vector<double> weights;  // exp(log_weights), floored at DBL_MIN
  std::vector<double> log_weights;
};

// exp(beta_g * A_i) rescaled by exp(-beta_g * max A); the rescaling cancels
// in the normalized fusion.
GlobalWeights global_weights(std::span<const double> areas, double beta_g);
GlobalWeights global_weights(std::span<const BinaryMask> masks, double beta_g);

// Fusion with combined weights V_i(p) = w_i * W_i(p), single normalization.
RgbImage weighted_fuse(std::span<const RgbImage> candidates,
                       std::span<const double> global,
                       std::span<const WeightMask> masks);

FusionReport fuse(const CandidateSet& set, const FusionConfig& config);

// Precomputed per-candidate masks for one (beta, mask_beta) pair; lets a
// caller vary beta_g without recomputing them.
struct MaskBundle {
  std::vector<WeightMask> weights;
  std::vector<BinaryMask> binary;
  std::vector<double> areas;
};
MaskBundle compute_masks(const CandidateSet& set, const FusionConfig& config);
FusionReport fuse_with_masks(const CandidateSet& set, const MaskBundle& masks,
                             const FusionConfig& config);

// Writes <dir>/<stem>_weight<k>.png (weights x 255) and
// <dir>/<stem>_binary<k>.png for k = 1..N. Requires exported masks.
std::vector<std::string> export_masks(const FusionReport& report,
                                      const std::string& dir,
                                      const std::string& stem);

}  // namespace srfuse::fusion
