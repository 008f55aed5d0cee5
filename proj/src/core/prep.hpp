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
#include <vector>

#include "fusion.hpp"
#include "image.hpp"

namespace srfuse::prep {

// Telephoto simulation parameters: crop `crop_region` out of the HR image and
// resample it by `zoom_factor` (1 keeps the crop as-is).
struct PrepSpec {
  int scale = 4;
  Rect crop_region;
  double zoom_factor = 1.0;
};

// Largest centered crop whose sides are multiples of `scale`. Returns the
// input unchanged when it is already divisible.
RgbImage crop_to_multiple(const RgbImage& hr, int scale);
bool is_divisible(const RgbImage& hr, int scale);

// Bicubic downsample by `scale` after crop_to_multiple.
RgbImage make_lr(const RgbImage& hr, int scale);

RgbImage make_telephoto(const RgbImage& hr, const PrepSpec& spec);

// Telephoto crop rectangles of the given size: center, then the four corners
// (top-left, top-right, bottom-left, bottom-right).
std::vector<Rect> telephoto_regions(int width, int height, int crop_width,
                                    int crop_height);

enum class DistortionKind { kNone, kBlur, kNoise };

// kBlur: separable Gaussian, strength = sigma in HR pixels.
// kNoise: uniform noise in [-strength, strength], one draw per block x block
// cell of the image grid and channel; block > 1 gives a mosaic pattern.
struct Distortion {
  DistortionKind kind = DistortionKind::kNone;
  double strength = 0.0;
  int block = 1;
};

struct SyntheticSpec {
  // One entry per candidate, or a single entry applied to all of them.
  std::vector<Distortion> distortions;
  int scale = 4;
  std::uint64_t seed = 0;
};

struct SyntheticSet {
  fusion::CandidateSet set;
  std::vector<Rect> regions;  // distorted region of each candidate
};

// Candidate i equals gt except inside vertical band i of n near-equal bands,
// where distortion i is applied. Band edges are multiples of the scale. gt
// must already be divisible by the scale and at least n LR pixels wide.
SyntheticSet make_synthetic_candidates(const RgbImage& gt, int n,
                                       const SyntheticSpec& spec);

// Deterministic textured test scene (oriented sinusoids plus a few soft
// disks), values inside [0, 255].
RgbImage make_synthetic_gt(int width, int height, std::uint64_t seed);

// Blurs the whole image with a clamp-to-edge separable Gaussian.
RgbImage gaussian_blur(const RgbImage& img, double sigma);

// splitmix64; the only randomness source used by the generators.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, 1).
  double uniform() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) noexcept {
    return lo + (hi - lo) * uniform();
  }

 private:
  std::uint64_t state_;
};

}  // namespace srfuse::prep
