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

#include <limits>

#include "image.hpp"

namespace srfuse::metrics {

inline constexpr double kPsnrInfinity = std::numeric_limits<double>::infinity();

struct MetricResult {
  double psnr_y = 0.0;  // dB; kPsnrInfinity for identical Y planes
  double ssim = 0.0;
};

// Gaussian-window SSIM parameters (Wang et al. defaults).
struct SsimParams {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 255.0;
};

double mse(const Plane& a, const Plane& b);
double psnr(const Plane& a, const Plane& b, double peak = 255.0);

// Mean local SSIM over the valid region (no padding). Both planes must be at
// least window x window.
double ssim(const Plane& a, const Plane& b, const SsimParams& params = {});

double psnr_y(const RgbImage& a, const RgbImage& b);
double ssim_y(const RgbImage& a, const RgbImage& b);
MetricResult evaluate(const RgbImage& a, const RgbImage& b);

}  // namespace srfuse::metrics
