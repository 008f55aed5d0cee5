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

#include "image.hpp"

namespace srfuse {

// Cubic convolution kernel with a = -0.5 (Catmull-Rom).
double cubic_kernel(double x) noexcept;

// Bicubic resampling with pixel-center alignment: output pixel j maps to
// input coordinate (j + 0.5) / scale - 0.5, scale = out / in per axis. When
// shrinking, the kernel is stretched by 1 / scale so the operator low-pass
// filters (imresize-style). Taps outside the image replicate the edge.
// Tap weights are normalized to sum to one. Output is clamped to [0, 255].
Plane bicubic_resample(const Plane& plane, int out_width, int out_height);

// Downsample by an integer factor with scale exactly 1 / factor; output is
// ceil(in / factor) on each axis.
Plane bicubic_downscale(const Plane& plane, int factor);

RgbImage resample_rgb(const RgbImage& img, int out_width, int out_height);
RgbImage downscale_rgb(const RgbImage& img, int factor);

}  // namespace srfuse
