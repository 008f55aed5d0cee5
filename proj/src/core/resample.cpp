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

#include "resample.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "error.hpp"
#include "parallel.hpp"

namespace srfuse {
namespace {

// Per-output-index tap list for one axis.
struct AxisWeights {
  int taps = 0;
  std::vector<int> index;     // out_len * taps, already clamped
  std::vector<double> weight; // out_len * taps, normalized per output
};

AxisWeights axis_weights(int in_len, int out_len, double scale) {
  const double stretch = scale < 1.0 ? scale : 1.0;
  const double support = 2.0 / stretch;
  AxisWeights aw;
  aw.taps = static_cast<int>(std::ceil(2.0 * support)) + 2;
  aw.index.resize(static_cast<std::size_t>(out_len) * aw.taps);
  aw.weight.resize(aw.index.size());
  for (int j = 0; j < out_len; ++j) {
    const double center = (j + 0.5) / scale - 0.5;
    const int left = static_cast<int>(std::floor(center - support));
    double total = 0.0;
    for (int t = 0; t < aw.taps; ++t) {
      const int src = left + t;
      const double w = cubic_kernel((center - src) * stretch);
      const std::size_t k = static_cast<std::size_t>(j) * aw.taps + t;
      aw.index[k] = std::clamp(src, 0, in_len - 1);
      aw.weight[k] = w;
      total += w;
    }
    for (int t = 0; t < aw.taps; ++t) {
      aw.weight[static_cast<std::size_t>(j) * aw.taps + t] /= total;
    }
  }
  return aw;
}

Plane resample_with_scale(const Plane& plane, int out_width, int out_height,
                          double scale_x, double scale_y) {
  if (out_width < 1 || out_height < 1) {
    throw_invalid("resample target must be at least 1x1, got " +
                  std::to_string(out_width) + "x" + std::to_string(out_height));
  }
  const int in_w = plane.width();
  const int in_h = plane.height();
  const AxisWeights wx = axis_weights(in_w, out_width, scale_x);
  const AxisWeights wy = axis_weights(in_h, out_height, scale_y);

  // Horizontal pass: in_h rows of out_width samples.
  std::vector<double> tmp(static_cast<std::size_t>(in_h) * out_width);
  parallel_for(0, in_h, [&](std::ptrdiff_t y) {
    const auto src = plane.row(static_cast<int>(y));
    double* dst = tmp.data() + static_cast<std::size_t>(y) * out_width;
    for (int x = 0; x < out_width; ++x) {
      const std::size_t base = static_cast<std::size_t>(x) * wx.taps;
      double acc = 0.0;
      for (int t = 0; t < wx.taps; ++t) {
        acc += wx.weight[base + t] * src[wx.index[base + t]];
      }
      dst[x] = acc;
    }
  });

  Plane out(out_width, out_height);
  parallel_for(0, out_height, [&](std::ptrdiff_t y) {
    auto dst = out.row(static_cast<int>(y));
    const std::size_t base = static_cast<std::size_t>(y) * wy.taps;
    for (int x = 0; x < out_width; ++x) {
      double acc = 0.0;
      for (int t = 0; t < wy.taps; ++t) {
        acc += wy.weight[base + t] *
               tmp[static_cast<std::size_t>(wy.index[base + t]) * out_width + x];
      }
      dst[x] = std::clamp(acc, 0.0, 255.0);
    }
  });
  return out;
}

}  // namespace

double cubic_kernel(double x) noexcept {
  const double ax = std::abs(x);
  if (ax <= 1.0) return (1.5 * ax - 2.5) * ax * ax + 1.0;
  if (ax < 2.0) return ((-0.5 * ax + 2.5) * ax - 4.0) * ax + 2.0;
  return 0.0;
}

Plane bicubic_resample(const Plane& plane, int out_width, int out_height) {
  return resample_with_scale(
      plane, out_width, out_height,
      static_cast<double>(out_width) / plane.width(),
      static_cast<double>(out_height) / plane.height());
}

Plane bicubic_downscale(const Plane& plane, int factor) {
  if (factor < 1) throw_invalid("downscale factor must be >= 1");
  const int out_w = (plane.width() + factor - 1) / factor;
  const int out_h = (plane.height() + factor - 1) / factor;
  return resample_with_scale(plane, out_w, out_h, 1.0 / factor,
                             1.0 / factor);
}

RgbImage resample_rgb(const RgbImage& img, int out_width, int out_height) {
  return RgbImage(bicubic_resample(img.r, out_width, out_height),
                  bicubic_resample(img.g, out_width, out_height),
                  bicubic_resample(img.b, out_width, out_height));
}

RgbImage downscale_rgb(const RgbImage& img, int factor) {
  return RgbImage(bicubic_downscale(img.r, factor),
                  bicubic_downscale(img.g, factor),
                  bicubic_downscale(img.b, factor));
}

}  // namespace srfuse
