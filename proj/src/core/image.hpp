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

#include <cstddef>
#include <span>
#include <vector>

namespace srfuse {

// Single-channel grid of finite real samples, row-major. Nominal range is
// [0, 255] but samples are not quantized.
class Plane {
 public:
  Plane(int width, int height, double fill = 0.0);
  // Throws if samples.size() != width * height or any sample is not finite.
  Plane(int width, int height, std::vector<double> samples);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return samples_.size(); }

  double at(int x, int y) const noexcept {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }
  double& at(int x, int y) noexcept {
    return samples_[static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<const double> samples() const noexcept { return samples_; }
  std::span<double> samples() noexcept { return samples_; }
  std::span<const double> row(int y) const noexcept {
    return std::span<const double>(samples_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }
  std::span<double> row(int y) noexcept {
    return std::span<double>(samples_).subspan(
        static_cast<std::size_t>(y) * width_, width_);
  }

  bool same_size(const Plane& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_;
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  int width_;
  int height_;
  std::vector<double> samples_;
};

struct RgbImage {
  Plane r;
  Plane g;
  Plane b;

  RgbImage(int width, int height, double fill = 0.0);
  // Throws kDimensionMismatch unless all planes share dimensions.
  RgbImage(Plane r, Plane g, Plane b);

  int width() const noexcept { return r.width(); }
  int height() const noexcept { return r.height(); }
  bool same_size(const RgbImage& o) const noexcept { return r.same_size(o.r); }

  Plane& channel(int c) noexcept { return c == 0 ? r : (c == 1 ? g : b); }
  const Plane& channel(int c) const noexcept {
    return c == 0 ? r : (c == 1 ? g : b);
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

struct YcbcrImage {
  Plane y;
  Plane cb;
  Plane cr;

  YcbcrImage(Plane y, Plane cb, Plane cr);

  int width() const noexcept { return y.width(); }
  int height() const noexcept { return y.height(); }
};

struct Rect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;
};

Plane crop(const Plane& plane, const Rect& region);
RgbImage crop(const RgbImage& img, const Rect& region);

// Largest centered region of the given size; throws if it does not fit.
Rect centered_rect(int width, int height, int crop_width, int crop_height);

Plane flip_horizontal(const Plane& plane);
RgbImage flip_horizontal(const RgbImage& img);

}  // namespace srfuse
