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

#include "image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "error.hpp"

namespace srfuse {
namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw_invalid("image dimensions must be positive, got " +
                  std::to_string(width) + "x" + std::to_string(height));
  }
}

std::string dims(const Plane& p) {
  return std::to_string(p.width()) + "x" + std::to_string(p.height());
}

}  // namespace

Plane::Plane(int width, int height, double fill)
    : width_(width), height_(height) {
  check_dims(width, height);
  if (!std::isfinite(fill)) throw_invalid("plane fill value is not finite");
  samples_.assign(static_cast<std::size_t>(width) * height, fill);
}

Plane::Plane(int width, int height, std::vector<double> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
  check_dims(width, height);
  if (samples_.size() != static_cast<std::size_t>(width) * height) {
    throw_dimension("plane sample count " + std::to_string(samples_.size()) +
                    " does not match " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  for (double v : samples_) {
    if (!std::isfinite(v)) throw_invalid("plane contains a non-finite sample");
  }
}

RgbImage::RgbImage(int width, int height, double fill)
    : r(width, height, fill), g(width, height, fill), b(width, height, fill) {}

RgbImage::RgbImage(Plane r_, Plane g_, Plane b_)
    : r(std::move(r_)), g(std::move(g_)), b(std::move(b_)) {
  if (!r.same_size(g) || !r.same_size(b)) {
    throw_dimension("RGB planes differ in size: " + dims(r) + ", " + dims(g) +
                    ", " + dims(b));
  }
}

YcbcrImage::YcbcrImage(Plane y_, Plane cb_, Plane cr_)
    : y(std::move(y_)), cb(std::move(cb_)), cr(std::move(cr_)) {
  if (!y.same_size(cb) || !y.same_size(cr)) {
    throw_dimension("YCbCr planes differ in size");
  }
}

Plane crop(const Plane& plane, const Rect& region) {
  if (region.width < 1 || region.height < 1 || region.x < 0 || region.y < 0 ||
      region.x + region.width > plane.width() ||
      region.y + region.height > plane.height()) {
    throw_invalid("crop region (" + std::to_string(region.x) + "," +
                  std::to_string(region.y) + " " +
                  std::to_string(region.width) + "x" +
                  std::to_string(region.height) + ") is outside a " +
                  dims(plane) + " image");
  }
  Plane out(region.width, region.height);
  for (int y = 0; y < region.height; ++y) {
    auto src = plane.row(region.y + y).subspan(region.x, region.width);
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

RgbImage crop(const RgbImage& img, const Rect& region) {
  return RgbImage(crop(img.r, region), crop(img.g, region),
                  crop(img.b, region));
}

Rect centered_rect(int width, int height, int crop_width, int crop_height) {
  if (crop_width < 1 || crop_height < 1 || crop_width > width ||
      crop_height > height) {
    throw_invalid("centered crop " + std::to_string(crop_width) + "x" +
                  std::to_string(crop_height) + " does not fit in " +
                  std::to_string(width) + "x" + std::to_string(height));
  }
  return Rect{(width - crop_width) / 2, (height - crop_height) / 2, crop_width,
              crop_height};
}

Plane flip_horizontal(const Plane& plane) {
  Plane out(plane.width(), plane.height());
  for (int y = 0; y < plane.height(); ++y) {
    auto src = plane.row(y);
    std::reverse_copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

RgbImage flip_horizontal(const RgbImage& img) {
  return RgbImage(flip_horizontal(img.r), flip_horizontal(img.g),
                  flip_horizontal(img.b));
}

}  // namespace srfuse
