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

#include "color.hpp"

#include <array>

#include "parallel.hpp"

namespace srfuse {
namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

constexpr Mat3 kForward = {{
    {65.481 / 255.0, 128.553 / 255.0, 24.966 / 255.0},
    {-37.797 / 255.0, -74.203 / 255.0, 112.0 / 255.0},
    {112.0 / 255.0, -93.786 / 255.0, -18.214 / 255.0},
}};
constexpr std::array<double, 3> kOffset = {16.0, 128.0, 128.0};

Mat3 invert(const Mat3& m) {
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  Mat3 inv{};
  inv[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  inv[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  inv[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  inv[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  inv[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  inv[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  inv[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  inv[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  inv[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
  return inv;
}

const Mat3& inverse() {
  static const Mat3 inv = invert(kForward);
  return inv;
}

// out_k = post_k + sum_j m[k][j] * (in_j - pre_j)
void apply(const Mat3& m, const std::array<double, 3>& pre,
           const std::array<double, 3>& post, const Plane& a, const Plane& b,
           const Plane& c, Plane& x, Plane& y, Plane& z) {
  const auto sa = a.samples();
  const auto sb = b.samples();
  const auto sc = c.samples();
  auto sx = x.samples();
  auto sy = y.samples();
  auto sz = z.samples();
  const int w = a.width();
  parallel_for(0, a.height(), [&](std::ptrdiff_t row) {
    const std::size_t base = static_cast<std::size_t>(row) * w;
    for (std::size_t i = base; i < base + w; ++i) {
      const double u = sa[i] - pre[0];
      const double v = sb[i] - pre[1];
      const double t = sc[i] - pre[2];
      sx[i] = post[0] + m[0][0] * u + m[0][1] * v + m[0][2] * t;
      sy[i] = post[1] + m[1][0] * u + m[1][1] * v + m[1][2] * t;
      sz[i] = post[2] + m[2][0] * u + m[2][1] * v + m[2][2] * t;
    }
  });
}

}  // namespace

YcbcrImage rgb_to_ycbcr(const RgbImage& img) {
  Plane y(img.width(), img.height());
  Plane cb(img.width(), img.height());
  Plane cr(img.width(), img.height());
  apply(kForward, {0.0, 0.0, 0.0}, kOffset, img.r, img.g, img.b, y, cb, cr);
  return YcbcrImage(std::move(y), std::move(cb), std::move(cr));
}

RgbImage ycbcr_to_rgb(const YcbcrImage& img) {
  Plane r(img.width(), img.height());
  Plane g(img.width(), img.height());
  Plane b(img.width(), img.height());
  apply(inverse(), kOffset, {0.0, 0.0, 0.0}, img.y, img.cb, img.cr, r, g, b);
  return RgbImage(std::move(r), std::move(g), std::move(b));
}

Plane luma(const RgbImage& img) {
  Plane y(img.width(), img.height());
  const auto sr = img.r.samples();
  const auto sg = img.g.samples();
  const auto sb = img.b.samples();
  auto sy = y.samples();
  for (std::size_t i = 0; i < sy.size(); ++i) {
    sy[i] = kOffset[0] + kForward[0][0] * sr[i] + kForward[0][1] * sg[i] +
            kForward[0][2] * sb[i];
  }
  return y;
}

}  // namespace srfuse
