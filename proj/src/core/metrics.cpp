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

#include "metrics.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "color.hpp"
#include "error.hpp"
#include "parallel.hpp"

namespace srfuse::metrics {
namespace {

void require_same(const Plane& a, const Plane& b) {
  if (!a.same_size(b)) {
    throw_dimension("image sizes differ: " + std::to_string(a.width()) + "x" +
                    std::to_string(a.height()) + " vs " +
                    std::to_string(b.width()) + "x" +
                    std::to_string(b.height()));
  }
}

std::vector<double> gaussian_taps(int window, double sigma) {
  std::vector<double> taps(window);
  const double c = (window - 1) / 2.0;
  double total = 0.0;
  for (int i = 0; i < window; ++i) {
    const double d = i - c;
    taps[i] = std::exp(-d * d / (2.0 * sigma * sigma));
    total += taps[i];
  }
  for (double& t : taps) t /= total;
  return taps;
}

// Valid-region separable filtering of `src` (w x h) with `taps`; the result
// is (w - n + 1) x (h - n + 1), row-major.
std::vector<double> filter_valid(const std::vector<double>& src, int w, int h,
                                 const std::vector<double>& taps) {
  const int n = static_cast<int>(taps.size());
  const int ow = w - n + 1;
  const int oh = h - n + 1;
  std::vector<double> horiz(static_cast<std::size_t>(h) * ow);
  parallel_for(0, h, [&](std::ptrdiff_t y) {
    const double* row = src.data() + static_cast<std::size_t>(y) * w;
    double* dst = horiz.data() + static_cast<std::size_t>(y) * ow;
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < n; ++t) acc += taps[t] * row[x + t];
      dst[x] = acc;
    }
  });
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  parallel_for(0, oh, [&](std::ptrdiff_t y) {
    double* dst = out.data() + static_cast<std::size_t>(y) * ow;
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int t = 0; t < n; ++t) {
        acc += taps[t] * horiz[static_cast<std::size_t>(y + t) * ow + x];
      }
      dst[x] = acc;
    }
  });
  return out;
}

}  // namespace

double mse(const Plane& a, const Plane& b) {
  require_same(a, b);
  const auto sa = a.samples();
  const auto sb = b.samples();
  double acc = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double d = sa[i] - sb[i];
    acc += d * d;
  }
  return acc / static_cast<double>(sa.size());
}

double psnr(const Plane& a, const Plane& b, double peak) {
  const double e = mse(a, b);
  if (e == 0.0) return kPsnrInfinity;
  return 10.0 * std::log10(peak * peak / e);
}

double ssim(const Plane& a, const Plane& b, const SsimParams& params) {
  require_same(a, b);
  const int w = a.width();
  const int h = a.height();
  if (w < params.window || h < params.window) {
    throw_invalid("SSIM needs images of at least " +
                  std::to_string(params.window) + "x" +
                  std::to_string(params.window) + ", got " +
                  std::to_string(w) + "x" + std::to_string(h));
  }
  const auto taps = gaussian_taps(params.window, params.sigma);
  const auto sa = a.samples();
  const auto sb = b.samples();
  std::vector<double> x(sa.begin(), sa.end());
  std::vector<double> y(sb.begin(), sb.end());
  std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mu_x = filter_valid(x, w, h, taps);
  const auto mu_y = filter_valid(y, w, h, taps);
  const auto e_xx = filter_valid(xx, w, h, taps);
  const auto e_yy = filter_valid(yy, w, h, taps);
  const auto e_xy = filter_valid(xy, w, h, taps);

  const double c1 = (params.k1 * params.dynamic_range) *
                    (params.k1 * params.dynamic_range);
  const double c2 = (params.k2 * params.dynamic_range) *
                    (params.k2 * params.dynamic_range);
  double acc = 0.0;
  for (std::size_t i = 0; i < mu_x.size(); ++i) {
    const double mx = mu_x[i];
    const double my = mu_y[i];
    const double mxy = mx * my;
    const double var_x = e_xx[i] - mx * mx;
    const double var_y = e_yy[i] - my * my;
    const double cov = e_xy[i] - mxy;
    const double num = (2.0 * mxy + c1) * (2.0 * cov + c2);
    const double den = (mx * mx + my * my + c1) * (var_x + var_y + c2);
    acc += num / den;
  }
  return acc / static_cast<double>(mu_x.size());
}

double psnr_y(const RgbImage& a, const RgbImage& b) {
  if (!a.same_size(b)) require_same(a.r, b.r);
  return psnr(luma(a), luma(b));
}

double ssim_y(const RgbImage& a, const RgbImage& b) {
  if (!a.same_size(b)) require_same(a.r, b.r);
  return ssim(luma(a), luma(b));
}

MetricResult evaluate(const RgbImage& a, const RgbImage& b) {
  if (!a.same_size(b)) require_same(a.r, b.r);
  const Plane ya = luma(a);
  const Plane yb = luma(b);
  return MetricResult{psnr(ya, yb), ssim(ya, yb)};
}

}  // namespace srfuse::metrics
