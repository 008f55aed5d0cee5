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

#include "prep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "error.hpp"
#include "resample.hpp"

namespace srfuse::prep {
namespace {

Plane blur_plane(const Plane& src, const std::vector<double>& taps) {
  const int radius = static_cast<int>(taps.size() / 2);
  const int w = src.width();
  const int h = src.height();
  Plane tmp(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        acc += taps[t + radius] * src.at(std::clamp(x + t, 0, w - 1), y);
      }
      tmp.at(x, y) = acc;
    }
  }
  Plane out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int t = -radius; t <= radius; ++t) {
        acc += taps[t + radius] * tmp.at(x, std::clamp(y + t, 0, h - 1));
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

void apply_noise(RgbImage& img, const Rect& region, const Distortion& d,
                 SplitMix64& rng) {
  // Cells sit on the absolute image grid, so a block that is a multiple of
  // the scale lines up with whole LR pixels.
  const int block = std::max(1, d.block);
  const int cx0 = region.x / block;
  const int cy0 = region.y / block;
  const int cells_x = (region.x + region.width - 1) / block - cx0 + 1;
  const int cells_y = (region.y + region.height - 1) / block - cy0 + 1;
  for (int c = 0; c < 3; ++c) {
    std::vector<double> offsets(static_cast<std::size_t>(cells_x) * cells_y);
    for (double& o : offsets) o = rng.uniform(-d.strength, d.strength);
    Plane& p = img.channel(c);
    for (int y = region.y; y < region.y + region.height; ++y) {
      for (int x = region.x; x < region.x + region.width; ++x) {
        const double o =
            offsets[static_cast<std::size_t>(y / block - cy0) * cells_x +
                    (x / block - cx0)];
        double& v = p.at(x, y);
        v = std::clamp(v + o, 0.0, 255.0);
      }
    }
  }
}

void copy_region(const RgbImage& src, RgbImage& dst, const Rect& region) {
  for (int c = 0; c < 3; ++c) {
    for (int y = region.y; y < region.y + region.height; ++y) {
      for (int x = region.x; x < region.x + region.width; ++x) {
        dst.channel(c).at(x, y) = src.channel(c).at(x, y);
      }
    }
  }
}

}  // namespace

bool is_divisible(const RgbImage& hr, int scale) {
  return hr.width() % scale == 0 && hr.height() % scale == 0;
}

RgbImage crop_to_multiple(const RgbImage& hr, int scale) {
  if (scale < 1) throw_invalid("scale must be >= 1");
  const int w = hr.width() / scale * scale;
  const int h = hr.height() / scale * scale;
  if (w < 1 || h < 1) {
    throw_invalid("image " + std::to_string(hr.width()) + "x" +
                  std::to_string(hr.height()) + " is smaller than scale " +
                  std::to_string(scale));
  }
  if (w == hr.width() && h == hr.height()) return hr;
  return crop(hr, centered_rect(hr.width(), hr.height(), w, h));
}

RgbImage make_lr(const RgbImage& hr, int scale) {
  return downscale_rgb(crop_to_multiple(hr, scale), scale);
}

RgbImage make_telephoto(const RgbImage& hr, const PrepSpec& spec) {
  if (!std::isfinite(spec.zoom_factor) || spec.zoom_factor < 1.0) {
    throw_invalid("zoom_factor must be >= 1");
  }
  RgbImage tele = crop(hr, spec.crop_region);
  if (spec.zoom_factor == 1.0) return tele;
  const int w = static_cast<int>(std::lround(tele.width() * spec.zoom_factor));
  const int h =
      static_cast<int>(std::lround(tele.height() * spec.zoom_factor));
  return resample_rgb(tele, w, h);
}

std::vector<Rect> telephoto_regions(int width, int height, int crop_width,
                                    int crop_height) {
  const Rect center = centered_rect(width, height, crop_width, crop_height);
  const int right = width - crop_width;
  const int bottom = height - crop_height;
  return {center,
          Rect{0, 0, crop_width, crop_height},
          Rect{right, 0, crop_width, crop_height},
          Rect{0, bottom, crop_width, crop_height},
          Rect{right, bottom, crop_width, crop_height}};
}

RgbImage gaussian_blur(const RgbImage& img, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw_invalid("blur sigma must be positive");
  }
  const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
  std::vector<double> taps(2 * radius + 1);
  double total = 0.0;
  for (int t = -radius; t <= radius; ++t) {
    taps[t + radius] = std::exp(-(t * t) / (2.0 * sigma * sigma));
    total += taps[t + radius];
  }
  for (double& t : taps) t /= total;
  return RgbImage(blur_plane(img.r, taps), blur_plane(img.g, taps),
                  blur_plane(img.b, taps));
}

SyntheticSet make_synthetic_candidates(const RgbImage& gt, int n,
                                       const SyntheticSpec& spec) {
  if (n < 2) throw_invalid("synthetic candidate sets need n >= 2");
  if (spec.distortions.size() != 1 &&
      spec.distortions.size() != static_cast<std::size_t>(n)) {
    throw_invalid("need 1 or " + std::to_string(n) + " distortions, got " +
                  std::to_string(spec.distortions.size()));
  }
  if (spec.scale < 1 || !is_divisible(gt, spec.scale)) {
    throw_dimension("ground truth is not divisible by scale " +
                    std::to_string(spec.scale));
  }
  // Band edges fall on LR pixel boundaries, so each LR pixel sees at most
  // one distorted candidate.
  const int lr_width = gt.width() / spec.scale;
  if (lr_width < n) {
    throw_invalid("cannot split width " + std::to_string(gt.width()) +
                  " into " + std::to_string(n) + " disjoint regions of whole "
                  "LR pixels");
  }

  SyntheticSet out{fusion::CandidateSet{make_lr(gt, spec.scale), {},
                                        spec.scale},
                   {}};
  for (int i = 0; i < n; ++i) {
    const int x0 = spec.scale * (lr_width * i / n);
    const int x1 = spec.scale * (lr_width * (i + 1) / n);
    const Rect region{x0, 0, x1 - x0, gt.height()};
    const Distortion& d =
        spec.distortions[spec.distortions.size() == 1 ? 0 : i];
    if (!std::isfinite(d.strength) || d.strength < 0.0) {
      throw_invalid("distortion strength must be finite and >= 0");
    }

    RgbImage cand = gt;
    if (d.strength > 0.0) {
      switch (d.kind) {
        case DistortionKind::kNone:
          break;
        case DistortionKind::kBlur:
          copy_region(gaussian_blur(gt, d.strength), cand, region);
          break;
        case DistortionKind::kNoise: {
          SplitMix64 rng(spec.seed ^ (0x5851f42d4c957f2dULL *
                                      static_cast<std::uint64_t>(i + 1)));
          apply_noise(cand, region, d, rng);
          break;
        }
      }
    }
    out.set.candidates.push_back(std::move(cand));
    out.regions.push_back(region);
  }
  return out;
}

RgbImage make_synthetic_gt(int width, int height, std::uint64_t seed) {
  SplitMix64 rng(seed);
  struct Wave {
    double fx, fy, phase, amp[3];
  };
  std::vector<Wave> waves(6);
  for (auto& wv : waves) {
    const double period = rng.uniform(5.0, 40.0);
    const double angle = rng.uniform(0.0, std::numbers::pi);
    wv.fx = std::cos(angle) / period;
    wv.fy = std::sin(angle) / period;
    wv.phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
    for (double& a : wv.amp) a = rng.uniform(4.0, 14.0);
  }
  struct Disk {
    double cx, cy, radius, level[3];
  };
  std::vector<Disk> disks(3);
  for (auto& dk : disks) {
    dk.cx = rng.uniform(0.0, width);
    dk.cy = rng.uniform(0.0, height);
    dk.radius = rng.uniform(0.1, 0.3) * std::min(width, height);
    for (double& l : dk.level) l = rng.uniform(-50.0, 50.0);
  }
  double base[3];
  for (double& b : base) b = rng.uniform(100.0, 156.0);

  RgbImage img(width, height);
  for (int c = 0; c < 3; ++c) {
    Plane& p = img.channel(c);
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        double v = base[c];
        for (const auto& wv : waves) {
          v += wv.amp[c] * std::sin(2.0 * std::numbers::pi *
                                        (wv.fx * x + wv.fy * y) +
                                    wv.phase);
        }
        for (const auto& dk : disks) {
          const double r = std::hypot(x + 0.5 - dk.cx, y + 0.5 - dk.cy);
          // Soft edge about two pixels wide.
          const double inside = 0.5 - 0.5 * std::tanh((r - dk.radius) / 1.0);
          v += dk.level[c] * inside;
        }
        p.at(x, y) = std::clamp(v, 0.0, 255.0);
      }
    }
  }
  return img;
}

}  // namespace srfuse::prep
