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

#include "fusion.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <filesystem>

#include "color.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "png_io.hpp"
#include "resample.hpp"

namespace srfuse::fusion {
namespace {

std::string dims(int w, int h) {
  return std::to_string(w) + "x" + std::to_string(h);
}

void require_same_size(std::span<const RgbImage> candidates) {
  if (candidates.empty()) throw_invalid("at least one candidate is required");
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (!candidates[i].same_size(candidates[0])) {
      throw_dimension("candidate " + std::to_string(i + 1) + " is " +
                      dims(candidates[i].width(), candidates[i].height()) +
                      ", expected " +
                      dims(candidates[0].width(), candidates[0].height()));
    }
  }
}

void require_masks_match(std::span<const RgbImage> candidates,
                         std::span<const WeightMask> masks) {
  if (masks.size() != candidates.size()) {
    throw_invalid("got " + std::to_string(masks.size()) + " masks for " +
                  std::to_string(candidates.size()) + " candidates");
  }
  for (const auto& m : masks) {
    if (m.weights.width() != candidates[0].width() ||
        m.weights.height() != candidates[0].height()) {
      throw_dimension("weight mask size does not match candidates");
    }
  }
}

bool valid_param(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void FusionConfig::validate() const {
  if (!valid_param(beta)) throw_invalid("beta must be finite and >= 0");
  if (!valid_param(beta_g)) throw_invalid("beta_g must be finite and >= 0");
  if (mask_beta && !valid_param(*mask_beta)) {
    throw_invalid("mask_beta must be finite and >= 0");
  }
  if (scale < 1) throw_invalid("scale must be >= 1");
  if (!(weight_epsilon > 0.0) || !(weight_epsilon <= 1.0)) {
    throw_invalid("weight_epsilon must be in (0, 1]");
  }
}

void validate(const CandidateSet& set) {
  if (set.scale < 1) throw_invalid("scale must be >= 1");
  require_same_size(set.candidates);
  const int want_w = set.lr_input.width() * set.scale;
  const int want_h = set.lr_input.height() * set.scale;
  const auto& c = set.candidates.front();
  if (c.width() != want_w || c.height() != want_h) {
    throw_dimension("candidates are " + dims(c.width(), c.height()) +
                    " but the LR input " +
                    dims(set.lr_input.width(), set.lr_input.height()) +
                    " x" + std::to_string(set.scale) + " is " +
                    dims(want_w, want_h));
  }
}

// The crop target also includes lr * scale, so candidates padded past the
// expected size are trimmed back to it.
CandidateSet make_candidate_set(RgbImage lr_input,
                                std::vector<RgbImage> candidates, int scale,
                                CropPolicy policy) {
  if (scale < 1) throw_invalid("scale must be >= 1");
  if (candidates.empty()) throw_invalid("at least one candidate is required");
  if (policy == CropPolicy::kCenterCrop) {
    int w = lr_input.width() * scale;
    int h = lr_input.height() * scale;
    for (const auto& c : candidates) {
      w = std::min(w, c.width());
      h = std::min(h, c.height());
    }
    for (auto& c : candidates) {
      if (c.width() != w || c.height() != h) {
        c = crop(c, centered_rect(c.width(), c.height(), w, h));
      }
    }
  }
  CandidateSet set{std::move(lr_input), std::move(candidates), scale};
  validate(set);
  return set;
}

RgbImage naive_fuse(std::span<const RgbImage> candidates) {
  require_same_size(candidates);
  RgbImage out(candidates[0].width(), candidates[0].height());
  const double n = static_cast<double>(candidates.size());
  for (int c = 0; c < 3; ++c) {
    auto dst = out.channel(c).samples();
    for (const auto& cand : candidates) {
      const auto src = cand.channel(c).samples();
      for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
    for (double& v : dst) v /= n;
  }
  return out;
}

namespace {

void check_mask_inputs(const RgbImage& candidate, const RgbImage& lr_input,
                       double beta, int scale) {
  if (!valid_param(beta)) throw_invalid("beta must be finite and >= 0");
  if (scale < 1) throw_invalid("scale must be >= 1");
  if (candidate.width() != lr_input.width() * scale ||
      candidate.height() != lr_input.height() * scale) {
    throw_dimension("candidate " + dims(candidate.width(), candidate.height()) +
                    " is not the LR input " +
                    dims(lr_input.width(), lr_input.height()) + " x" +
                    std::to_string(scale));
  }
}

Plane field_unchecked(const RgbImage& candidate, const RgbImage& lr_input,
                      double beta) {
  const Plane down = bicubic_resample(luma(candidate), lr_input.width(),
                                      lr_input.height());
  const Plane lr_y = luma(lr_input);
  Plane low(lr_input.width(), lr_input.height());
  const auto d = down.samples();
  const auto l = lr_y.samples();
  auto out = low.samples();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double diff = (d[i] - l[i]) / 255.0;
    out[i] = std::exp(-beta * diff * diff);
  }
  return low;
}

}  // namespace

Plane consistency_field(const RgbImage& candidate, const RgbImage& lr_input,
                        double beta, int scale) {
  check_mask_inputs(candidate, lr_input, beta, scale);
  return field_unchecked(candidate, lr_input, beta);
}

WeightMask adaptive_weight_mask(const RgbImage& candidate,
                                const RgbImage& lr_input, double beta,
                                int scale, double weight_epsilon,
                                int source_index) {
  check_mask_inputs(candidate, lr_input, beta, scale);
  if (beta == 0.0) {
    return WeightMask{Plane(candidate.width(), candidate.height(), 1.0),
                      source_index};
  }
  Plane up = bicubic_resample(field_unchecked(candidate, lr_input, beta),
                              candidate.width(), candidate.height());
  for (double& v : up.samples()) v = std::clamp(v, weight_epsilon, 1.0);
  return WeightMask{std::move(up), source_index};
}

RgbImage weighted_fuse(std::span<const RgbImage> candidates,
                       std::span<const double> global,
                       std::span<const WeightMask> masks) {
  require_same_size(candidates);
  require_masks_match(candidates, masks);
  if (global.size() != candidates.size()) {
    throw_invalid("global weight count does not match candidate count");
  }
  const int w = candidates[0].width();
  const int h = candidates[0].height();
  const std::size_t n = candidates.size();
  RgbImage out(w, h);
  parallel_for(0, h, [&](std::ptrdiff_t y) {
    const std::size_t base = static_cast<std::size_t>(y) * w;
    for (std::size_t p = base; p < base + w; ++p) {
      double total = 0.0;
      double acc[3] = {0.0, 0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i) {
        const double v = global[i] * masks[i].weights.samples()[p];
        total += v;
        for (int c = 0; c < 3; ++c) {
          acc[c] += v * candidates[i].channel(c).samples()[p];
        }
      }
      for (int c = 0; c < 3; ++c) out.channel(c).samples()[p] = acc[c] / total;
    }
  });
  return out;
}

RgbImage masked_fuse(std::span<const RgbImage> candidates,
                     std::span<const WeightMask> masks) {
  const std::vector<double> ones(candidates.size(), 1.0);
  return weighted_fuse(candidates, ones, masks);
}

std::vector<BinaryMask> binary_masks(std::span<const WeightMask> masks) {
  if (masks.empty()) throw_invalid("binary_masks needs at least one mask");
  const Plane& first = masks[0].weights;
  for (const auto& m : masks) {
    if (!m.weights.same_size(first)) {
      throw_dimension("weight masks differ in size");
    }
  }
  std::vector<BinaryMask> out;
  out.reserve(masks.size());
  for (const auto& m : masks) {
    out.push_back(BinaryMask{Plane(first.width(), first.height(), 0.0),
                             m.source_index});
  }
  for (std::size_t p = 0; p < first.size(); ++p) {
    std::size_t best = 0;
    double best_w = masks[0].weights.samples()[p];
    for (std::size_t i = 1; i < masks.size(); ++i) {
      const double w = masks[i].weights.samples()[p];
      if (w > best_w) {
        best_w = w;
        best = i;
      }
    }
    out[best].mask.samples()[p] = 1.0;
  }
  return out;
}

std::vector<double> mask_areas(std::span<const BinaryMask> masks) {
  std::vector<double> areas;
  areas.reserve(masks.size());
  for (const auto& m : masks) {
    double a = 0.0;
    for (double v : m.mask.samples()) a += v;
    areas.push_back(a);
  }
  return areas;
}

GlobalWeights global_weights(std::span<const double> areas, double beta_g) {
  if (!valid_param(beta_g)) throw_invalid("beta_g must be finite and >= 0");
  if (areas.empty()) throw_invalid("global_weights needs at least one area");
  const double max_area = *std::max_element(areas.begin(), areas.end());
  GlobalWeights gw;
  for (double a : areas) {
    // Adding 0.0 turns the -0.0 of beta_g = 0 into +0.0.
    const double lw = beta_g * (a - max_area) + 0.0;
    gw.log_weights.push_back(lw);
    gw.weights.push_back(std::max(std::exp(lw), DBL_MIN));
  }
  return gw;
}

GlobalWeights global_weights(std::span<const BinaryMask> masks,
                             double beta_g) {
  const auto areas = mask_areas(masks);
  return global_weights(areas, beta_g);
}

MaskBundle compute_masks(const CandidateSet& set, const FusionConfig& config) {
  config.validate();
  validate(set);
  MaskBundle bundle;
  for (std::size_t i = 0; i < set.candidates.size(); ++i) {
    bundle.weights.push_back(adaptive_weight_mask(
        set.candidates[i], set.lr_input, config.beta, set.scale,
        config.weight_epsilon, static_cast<int>(i)));
  }
  if (config.effective_mask_beta() == config.beta) {
    bundle.binary = binary_masks(bundle.weights);
  } else {
    std::vector<WeightMask> selection;
    for (std::size_t i = 0; i < set.candidates.size(); ++i) {
      selection.push_back(adaptive_weight_mask(
          set.candidates[i], set.lr_input, config.effective_mask_beta(),
          set.scale, config.weight_epsilon, static_cast<int>(i)));
    }
    bundle.binary = binary_masks(selection);
  }
  bundle.areas = mask_areas(bundle.binary);
  return bundle;
}

FusionReport fuse_with_masks(const CandidateSet& set, const MaskBundle& masks,
                             const FusionConfig& config) {
  config.validate();
  std::vector<double> areas = masks.areas;
  if (config.area_as_fraction) {
    const double pixels = static_cast<double>(set.candidates.front().r.size());
    for (double& a : areas) a /= pixels;
  }
  GlobalWeights gw = global_weights(areas, config.beta_g);
  FusionReport report{weighted_fuse(set.candidates, gw.weights, masks.weights),
                      std::move(gw.weights),
                      std::move(gw.log_weights),
                      masks.areas,
                      {},
                      {}};
  if (config.export_masks) {
    report.weight_masks = masks.weights;
    report.binary_masks = masks.binary;
  }
  return report;
}

FusionReport fuse(const CandidateSet& set, const FusionConfig& config) {
  return fuse_with_masks(set, compute_masks(set, config), config);
}

std::vector<std::string> export_masks(const FusionReport& report,
                                      const std::string& dir,
                                      const std::string& stem) {
  if (report.weight_masks.empty() || report.binary_masks.empty()) {
    throw_invalid("report carries no masks; enable export_masks");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw_io("cannot create directory '" + dir + "': " + ec.message());
  std::vector<std::string> written;
  auto scaled = [](const Plane& p) {
    Plane out = p;
    for (double& v : out.samples()) v *= 255.0;
    return out;
  };
  for (std::size_t i = 0; i < report.weight_masks.size(); ++i) {
    const std::string k = std::to_string(i + 1);
    const auto wpath =
        (std::filesystem::path(dir) / (stem + "_weight" + k + ".png")).string();
    const auto bpath =
        (std::filesystem::path(dir) / (stem + "_binary" + k + ".png")).string();
    write_png_gray(scaled(report.weight_masks[i].weights), wpath);
    write_png_gray(scaled(report.binary_masks[i].mask), bpath);
    written.push_back(wpath);
    written.push_back(bpath);
  }
  return written;
}

}  // namespace srfuse::fusion
