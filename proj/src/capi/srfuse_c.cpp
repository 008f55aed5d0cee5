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

#include "srfuse/srfuse.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "color.hpp"
#include "dataset.hpp"
#include "error.hpp"
#include "fusion.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "png_io.hpp"
#include "prep.hpp"
#include "resample.hpp"
#include "sweep.hpp"

struct srfuse_image {
  srfuse::RgbImage img;
};

struct srfuse_report {
  srfuse::fusion::FusionReport report;
  srfuse_image fused;
};

struct srfuse_dataset {
  srfuse::dataset::Manifest manifest;
};

struct srfuse_sweep {
  srfuse::sweep::SweepResult result;
};

struct srfuse_prep_result {
  srfuse::dataset::PrepSummary summary;
};

namespace {

thread_local std::string g_last_error;

srfuse_status fail(srfuse_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

srfuse_status to_status(srfuse::ErrorCode code) {
  switch (code) {
    case srfuse::ErrorCode::kInvalidArgument:
      return SRFUSE_ERR_INVALID_ARGUMENT;
    case srfuse::ErrorCode::kIo:
      return SRFUSE_ERR_IO;
    case srfuse::ErrorCode::kDimensionMismatch:
      return SRFUSE_ERR_DIMENSION;
    case srfuse::ErrorCode::kParse:
      return SRFUSE_ERR_PARSE;
  }
  return SRFUSE_ERR_INTERNAL;
}

// Runs `fn` and converts any exception into a status code.
template <typename Fn>
srfuse_status guarded(Fn&& fn) {
  try {
    fn();
    return SRFUSE_OK;
  } catch (const srfuse::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SRFUSE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SRFUSE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SRFUSE_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) srfuse::throw_invalid(what);
}

srfuse_image* wrap(srfuse::RgbImage img) {
  return new srfuse_image{std::move(img)};
}

std::vector<srfuse::RgbImage> collect(const srfuse_image* const* cands,
                                      size_t count) {
  require(cands != nullptr || count == 0, "candidate array is NULL");
  std::vector<srfuse::RgbImage> out;
  out.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    require(cands[i] != nullptr, "candidate handle is NULL");
    out.push_back(cands[i]->img);
  }
  return out;
}

srfuse::fusion::FusionConfig to_config(const srfuse_fusion_config& c) {
  srfuse::fusion::FusionConfig cfg;
  cfg.beta = c.beta;
  cfg.beta_g = c.beta_g;
  if (c.mask_beta >= 0.0) cfg.mask_beta = c.mask_beta;
  cfg.area_as_fraction = c.area_as_fraction != 0;
  cfg.scale = c.scale;
  cfg.weight_epsilon = c.weight_epsilon;
  require(c.crop_policy == SRFUSE_CROP_CENTER ||
              c.crop_policy == SRFUSE_CROP_ERROR,
          "unknown crop policy");
  cfg.crop_policy = c.crop_policy == SRFUSE_CROP_ERROR
                        ? srfuse::fusion::CropPolicy::kError
                        : srfuse::fusion::CropPolicy::kCenterCrop;
  cfg.export_masks = c.export_masks != 0;
  cfg.validate();
  return cfg;
}

srfuse::prep::Distortion to_distortion(const srfuse_distortion& d) {
  srfuse::prep::Distortion out;
  switch (d.kind) {
    case SRFUSE_DISTORT_NONE:
      out.kind = srfuse::prep::DistortionKind::kNone;
      break;
    case SRFUSE_DISTORT_BLUR:
      out.kind = srfuse::prep::DistortionKind::kBlur;
      break;
    case SRFUSE_DISTORT_NOISE:
      out.kind = srfuse::prep::DistortionKind::kNoise;
      break;
    default:
      srfuse::throw_invalid("unknown distortion kind");
  }
  out.strength = d.strength;
  require(d.block >= 1, "distortion block must be >= 1");
  out.block = d.block;
  return out;
}

void fill_record(const srfuse::sweep::SweepRecord& r, srfuse_sweep_record* out) {
  out->image_id = r.image_id.c_str();
  out->beta = r.beta;
  out->beta_g = r.beta_g;
  out->n_fused = r.n_fused;
  out->psnr_y = r.psnr_y;
  out->ssim = r.ssim;
}

}  // namespace

extern "C" {

const char* srfuse_version(void) { return "1.0.0"; }

const char* srfuse_last_error(void) { return g_last_error.c_str(); }

const char* srfuse_status_name(srfuse_status status) {
  switch (status) {
    case SRFUSE_OK:
      return "ok";
    case SRFUSE_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case SRFUSE_ERR_IO:
      return "i/o error";
    case SRFUSE_ERR_DIMENSION:
      return "dimension mismatch";
    case SRFUSE_ERR_PARSE:
      return "parse error";
    case SRFUSE_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void srfuse_set_threads(int n) { srfuse::set_thread_count(n); }

int srfuse_get_threads(void) { return srfuse::thread_count(); }

srfuse_status srfuse_image_create(int width, int height, double fill,
                                  srfuse_image** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = wrap(srfuse::RgbImage(width, height, fill));
  });
}

srfuse_status srfuse_image_from_planes(const double* r, const double* g,
                                       const double* b, int width, int height,
                                       srfuse_image** out) {
  return guarded([&] {
    require(out != nullptr && r && g && b, "NULL argument");
    require(width >= 1 && height >= 1, "image dimensions must be positive");
    const size_t n = static_cast<size_t>(width) * height;
    *out = wrap(srfuse::RgbImage(
        srfuse::Plane(width, height, std::vector<double>(r, r + n)),
        srfuse::Plane(width, height, std::vector<double>(g, g + n)),
        srfuse::Plane(width, height, std::vector<double>(b, b + n))));
  });
}

srfuse_status srfuse_image_from_rgb8(const uint8_t* pixels, int width,
                                     int height, size_t stride,
                                     srfuse_image** out) {
  return guarded([&] {
    require(out != nullptr && pixels != nullptr, "NULL argument");
    require(width >= 1 && height >= 1, "image dimensions must be positive");
    require(stride >= static_cast<size_t>(width) * 3, "stride too small");
    srfuse::RgbImage img(width, height);
    for (int y = 0; y < height; ++y) {
      const uint8_t* row = pixels + y * stride;
      for (int x = 0; x < width; ++x) {
        img.r.at(x, y) = row[3 * x];
        img.g.at(x, y) = row[3 * x + 1];
        img.b.at(x, y) = row[3 * x + 2];
      }
    }
    *out = wrap(std::move(img));
  });
}

srfuse_status srfuse_image_clone(const srfuse_image* img, srfuse_image** out) {
  return guarded([&] {
    require(img != nullptr && out != nullptr, "NULL argument");
    *out = wrap(img->img);
  });
}

void srfuse_image_destroy(srfuse_image* img) { delete img; }

int srfuse_image_width(const srfuse_image* img) {
  return img ? img->img.width() : 0;
}

int srfuse_image_height(const srfuse_image* img) {
  return img ? img->img.height() : 0;
}

srfuse_status srfuse_image_get_planes(const srfuse_image* img, double* r,
                                      double* g, double* b) {
  return guarded([&] {
    require(img != nullptr, "image handle is NULL");
    double* dst[3] = {r, g, b};
    for (int c = 0; c < 3; ++c) {
      if (!dst[c]) continue;
      const auto s = img->img.channel(c).samples();
      std::copy(s.begin(), s.end(), dst[c]);
    }
  });
}

srfuse_status srfuse_image_get_luma(const srfuse_image* img, double* y) {
  return guarded([&] {
    require(img != nullptr && y != nullptr, "NULL argument");
    const auto l = srfuse::luma(img->img);
    std::copy(l.samples().begin(), l.samples().end(), y);
  });
}

srfuse_status srfuse_image_load_png(const char* path, srfuse_image** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "NULL argument");
    *out = wrap(srfuse::read_png(path));
  });
}

srfuse_status srfuse_image_save_png(const srfuse_image* img, const char* path) {
  return guarded([&] {
    require(img != nullptr && path != nullptr, "NULL argument");
    srfuse::write_png(img->img, path);
  });
}

srfuse_status srfuse_image_resample(const srfuse_image* img, int width,
                                    int height, srfuse_image** out) {
  return guarded([&] {
    require(img != nullptr && out != nullptr, "NULL argument");
    *out = wrap(srfuse::resample_rgb(img->img, width, height));
  });
}

void srfuse_fusion_config_default(srfuse_fusion_config* config) {
  if (!config) return;
  const srfuse::fusion::FusionConfig d;
  config->beta = d.beta;
  config->beta_g = d.beta_g;
  config->mask_beta = -1.0;
  config->area_as_fraction = 0;
  config->scale = d.scale;
  config->weight_epsilon = d.weight_epsilon;
  config->crop_policy = SRFUSE_CROP_CENTER;
  config->export_masks = 0;
}

srfuse_status srfuse_naive_fuse(const srfuse_image* const* cands, size_t count,
                                srfuse_image** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    const auto images = collect(cands, count);
    *out = wrap(srfuse::fusion::naive_fuse(images));
  });
}

srfuse_status srfuse_fuse(const srfuse_image* lr,
                          const srfuse_image* const* cands, size_t count,
                          const srfuse_fusion_config* config,
                          srfuse_report** out) {
  return guarded([&] {
    require(lr != nullptr && out != nullptr, "NULL argument");
    srfuse_fusion_config c;
    srfuse_fusion_config_default(&c);
    if (config) c = *config;
    const auto cfg = to_config(c);
    auto set = srfuse::fusion::make_candidate_set(
        lr->img, collect(cands, count), cfg.scale, cfg.crop_policy);
    auto report = srfuse::fusion::fuse(set, cfg);
    srfuse_image fused{report.fused};
    *out = new srfuse_report{std::move(report), std::move(fused)};
  });
}

void srfuse_report_destroy(srfuse_report* report) { delete report; }

const srfuse_image* srfuse_report_fused(const srfuse_report* r) {
  return r ? &r->fused : nullptr;
}

size_t srfuse_report_count(const srfuse_report* r) {
  return r ? r->report.global_weights.size() : 0;
}

srfuse_status srfuse_report_global_weight(const srfuse_report* r, size_t index,
                                          double* weight, double* log_weight) {
  return guarded([&] {
    require(r != nullptr, "report handle is NULL");
    require(index < r->report.global_weights.size(), "index out of range");
    if (weight) *weight = r->report.global_weights[index];
    if (log_weight) *log_weight = r->report.log_global_weights[index];
  });
}

srfuse_status srfuse_report_mask_area(const srfuse_report* r, size_t index,
                                      double* area) {
  return guarded([&] {
    require(r != nullptr && area != nullptr, "NULL argument");
    require(index < r->report.mask_areas.size(), "index out of range");
    *area = r->report.mask_areas[index];
  });
}

srfuse_status srfuse_report_weight_mask(const srfuse_report* r, size_t index,
                                        double* out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "NULL argument");
    require(!r->report.weight_masks.empty(), "masks were not exported");
    require(index < r->report.weight_masks.size(), "index out of range");
    const auto s = r->report.weight_masks[index].weights.samples();
    std::copy(s.begin(), s.end(), out);
  });
}

srfuse_status srfuse_report_binary_mask(const srfuse_report* r, size_t index,
                                        double* out) {
  return guarded([&] {
    require(r != nullptr && out != nullptr, "NULL argument");
    require(!r->report.binary_masks.empty(), "masks were not exported");
    require(index < r->report.binary_masks.size(), "index out of range");
    const auto s = r->report.binary_masks[index].mask.samples();
    std::copy(s.begin(), s.end(), out);
  });
}

srfuse_status srfuse_report_export_masks(const srfuse_report* r,
                                         const char* dir, const char* stem) {
  return guarded([&] {
    require(r != nullptr && dir != nullptr && stem != nullptr,
            "NULL argument");
    srfuse::fusion::export_masks(r->report, dir, stem);
  });
}

srfuse_status srfuse_metrics(const srfuse_image* a, const srfuse_image* b,
                             double* psnr_y, double* ssim) {
  return guarded([&] {
    require(a != nullptr && b != nullptr, "NULL argument");
    if (!a->img.same_size(b->img)) {
      srfuse::throw_dimension(
          "image sizes differ: " + std::to_string(a->img.width()) + "x" +
          std::to_string(a->img.height()) + " vs " +
          std::to_string(b->img.width()) + "x" +
          std::to_string(b->img.height()));
    }
    const auto m = srfuse::metrics::evaluate(a->img, b->img);
    if (psnr_y) *psnr_y = m.psnr_y;
    if (ssim) *ssim = m.ssim;
  });
}

srfuse_status srfuse_make_lr(const srfuse_image* hr, int scale,
                             srfuse_image** out) {
  return guarded([&] {
    require(hr != nullptr && out != nullptr, "NULL argument");
    *out = wrap(srfuse::prep::make_lr(hr->img, scale));
  });
}

srfuse_status srfuse_make_telephoto(const srfuse_image* hr, int x, int y,
                                    int width, int height, double zoom,
                                    srfuse_image** out) {
  return guarded([&] {
    require(hr != nullptr && out != nullptr, "NULL argument");
    srfuse::prep::PrepSpec spec;
    spec.crop_region = srfuse::Rect{x, y, width, height};
    spec.zoom_factor = zoom;
    *out = wrap(srfuse::prep::make_telephoto(hr->img, spec));
  });
}

srfuse_status srfuse_make_synthetic_gt(int width, int height, uint64_t seed,
                                       srfuse_image** out) {
  return guarded([&] {
    require(out != nullptr, "output pointer is NULL");
    *out = wrap(srfuse::prep::make_synthetic_gt(width, height, seed));
  });
}

srfuse_status srfuse_make_synthetic_candidates(
    const srfuse_image* gt, int count, const srfuse_distortion* distortions,
    size_t distortion_count, int scale, uint64_t seed, srfuse_image** lr_out,
    srfuse_image** cands_out) {
  return guarded([&] {
    require(gt != nullptr && distortions != nullptr && lr_out != nullptr &&
                cands_out != nullptr,
            "NULL argument");
    srfuse::prep::SyntheticSpec spec;
    for (size_t i = 0; i < distortion_count; ++i) {
      spec.distortions.push_back(to_distortion(distortions[i]));
    }
    spec.scale = scale;
    spec.seed = seed;
    auto syn = srfuse::prep::make_synthetic_candidates(gt->img, count, spec);
    *lr_out = wrap(std::move(syn.set.lr_input));
    for (int i = 0; i < count; ++i) {
      cands_out[i] = wrap(std::move(syn.set.candidates[i]));
    }
  });
}

void srfuse_prep_options_default(srfuse_prep_options* options) {
  if (!options) return;
  const srfuse::dataset::PrepOptions d;
  *options = srfuse_prep_options{};
  options->generate_width = d.generate_width;
  options->generate_height = d.generate_height;
  options->scale = d.scale;
  options->tele_zoom = d.tele_zoom;
}

srfuse_status srfuse_prepare_dataset(const srfuse_prep_options* options,
                                     srfuse_prep_result** out) {
  return guarded([&] {
    require(options != nullptr && out != nullptr, "NULL argument");
    require(options->out_dir != nullptr, "out_dir is NULL");
    srfuse::dataset::PrepOptions o;
    if (options->hr_dir) o.hr_dir = options->hr_dir;
    o.generate = options->generate;
    o.generate_width = options->generate_width;
    o.generate_height = options->generate_height;
    o.out_dir = options->out_dir;
    o.scale = options->scale;
    o.seed = options->seed;
    o.synthetic_candidates = options->synthetic_candidates;
    if (options->distortions) {
      for (size_t i = 0; i < options->distortion_count; ++i) {
        o.distortions.push_back(to_distortion(options->distortions[i]));
      }
    }
    o.tele_width = options->tele_width;
    o.tele_height = options->tele_height;
    o.tele_zoom = options->tele_zoom;
    *out = new srfuse_prep_result{srfuse::dataset::prepare_dataset(o)};
  });
}

void srfuse_prep_result_destroy(srfuse_prep_result* r) { delete r; }

int srfuse_prep_result_images(const srfuse_prep_result* r) {
  return r ? r->summary.images : 0;
}

const char* srfuse_prep_result_manifest(const srfuse_prep_result* r) {
  return r ? r->summary.manifest_path.c_str() : nullptr;
}

size_t srfuse_prep_result_note_count(const srfuse_prep_result* r) {
  return r ? r->summary.notes.size() : 0;
}

const char* srfuse_prep_result_note(const srfuse_prep_result* r,
                                    size_t index) {
  if (!r || index >= r->summary.notes.size()) return nullptr;
  return r->summary.notes[index].c_str();
}

srfuse_status srfuse_dataset_open_manifest(const char* path,
                                           srfuse_dataset** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "NULL argument");
    *out = new srfuse_dataset{srfuse::dataset::read_manifest(path)};
  });
}

srfuse_status srfuse_dataset_scan_dir(const char* dir, int scale,
                                      srfuse_dataset** out) {
  return guarded([&] {
    require(dir != nullptr && out != nullptr, "NULL argument");
    require(scale >= 1, "scale must be >= 1");
    *out = new srfuse_dataset{srfuse::dataset::scan_directory(dir, scale)};
  });
}

void srfuse_dataset_destroy(srfuse_dataset* ds) { delete ds; }

size_t srfuse_dataset_size(const srfuse_dataset* ds) {
  return ds ? ds->manifest.entries.size() : 0;
}

int srfuse_dataset_scale(const srfuse_dataset* ds) {
  return ds ? ds->manifest.scale : 0;
}

const char* srfuse_dataset_id(const srfuse_dataset* ds, size_t index) {
  if (!ds || index >= ds->manifest.entries.size()) return nullptr;
  return ds->manifest.entries[index].id.c_str();
}

void srfuse_sweep_options_default(srfuse_sweep_options* options) {
  if (!options) return;
  const srfuse::sweep::SweepSpec d;
  *options = srfuse_sweep_options{};
  options->kind = SRFUSE_SWEEP_BETA;
  options->fixed_beta = d.fixed_beta;
  options->fixed_beta_g = d.fixed_beta_g;
  options->mask_beta = -1.0;
  options->crop_policy = SRFUSE_CROP_CENTER;
}

srfuse_status srfuse_sweep_run(const srfuse_dataset* ds,
                               const srfuse_sweep_options* options,
                               srfuse_sweep** out) {
  return guarded([&] {
    require(ds != nullptr && options != nullptr && out != nullptr,
            "NULL argument");
    srfuse::sweep::SweepSpec spec;
    if (options->betas) {
      spec.beta_grid.assign(options->betas,
                            options->betas + options->beta_count);
    }
    if (options->beta_gs) {
      spec.beta_g_grid.assign(options->beta_gs,
                              options->beta_gs + options->beta_g_count);
    }
    if (options->fuse_counts) {
      spec.fuse_counts.assign(options->fuse_counts,
                              options->fuse_counts + options->fuse_count_count);
    }
    spec.fixed_beta = options->fixed_beta;
    spec.fixed_beta_g = options->fixed_beta_g;
    if (options->mask_beta >= 0.0) spec.mask_beta = options->mask_beta;
    spec.area_as_fraction = options->area_as_fraction != 0;
    spec.validate();

    require(options->kind >= SRFUSE_SWEEP_BETA &&
                options->kind <= SRFUSE_SWEEP_FUSE_COUNT,
            "unknown sweep kind");
    require(options->crop_policy == SRFUSE_CROP_CENTER ||
                options->crop_policy == SRFUSE_CROP_ERROR,
            "unknown crop policy");
    const auto policy = options->crop_policy == SRFUSE_CROP_ERROR
                            ? srfuse::fusion::CropPolicy::kError
                            : srfuse::fusion::CropPolicy::kCenterCrop;

    std::vector<srfuse::sweep::SweepInput> inputs;
    for (const auto& e : ds->manifest.entries) {
      auto loaded = srfuse::dataset::load_entry(e, ds->manifest.scale, policy);
      inputs.push_back(srfuse::sweep::SweepInput{
          std::move(loaded.id), std::move(loaded.gt), std::move(loaded.set)});
    }
    const auto kind = static_cast<srfuse::sweep::SweepKind>(options->kind);
    *out = new srfuse_sweep{srfuse::sweep::run(kind, inputs, spec)};
  });
}

void srfuse_sweep_destroy(srfuse_sweep* sweep) { delete sweep; }

size_t srfuse_sweep_record_count(const srfuse_sweep* sweep) {
  return sweep ? sweep->result.records.size() : 0;
}

srfuse_status srfuse_sweep_record_at(const srfuse_sweep* sweep, size_t index,
                                     srfuse_sweep_record* out) {
  return guarded([&] {
    require(sweep != nullptr && out != nullptr, "NULL argument");
    require(index < sweep->result.records.size(), "index out of range");
    fill_record(sweep->result.records[index], out);
  });
}

size_t srfuse_sweep_mean_count(const srfuse_sweep* sweep) {
  return sweep ? sweep->result.means.size() : 0;
}

srfuse_status srfuse_sweep_mean_at(const srfuse_sweep* sweep, size_t index,
                                   srfuse_sweep_record* out, int* excluded) {
  return guarded([&] {
    require(sweep != nullptr && out != nullptr, "NULL argument");
    require(index < sweep->result.means.size(), "index out of range");
    fill_record(sweep->result.means[index], out);
    if (excluded) *excluded = sweep->result.excluded_infinite[index];
  });
}

srfuse_status srfuse_sweep_write_csv(const srfuse_sweep* sweep,
                                     const char* path) {
  return guarded([&] {
    require(sweep != nullptr && path != nullptr, "NULL argument");
    srfuse::sweep::write_csv(sweep->result, path);
  });
}

}  // extern "C"
