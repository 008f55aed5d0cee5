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

/*
 * srfuse C API.
 *
 * Fuses several super-resolved candidates of one low-resolution image into a
 * single image using per-pixel consistency masks and per-candidate global
 * weights, and provides the evaluation tooling around it (Y-channel PSNR and
 * SSIM, dataset preparation, parameter sweeps).
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_destroy function. Functions return SRFUSE_OK or an error
 * status; srfuse_last_error() then describes the failure. The error message
 * is thread-local and valid until the next failing call on that thread.
 */
#ifndef SRFUSE_SRFUSE_H_
#define SRFUSE_SRFUSE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SRFUSE_BUILDING_LIBRARY)
#    define SRFUSE_API __declspec(dllexport)
#  else
#    define SRFUSE_API __declspec(dllimport)
#  endif
#else
#  define SRFUSE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum srfuse_status {
  SRFUSE_OK = 0,
  SRFUSE_ERR_INVALID_ARGUMENT = 1,
  SRFUSE_ERR_IO = 2,
  SRFUSE_ERR_DIMENSION = 3,
  SRFUSE_ERR_PARSE = 4,
  SRFUSE_ERR_INTERNAL = 5
} srfuse_status;

typedef struct srfuse_image srfuse_image;
typedef struct srfuse_report srfuse_report;
typedef struct srfuse_dataset srfuse_dataset;
typedef struct srfuse_sweep srfuse_sweep;
typedef struct srfuse_prep_result srfuse_prep_result;

SRFUSE_API const char* srfuse_version(void);
SRFUSE_API const char* srfuse_last_error(void);
SRFUSE_API const char* srfuse_status_name(srfuse_status status);

/* Caps worker threads for the pixel kernels (n < 1 means 1). Output never
 * depends on this value. */
SRFUSE_API void srfuse_set_threads(int n);
SRFUSE_API int srfuse_get_threads(void);

/* ---- images: 3 planes of doubles, nominal range [0, 255] ---------------- */

SRFUSE_API srfuse_status srfuse_image_create(int width, int height,
                                             double fill, srfuse_image** out);
/* Planar copies; each plane holds width * height row-major samples. */
SRFUSE_API srfuse_status srfuse_image_from_planes(const double* r,
                                                  const double* g,
                                                  const double* b, int width,
                                                  int height,
                                                  srfuse_image** out);
/* Interleaved 8-bit RGB with `stride` bytes per row. */
SRFUSE_API srfuse_status srfuse_image_from_rgb8(const uint8_t* pixels,
                                                int width, int height,
                                                size_t stride,
                                                srfuse_image** out);
SRFUSE_API srfuse_status srfuse_image_clone(const srfuse_image* img,
                                            srfuse_image** out);
SRFUSE_API void srfuse_image_destroy(srfuse_image* img);

SRFUSE_API int srfuse_image_width(const srfuse_image* img);
SRFUSE_API int srfuse_image_height(const srfuse_image* img);
/* Copies planes out; any pointer may be NULL to skip that plane. */
SRFUSE_API srfuse_status srfuse_image_get_planes(const srfuse_image* img,
                                                 double* r, double* g,
                                                 double* b);
/* BT.601 studio-swing luma, width * height samples. */
SRFUSE_API srfuse_status srfuse_image_get_luma(const srfuse_image* img,
                                               double* y);

SRFUSE_API srfuse_status srfuse_image_load_png(const char* path,
                                               srfuse_image** out);
SRFUSE_API srfuse_status srfuse_image_save_png(const srfuse_image* img,
                                               const char* path);

SRFUSE_API srfuse_status srfuse_image_resample(const srfuse_image* img,
                                               int width, int height,
                                               srfuse_image** out);

/* ---- fusion ------------------------------------------------------------- */

typedef enum srfuse_crop_policy {
  SRFUSE_CROP_CENTER = 0,
  SRFUSE_CROP_ERROR = 1
} srfuse_crop_policy;

typedef struct srfuse_fusion_config {
  double beta;           /* per-pixel discrepancy penalty, >= 0 */
  double beta_g;         /* global-weight exponent scale, >= 0 */
  double mask_beta;      /* penalty for the binary masks; < 0 means beta */
  int area_as_fraction;  /* nonzero: mask areas in [0, 1] instead of pixels */
  int scale;             /* candidate / LR size ratio, >= 1 */
  double weight_epsilon; /* lower clamp on per-pixel weights, > 0 */
  int crop_policy;       /* srfuse_crop_policy */
  int export_masks;      /* nonzero keeps masks in the report */
} srfuse_fusion_config;

SRFUSE_API void srfuse_fusion_config_default(srfuse_fusion_config* config);

SRFUSE_API srfuse_status srfuse_naive_fuse(const srfuse_image* const* cands,
                                           size_t count, srfuse_image** out);

SRFUSE_API srfuse_status srfuse_fuse(const srfuse_image* lr,
                                     const srfuse_image* const* cands,
                                     size_t count,
                                     const srfuse_fusion_config* config,
                                     srfuse_report** out);
SRFUSE_API void srfuse_report_destroy(srfuse_report* report);

/* Borrowed; valid while the report lives. */
SRFUSE_API const srfuse_image* srfuse_report_fused(const srfuse_report* r);
SRFUSE_API size_t srfuse_report_count(const srfuse_report* r);
/* Max-normalized global weight (largest is 1) and its natural log. */
SRFUSE_API srfuse_status srfuse_report_global_weight(const srfuse_report* r,
                                                     size_t index,
                                                     double* weight,
                                                     double* log_weight);
SRFUSE_API srfuse_status srfuse_report_mask_area(const srfuse_report* r,
                                                 size_t index, double* area);
/* Per-pixel weights / binary mask of one candidate into a buffer of
 * fused-width * fused-height doubles. Requires export_masks. */
SRFUSE_API srfuse_status srfuse_report_weight_mask(const srfuse_report* r,
                                                   size_t index, double* out);
SRFUSE_API srfuse_status srfuse_report_binary_mask(const srfuse_report* r,
                                                   size_t index, double* out);
/* Writes <dir>/<stem>_weight<k>.png and <dir>/<stem>_binary<k>.png. */
SRFUSE_API srfuse_status srfuse_report_export_masks(const srfuse_report* r,
                                                    const char* dir,
                                                    const char* stem);

/* ---- metrics on the Y channel ------------------------------------------ */

/* psnr_y is +INFINITY for identical Y planes. Either output may be NULL. */
SRFUSE_API srfuse_status srfuse_metrics(const srfuse_image* a,
                                        const srfuse_image* b,
                                        double* psnr_y, double* ssim);

/* ---- dataset preparation ------------------------------------------------ */

SRFUSE_API srfuse_status srfuse_make_lr(const srfuse_image* hr, int scale,
                                        srfuse_image** out);
SRFUSE_API srfuse_status srfuse_make_telephoto(const srfuse_image* hr, int x,
                                               int y, int width, int height,
                                               double zoom,
                                               srfuse_image** out);
SRFUSE_API srfuse_status srfuse_make_synthetic_gt(int width, int height,
                                                  uint64_t seed,
                                                  srfuse_image** out);

typedef enum srfuse_distortion_kind {
  SRFUSE_DISTORT_NONE = 0,
  SRFUSE_DISTORT_BLUR = 1,
  SRFUSE_DISTORT_NOISE = 2
} srfuse_distortion_kind;

typedef struct srfuse_distortion {
  int kind;        /* srfuse_distortion_kind */
  double strength; /* blur sigma or noise amplitude */
  int block;       /* noise cell size in pixels, >= 1 */
} srfuse_distortion;

/* `distortions` has 1 or `count` entries. On success *lr_out receives the
 * derived LR input and cands_out[0..count) the candidates. */
SRFUSE_API srfuse_status srfuse_make_synthetic_candidates(
    const srfuse_image* gt, int count, const srfuse_distortion* distortions,
    size_t distortion_count, int scale, uint64_t seed, srfuse_image** lr_out,
    srfuse_image** cands_out);

typedef struct srfuse_prep_options {
  const char* hr_dir; /* NULL when generating */
  int generate;
  int generate_width;
  int generate_height;
  const char* out_dir;
  int scale;
  uint64_t seed;
  int synthetic_candidates;
  const srfuse_distortion* distortions; /* NULL for the default menu */
  size_t distortion_count;
  int tele_width;
  int tele_height;
  double tele_zoom;
} srfuse_prep_options;

SRFUSE_API void srfuse_prep_options_default(srfuse_prep_options* options);
SRFUSE_API srfuse_status srfuse_prepare_dataset(
    const srfuse_prep_options* options, srfuse_prep_result** out);
SRFUSE_API void srfuse_prep_result_destroy(srfuse_prep_result* r);
SRFUSE_API int srfuse_prep_result_images(const srfuse_prep_result* r);
SRFUSE_API const char* srfuse_prep_result_manifest(const srfuse_prep_result* r);
SRFUSE_API size_t srfuse_prep_result_note_count(const srfuse_prep_result* r);
SRFUSE_API const char* srfuse_prep_result_note(const srfuse_prep_result* r,
                                               size_t index);

/* ---- datasets and sweeps ------------------------------------------------ */

SRFUSE_API srfuse_status srfuse_dataset_open_manifest(const char* path,
                                                      srfuse_dataset** out);
/* `scale` is used for the directory layout, which has no header. */
SRFUSE_API srfuse_status srfuse_dataset_scan_dir(const char* dir, int scale,
                                                 srfuse_dataset** out);
SRFUSE_API void srfuse_dataset_destroy(srfuse_dataset* ds);
SRFUSE_API size_t srfuse_dataset_size(const srfuse_dataset* ds);
SRFUSE_API int srfuse_dataset_scale(const srfuse_dataset* ds);
SRFUSE_API const char* srfuse_dataset_id(const srfuse_dataset* ds,
                                         size_t index);

typedef enum srfuse_sweep_kind {
  SRFUSE_SWEEP_BETA = 0,
  SRFUSE_SWEEP_BETA_G = 1,
  SRFUSE_SWEEP_HEATMAP = 2,
  SRFUSE_SWEEP_FUSE_COUNT = 3
} srfuse_sweep_kind;

typedef struct srfuse_sweep_options {
  int kind;                  /* srfuse_sweep_kind */
  const double* betas;       /* NULL for the default grid */
  size_t beta_count;
  const double* beta_gs;     /* NULL for the default grid */
  size_t beta_g_count;
  const int* fuse_counts;    /* NULL for 1..N */
  size_t fuse_count_count;
  double fixed_beta;         /* fuse-count sweep only */
  double fixed_beta_g;
  double mask_beta;          /* < 0 means follow beta */
  int area_as_fraction;      /* as in srfuse_fusion_config */
  int crop_policy;           /* srfuse_crop_policy, applied when loading */
} srfuse_sweep_options;

typedef struct srfuse_sweep_record {
  const char* image_id; /* borrowed from the sweep */
  double beta;
  double beta_g;
  int n_fused;
  double psnr_y;
  double ssim;
} srfuse_sweep_record;

SRFUSE_API void srfuse_sweep_options_default(srfuse_sweep_options* options);
SRFUSE_API srfuse_status srfuse_sweep_run(const srfuse_dataset* ds,
                                          const srfuse_sweep_options* options,
                                          srfuse_sweep** out);
SRFUSE_API void srfuse_sweep_destroy(srfuse_sweep* sweep);
SRFUSE_API size_t srfuse_sweep_record_count(const srfuse_sweep* sweep);
SRFUSE_API srfuse_status srfuse_sweep_record_at(const srfuse_sweep* sweep,
                                                size_t index,
                                                srfuse_sweep_record* out);
/* Mean rows, one per grid point; `excluded` receives the number of images
 * left out of the PSNR mean because their PSNR was infinite. */
SRFUSE_API size_t srfuse_sweep_mean_count(const srfuse_sweep* sweep);
SRFUSE_API srfuse_status srfuse_sweep_mean_at(const srfuse_sweep* sweep,
                                              size_t index,
                                              srfuse_sweep_record* out,
                                              int* excluded);
SRFUSE_API srfuse_status srfuse_sweep_write_csv(const srfuse_sweep* sweep,
                                                const char* path);

#ifdef __cplusplus
}
#endif

#endif /* SRFUSE_SRFUSE_H_ */
