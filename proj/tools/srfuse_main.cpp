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

// Command-line front end. Talks to the library only through the C API.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "srfuse/srfuse.h"

namespace {

namespace fs = std::filesystem;

enum ExitCode {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitDimension = 3,
  kExitInternal = 4,
};

struct ImageDeleter {
  void operator()(srfuse_image* p) const { srfuse_image_destroy(p); }
};
struct ReportDeleter {
  void operator()(srfuse_report* p) const { srfuse_report_destroy(p); }
};
struct DatasetDeleter {
  void operator()(srfuse_dataset* p) const { srfuse_dataset_destroy(p); }
};
struct SweepDeleter {
  void operator()(srfuse_sweep* p) const { srfuse_sweep_destroy(p); }
};
struct PrepDeleter {
  void operator()(srfuse_prep_result* p) const {
    srfuse_prep_result_destroy(p);
  }
};
using ImagePtr = std::unique_ptr<srfuse_image, ImageDeleter>;
using ReportPtr = std::unique_ptr<srfuse_report, ReportDeleter>;
using DatasetPtr = std::unique_ptr<srfuse_dataset, DatasetDeleter>;
using SweepPtr = std::unique_ptr<srfuse_sweep, SweepDeleter>;
using PrepPtr = std::unique_ptr<srfuse_prep_result, PrepDeleter>;

// Thrown to unwind out of a subcommand with a specific exit code.
struct Exit {
  int code;
};

int exit_code_for(srfuse_status s) {
  switch (s) {
    case SRFUSE_OK:
      return kExitOk;
    case SRFUSE_ERR_INVALID_ARGUMENT:
      return kExitUsage;
    case SRFUSE_ERR_IO:
    case SRFUSE_ERR_PARSE:
      return kExitIo;
    case SRFUSE_ERR_DIMENSION:
      return kExitDimension;
    case SRFUSE_ERR_INTERNAL:
      break;
  }
  return kExitInternal;
}

void check(srfuse_status s) {
  if (s == SRFUSE_OK) return;
  std::fprintf(stderr, "srfuse: %s: %s\n", srfuse_status_name(s),
               srfuse_last_error());
  throw Exit{exit_code_for(s)};
}

[[noreturn]] void die(int code, const std::string& msg) {
  std::fprintf(stderr, "srfuse: %s\n", msg.c_str());
  throw Exit{code};
}

void require_file(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) die(kExitIo, "no such file: " + path);
}

void require_dir(const std::string& path) {
  std::error_code ec;
  if (!fs::is_directory(path, ec)) {
    die(kExitIo, "no such directory: " + path);
  }
}

void require_parent_dir(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) require_dir(parent.string());
}

std::string real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

ImagePtr load(const std::string& path) {
  srfuse_image* img = nullptr;
  check(srfuse_image_load_png(path.c_str(), &img));
  return ImagePtr(img);
}

void parse_size(const std::string& text, int& w, int& h, const char* flag) {
  const auto x = text.find('x');
  if (x == std::string::npos) {
    die(kExitUsage, std::string(flag) + " expects WIDTHxHEIGHT");
  }
  try {
    w = std::stoi(text.substr(0, x));
    h = std::stoi(text.substr(x + 1));
  } catch (const std::exception&) {
    die(kExitUsage, std::string(flag) + " expects WIDTHxHEIGHT");
  }
  if (w < 1 || h < 1) die(kExitUsage, std::string(flag) + " must be positive");
}

const std::map<std::string, int> kCropPolicies = {
    {"center", SRFUSE_CROP_CENTER}, {"error", SRFUSE_CROP_ERROR}};
const std::map<std::string, int> kAreaUnits = {{"pixels", 0},
                                               {"fraction", 1}};

// ---- fuse -----------------------------------------------------------------

struct FuseArgs {
  std::string lr;
  std::vector<std::string> candidates;
  std::string out;
  double beta = 300.0;
  double beta_g = 2.0;
  double mask_beta = -1.0;
  int area_as_fraction = 0;
  int scale = 4;
  bool naive = false;
  std::string export_masks;
  int crop_policy = SRFUSE_CROP_CENTER;
  int threads = 1;
};

void run_fuse(const FuseArgs& a) {
  if (!a.naive && a.lr.empty()) die(kExitUsage, "--lr is required");
  if (!a.lr.empty()) require_file(a.lr);
  for (const auto& c : a.candidates) require_file(c);
  require_parent_dir(a.out);
  srfuse_set_threads(a.threads);

  std::vector<ImagePtr> owned;
  std::vector<const srfuse_image*> cands;
  for (const auto& c : a.candidates) {
    owned.push_back(load(c));
    cands.push_back(owned.back().get());
  }

  std::printf("n_candidates=%zu\n", cands.size());
  if (a.naive) {
    srfuse_image* fused = nullptr;
    check(srfuse_naive_fuse(cands.data(), cands.size(), &fused));
    ImagePtr holder(fused);
    check(srfuse_image_save_png(fused, a.out.c_str()));
    std::printf("mode=naive\noutput=%s\n", a.out.c_str());
    return;
  }

  const ImagePtr lr = load(a.lr);
  srfuse_fusion_config cfg;
  srfuse_fusion_config_default(&cfg);
  cfg.beta = a.beta;
  cfg.beta_g = a.beta_g;
  cfg.mask_beta = a.mask_beta;
  cfg.area_as_fraction = a.area_as_fraction;
  cfg.scale = a.scale;
  cfg.crop_policy = a.crop_policy;
  cfg.export_masks = a.export_masks.empty() ? 0 : 1;

  srfuse_report* raw = nullptr;
  check(srfuse_fuse(lr.get(), cands.data(), cands.size(), &cfg, &raw));
  const ReportPtr report(raw);
  check(srfuse_image_save_png(srfuse_report_fused(raw), a.out.c_str()));
  std::printf("mode=weighted\nbeta=%s\nbeta_g=%s\n", real(a.beta).c_str(),
              real(a.beta_g).c_str());
  for (size_t i = 0; i < srfuse_report_count(raw); ++i) {
    double w = 0.0, lw = 0.0, area = 0.0;
    check(srfuse_report_global_weight(raw, i, &w, &lw));
    check(srfuse_report_mask_area(raw, i, &area));
    std::printf("global_weight_%zu=%s\nlog_global_weight_%zu=%s\n"
                "mask_area_%zu=%s\n",
                i + 1, real(w).c_str(), i + 1, real(lw).c_str(), i + 1,
                real(area).c_str());
  }
  if (!a.export_masks.empty()) {
    const std::string stem = fs::path(a.out).stem().string();
    check(srfuse_report_export_masks(raw, a.export_masks.c_str(),
                                     stem.c_str()));
    std::printf("masks_dir=%s\n", a.export_masks.c_str());
  }
  std::printf("output=%s\n", a.out.c_str());
}

// ---- prep -----------------------------------------------------------------

struct PrepArgs {
  std::string hr_dir;
  int generate = 0;
  std::string size = "128x128";
  std::string out_dir;
  int scale = 4;
  std::uint64_t seed = 0;
  int synthetic = 0;
  std::string tele_size;
  double tele_zoom = 1.0;
  int threads = 1;
};

void run_prep(const PrepArgs& a) {
  if (a.hr_dir.empty() == (a.generate <= 0)) {
    die(kExitUsage, "give exactly one of --hr-dir or --generate");
  }
  if (!a.hr_dir.empty()) require_dir(a.hr_dir);
  srfuse_set_threads(a.threads);

  srfuse_prep_options o;
  srfuse_prep_options_default(&o);
  o.hr_dir = a.hr_dir.empty() ? nullptr : a.hr_dir.c_str();
  o.generate = a.generate;
  parse_size(a.size, o.generate_width, o.generate_height, "--size");
  o.out_dir = a.out_dir.c_str();
  o.scale = a.scale;
  o.seed = a.seed;
  o.synthetic_candidates = a.synthetic;
  if (!a.tele_size.empty()) {
    parse_size(a.tele_size, o.tele_width, o.tele_height, "--tele-size");
  }
  o.tele_zoom = a.tele_zoom;

  srfuse_prep_result* raw = nullptr;
  check(srfuse_prepare_dataset(&o, &raw));
  const PrepPtr result(raw);
  for (size_t i = 0; i < srfuse_prep_result_note_count(raw); ++i) {
    std::fprintf(stderr, "srfuse: %s\n", srfuse_prep_result_note(raw, i));
  }
  std::printf("images=%d\nmanifest=%s\n", srfuse_prep_result_images(raw),
              srfuse_prep_result_manifest(raw));
}

// ---- sweep ----------------------------------------------------------------

struct SweepArgs {
  std::string manifest;
  std::string dir;
  int kind = SRFUSE_SWEEP_BETA;
  std::vector<double> betas;
  std::vector<double> beta_gs;
  std::vector<int> counts;
  double beta = 300.0;
  double beta_g = 2.0;
  double mask_beta = -1.0;
  int area_as_fraction = 0;
  int scale = 4;
  int crop_policy = SRFUSE_CROP_CENTER;
  std::string out;
  int threads = 1;
};

void run_sweep(const SweepArgs& a) {
  if (a.manifest.empty() == a.dir.empty()) {
    die(kExitUsage, "give exactly one of --manifest or --dir");
  }
  if (!a.manifest.empty()) require_file(a.manifest);
  if (!a.dir.empty()) require_dir(a.dir);
  require_parent_dir(a.out);
  srfuse_set_threads(a.threads);

  srfuse_dataset* raw_ds = nullptr;
  if (!a.manifest.empty()) {
    check(srfuse_dataset_open_manifest(a.manifest.c_str(), &raw_ds));
  } else {
    check(srfuse_dataset_scan_dir(a.dir.c_str(), a.scale, &raw_ds));
  }
  const DatasetPtr ds(raw_ds);

  srfuse_sweep_options o;
  srfuse_sweep_options_default(&o);
  o.kind = a.kind;
  if (!a.betas.empty()) {
    o.betas = a.betas.data();
    o.beta_count = a.betas.size();
  }
  if (!a.beta_gs.empty()) {
    o.beta_gs = a.beta_gs.data();
    o.beta_g_count = a.beta_gs.size();
  }
  if (!a.counts.empty()) {
    o.fuse_counts = a.counts.data();
    o.fuse_count_count = a.counts.size();
  }
  o.fixed_beta = a.beta;
  o.fixed_beta_g = a.beta_g;
  o.mask_beta = a.mask_beta;
  o.area_as_fraction = a.area_as_fraction;
  o.crop_policy = a.crop_policy;

  srfuse_sweep* raw = nullptr;
  check(srfuse_sweep_run(ds.get(), &o, &raw));
  const SweepPtr sweep(raw);
  check(srfuse_sweep_write_csv(raw, a.out.c_str()));

  std::printf("images=%zu\nrecords=%zu\n", srfuse_dataset_size(ds.get()),
              srfuse_sweep_record_count(raw));
  for (size_t i = 0; i < srfuse_sweep_mean_count(raw); ++i) {
    srfuse_sweep_record r;
    int excluded = 0;
    check(srfuse_sweep_mean_at(raw, i, &r, &excluded));
    std::printf("mean beta=%s beta_g=%s n_fused=%d psnr_y=%s ssim=%s "
                "excluded_inf=%d\n",
                real(r.beta).c_str(), real(r.beta_g).c_str(), r.n_fused,
                real(r.psnr_y).c_str(), real(r.ssim).c_str(), excluded);
  }
  std::printf("csv=%s\n", a.out.c_str());
}

// ---- metric ---------------------------------------------------------------

struct MetricArgs {
  std::string a;
  std::string b;
  int threads = 1;
};

void run_metric(const MetricArgs& m) {
  require_file(m.a);
  require_file(m.b);
  srfuse_set_threads(m.threads);
  const ImagePtr a = load(m.a);
  const ImagePtr b = load(m.b);
  double psnr = 0.0, ssim = 0.0;
  check(srfuse_metrics(a.get(), b.get(), &psnr, &ssim));
  std::printf("psnr_y=%s ssim=%s\n", real(psnr).c_str(), real(ssim).c_str());
}

void add_threads(CLI::App* cmd, int& threads) {
  cmd->add_option("--threads", threads,
                  "Worker threads for pixel kernels (output is identical for "
                  "any value)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fuse multiple super-resolution candidates of one image and "
               "evaluate the result"};
  app.require_subcommand(1);
  app.set_version_flag("--version", srfuse_version());

  FuseArgs fa;
  auto* fuse = app.add_subcommand(
      "fuse", "Fuse SR candidates of one LR image into a single image");
  fuse->add_option("candidates", fa.candidates,
                   "Candidate PNGs, most relevant reference first")
      ->required();
  fuse->add_option("--lr", fa.lr, "Low-resolution input PNG");
  fuse->add_option("-o,--out", fa.out, "Output PNG")->required();
  fuse->add_option("--beta", fa.beta,
                   "Per-pixel discrepancy penalty (intensities in [0, 1])")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  fuse->add_option("--beta-g", fa.beta_g, "Global mask-area weight exponent")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  fuse->add_option("--area-unit", fa.area_as_fraction,
                   "Mask area unit for the global weights: pixels or fraction")
      ->transform(CLI::CheckedTransformer(kAreaUnits, CLI::ignore_case))
      ->default_str("pixels");
  fuse->add_option("--mask-beta", fa.mask_beta,
                   "Penalty used only for the binary masks (default: --beta)")
      ->check(CLI::NonNegativeNumber);
  fuse->add_option("--scale", fa.scale, "Candidate / LR size ratio")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  fuse->add_flag("--naive", fa.naive, "Plain per-pixel average, no weights");
  fuse->add_option("--export-masks", fa.export_masks,
                   "Directory for weight and binary mask PNGs");
  fuse->add_option("--crop-policy", fa.crop_policy,
                   "Size disagreement handling: center or error")
      ->transform(CLI::CheckedTransformer(kCropPolicies, CLI::ignore_case))
      ->default_str("center");
  add_threads(fuse, fa.threads);

  PrepArgs pa;
  auto* prep = app.add_subcommand(
      "prep", "Build an evaluation dataset (GT, LR, telephotos, candidates)");
  prep->add_option("--hr-dir", pa.hr_dir, "Directory of ground-truth PNGs");
  prep->add_option("--generate", pa.generate,
                   "Synthesize this many ground-truth scenes instead")
      ->check(CLI::PositiveNumber);
  prep->add_option("--size", pa.size, "Size of generated scenes, WxH")
      ->capture_default_str();
  prep->add_option("--out-dir", pa.out_dir, "Output directory")->required();
  prep->add_option("--scale", pa.scale, "Downsampling factor (>= 2)")
      ->capture_default_str()
      ->check(CLI::Range(2, 64));
  prep->add_option("--seed", pa.seed, "Seed for all generated content")
      ->capture_default_str();
  prep->add_option("--synthetic", pa.synthetic,
                   "Number of synthetic SR candidates per image (0 = none)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  prep->add_option("--tele-size", pa.tele_size,
                   "Telephoto crop size WxH; writes center and corner crops");
  prep->add_option("--tele-zoom", pa.tele_zoom,
                   "Resampling factor applied to each telephoto crop")
      ->capture_default_str()
      ->check(CLI::Range(1.0, 64.0));
  add_threads(prep, pa.threads);

  SweepArgs sa;
  auto* sweep = app.add_subcommand(
      "sweep", "Evaluate fusion over parameter grids and write CSV");
  sweep->add_option("--manifest", sa.manifest, "Dataset manifest");
  sweep->add_option("--dir", sa.dir,
                    "Directory of <id>_gt.png / <id>_sr<k>.png files");
  sweep->add_option("--kind", sa.kind, "beta, beta-g, heatmap or count")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, int>{{"beta", SRFUSE_SWEEP_BETA},
                                     {"beta-g", SRFUSE_SWEEP_BETA_G},
                                     {"heatmap", SRFUSE_SWEEP_HEATMAP},
                                     {"count", SRFUSE_SWEEP_FUSE_COUNT}},
          CLI::ignore_case))
      ->default_str("beta");
  sweep->add_option("--betas", sa.betas,
                    "Comma-separated beta grid (default 0,30,...,810)")
      ->delimiter(',');
  sweep->add_option("--beta-gs", sa.beta_gs,
                    "Comma-separated beta_g grid (default 0,0.5,...,8)")
      ->delimiter(',');
  sweep->add_option("--counts", sa.counts,
                    "Comma-separated fuse counts for --kind count (default 1..N)")
      ->delimiter(',');
  sweep->add_option("--beta", sa.beta, "Fixed beta for --kind count")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--beta-g", sa.beta_g, "Fixed beta_g for --kind count")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--area-unit", sa.area_as_fraction,
                   "Mask area unit for the global weights: pixels or fraction")
      ->transform(CLI::CheckedTransformer(kAreaUnits, CLI::ignore_case))
      ->default_str("pixels");
  sweep->add_option("--mask-beta", sa.mask_beta,
                    "Penalty used only for the binary masks (default: beta)")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--scale", sa.scale, "Scale for --dir datasets")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep->add_option("--crop-policy", sa.crop_policy,
                    "Size disagreement handling: center or error")
      ->transform(CLI::CheckedTransformer(kCropPolicies, CLI::ignore_case))
      ->default_str("center");
  sweep->add_option("-o,--out", sa.out, "Output CSV")->required();
  add_threads(sweep, sa.threads);

  MetricArgs ma;
  auto* metric = app.add_subcommand(
      "metric", "PSNR and SSIM on the BT.601 Y channel of two PNGs");
  metric->add_option("a", ma.a, "First PNG")->required();
  metric->add_option("b", ma.b, "Second PNG")->required();
  add_threads(metric, ma.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*fuse) run_fuse(fa);
    if (*prep) run_prep(pa);
    if (*sweep) run_sweep(sa);
    if (*metric) run_metric(ma);
  } catch (const Exit& e) {
    return e.code;
  }
  return kExitOk;
}
