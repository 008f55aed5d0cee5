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

#include "sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <tuple>

#include "error.hpp"
#include "metrics.hpp"

namespace srfuse::sweep {
namespace {

void check_grid(const std::vector<double>& grid, const char* name) {
  if (grid.empty()) throw_invalid(std::string(name) + " grid is empty");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || grid[i] < 0.0) {
      throw_invalid(std::string(name) + " grid values must be >= 0");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw_invalid(std::string(name) + " grid must be strictly ascending");
    }
  }
}

fusion::FusionConfig config_for(const SweepSpec& spec, double beta,
                                double beta_g, int scale) {
  fusion::FusionConfig cfg;
  cfg.beta = beta;
  cfg.beta_g = beta_g;
  cfg.mask_beta = spec.mask_beta;
  cfg.area_as_fraction = spec.area_as_fraction;
  cfg.scale = scale;
  cfg.weight_epsilon = spec.weight_epsilon;
  return cfg;
}

SweepRecord evaluate(const SweepInput& in, const RgbImage& fused, double beta,
                     double beta_g, int n) {
  const auto m = metrics::evaluate(fused, in.gt);
  return SweepRecord{in.id, beta, beta_g, n, m.psnr_y, m.ssim};
}

void check_inputs(std::span<const SweepInput> inputs) {
  if (inputs.empty()) throw_invalid("sweep needs at least one image");
  for (const auto& in : inputs) {
    fusion::validate(in.set);
    if (!in.gt.same_size(in.set.candidates.front())) {
      throw_dimension("ground truth of '" + in.id +
                      "' does not match its candidates");
    }
  }
}

SweepResult finish(std::vector<SweepRecord> records) {
  auto key = [](const SweepRecord& r) {
    return std::tie(r.image_id, r.beta, r.beta_g, r.n_fused);
  };
  std::sort(records.begin(), records.end(),
            [&](const SweepRecord& a, const SweepRecord& b) {
              return key(a) < key(b);
            });

  struct Acc {
    double psnr = 0.0;
    int psnr_n = 0;
    double ssim = 0.0;
    int n = 0;
    int excluded = 0;
  };
  std::map<std::tuple<double, double, int>, Acc> groups;
  for (const auto& r : records) {
    Acc& a = groups[{r.beta, r.beta_g, r.n_fused}];
    if (std::isinf(r.psnr_y)) {
      ++a.excluded;
    } else {
      a.psnr += r.psnr_y;
      ++a.psnr_n;
    }
    a.ssim += r.ssim;
    ++a.n;
  }
  SweepResult result;
  result.records = std::move(records);
  for (const auto& [k, a] : groups) {
    const auto [beta, beta_g, n] = k;
    result.means.push_back(SweepRecord{
        kMeanId, beta, beta_g, n,
        a.psnr_n > 0 ? a.psnr / a.psnr_n : metrics::kPsnrInfinity,
        a.ssim / a.n});
    result.excluded_infinite.push_back(a.excluded);
  }
  return result;
}

SweepResult grid(std::span<const SweepInput> inputs, const SweepSpec& spec,
                 std::span<const double> betas,
                 std::span<const double> beta_gs) {
  check_inputs(inputs);
  std::vector<SweepRecord> records;
  for (const auto& in : inputs) {
    const int n = static_cast<int>(in.set.candidates.size());
    for (double beta : betas) {
      const auto masks = fusion::compute_masks(
          in.set, config_for(spec, beta, 0.0, in.set.scale));
      for (double beta_g : beta_gs) {
        const auto cfg = config_for(spec, beta, beta_g, in.set.scale);
        const auto report = fusion::fuse_with_masks(in.set, masks, cfg);
        records.push_back(evaluate(in, report.fused, beta, beta_g, n));
      }
    }
  }
  return finish(std::move(records));
}

}  // namespace

void SweepSpec::validate() const {
  check_grid(beta_grid, "beta");
  check_grid(beta_g_grid, "beta_g");
  for (std::size_t i = 0; i < fuse_counts.size(); ++i) {
    if (fuse_counts[i] < 1) throw_invalid("fuse counts must be >= 1");
    if (i > 0 && fuse_counts[i] <= fuse_counts[i - 1]) {
      throw_invalid("fuse counts must be strictly ascending");
    }
  }
  config_for(*this, fixed_beta, fixed_beta_g, 1).validate();
}

SweepResult sweep_beta(std::span<const SweepInput> inputs,
                       const SweepSpec& spec) {
  spec.validate();
  const double zero = 0.0;
  return grid(inputs, spec, spec.beta_grid, std::span<const double>(&zero, 1));
}

SweepResult sweep_beta_g(std::span<const SweepInput> inputs,
                         const SweepSpec& spec) {
  spec.validate();
  const double zero = 0.0;
  return grid(inputs, spec, std::span<const double>(&zero, 1),
              spec.beta_g_grid);
}

SweepResult sweep_heatmap(std::span<const SweepInput> inputs,
                          const SweepSpec& spec) {
  spec.validate();
  return grid(inputs, spec, spec.beta_grid, spec.beta_g_grid);
}

SweepResult sweep_fuse_count(std::span<const SweepInput> inputs,
                             const SweepSpec& spec) {
  spec.validate();
  check_inputs(inputs);
  std::vector<int> counts = spec.fuse_counts;
  if (counts.empty()) {
    std::size_t smallest = inputs[0].set.candidates.size();
    for (const auto& in : inputs) {
      smallest = std::min(smallest, in.set.candidates.size());
    }
    for (std::size_t k = 1; k <= smallest; ++k) {
      counts.push_back(static_cast<int>(k));
    }
  }
  std::vector<SweepRecord> records;
  for (const auto& in : inputs) {
    for (int k : counts) {
      if (static_cast<std::size_t>(k) > in.set.candidates.size()) {
        throw_invalid("fuse count " + std::to_string(k) + " exceeds the " +
                      std::to_string(in.set.candidates.size()) +
                      " candidates of '" + in.id + "'");
      }
      fusion::CandidateSet subset{
          in.set.lr_input,
          std::vector<RgbImage>(in.set.candidates.begin(),
                                in.set.candidates.begin() + k),
          in.set.scale};
      const auto cfg = config_for(spec, spec.fixed_beta, spec.fixed_beta_g,
                                  in.set.scale);
      const auto report = fusion::fuse(subset, cfg);
      records.push_back(evaluate(in, report.fused, spec.fixed_beta,
                                 spec.fixed_beta_g, k));
    }
  }
  return finish(std::move(records));
}

SweepResult run(SweepKind kind, std::span<const SweepInput> inputs,
                const SweepSpec& spec) {
  switch (kind) {
    case SweepKind::kBeta:
      return sweep_beta(inputs, spec);
    case SweepKind::kBetaG:
      return sweep_beta_g(inputs, spec);
    case SweepKind::kHeatmap:
      return sweep_heatmap(inputs, spec);
    case SweepKind::kFuseCount:
      return sweep_fuse_count(inputs, spec);
  }
  throw_invalid("unknown sweep kind");
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string to_csv(const SweepResult& result) {
  std::string out = "image_id,beta,beta_g,n_fused,psnr_y,ssim\n";
  auto row = [&](const SweepRecord& r) {
    out += r.image_id + "," + format_real(r.beta) + "," +
           format_real(r.beta_g) + "," + std::to_string(r.n_fused) + "," +
           format_real(r.psnr_y) + "," + format_real(r.ssim) + "\n";
  };
  for (const auto& r : result.records) row(r);
  for (const auto& r : result.means) row(r);
  return out;
}

void write_csv(const SweepResult& result, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw_io("cannot write '" + path + "'");
  f << to_csv(result);
  if (!f) throw_io("failed writing '" + path + "'");
}

}  // namespace srfuse::sweep
