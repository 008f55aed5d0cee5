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

#include "dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "error.hpp"
#include "png_io.hpp"

namespace srfuse::dataset {
namespace fs = std::filesystem;
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string resolve(const std::string& base_dir, const std::string& p) {
  const fs::path path(p);
  if (path.is_absolute() || base_dir.empty()) return path.string();
  return (fs::path(base_dir) / path).string();
}

std::string relative_to(const fs::path& dir, const std::string& p) {
  const fs::path abs = fs::absolute(p).lexically_normal();
  const fs::path base = fs::absolute(dir).lexically_normal();
  const fs::path rel = abs.lexically_relative(base);
  if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  return abs.string();
}

RgbImage quantized(const RgbImage& img) {
  RgbImage out = img;
  for (int c = 0; c < 3; ++c) {
    for (double& v : out.channel(c).samples()) v = quantize_sample(v);
  }
  return out;
}

}  // namespace

Manifest parse_manifest(std::istream& in, const std::string& base_dir) {
  Manifest m;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw_parse("manifest line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) fail("expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (value.empty()) fail("empty value for '" + key + "'");
    if (key == "scale") {
      if (!m.entries.empty()) fail("'scale' must precede the first 'id'");
      int s = 0;
      const auto [ptr, ec] =
          std::from_chars(value.data(), value.data() + value.size(), s);
      if (ec != std::errc() || ptr != value.data() + value.size() || s < 1) {
        fail("invalid scale '" + value + "'");
      }
      m.scale = s;
    } else if (key == "id") {
      m.entries.push_back(Entry{value, {}, {}, {}, {}});
    } else if (key == "gt" || key == "lr" || key == "sr" || key == "ref") {
      if (m.entries.empty()) fail("'" + key + "' before any 'id'");
      Entry& e = m.entries.back();
      const std::string path = resolve(base_dir, value);
      if (key == "gt") {
        e.gt = path;
      } else if (key == "lr") {
        e.lr = path;
      } else if (key == "sr") {
        e.candidates.push_back(path);
      } else {
        e.references.push_back(path);
      }
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  for (const auto& e : m.entries) {
    if (e.gt.empty()) throw_parse("manifest entry '" + e.id + "' has no gt");
  }
  return m;
}

Manifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot open manifest '" + path + "'");
  return parse_manifest(in, fs::path(path).parent_path().string());
}

void write_manifest(const Manifest& manifest, const std::string& path) {
  const fs::path dir = fs::path(path).parent_path();
  std::ostringstream out;
  out << "# srfuse manifest\n";
  out << "scale = " << manifest.scale << "\n";
  for (const auto& e : manifest.entries) {
    out << "\nid = " << e.id << "\n";
    out << "gt = " << relative_to(dir, e.gt) << "\n";
    if (!e.lr.empty()) out << "lr = " << relative_to(dir, e.lr) << "\n";
    for (const auto& c : e.candidates) {
      out << "sr = " << relative_to(dir, c) << "\n";
    }
    for (const auto& r : e.references) {
      out << "ref = " << relative_to(dir, r) << "\n";
    }
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw_io("cannot write manifest '" + path + "'");
  f << out.str();
  if (!f) throw_io("failed writing manifest '" + path + "'");
}

Manifest scan_directory(const std::string& dir, int scale) {
  if (!fs::is_directory(dir)) throw_io("'" + dir + "' is not a directory");
  static const std::regex kGt(R"((.+)_gt\.png)");
  static const std::regex kLr(R"((.+)_lr\.png)");
  static const std::regex kSr(R"((.+)_sr(\d+)\.png)");
  static const std::regex kRef(R"((.+)_ref(\d+)\.png)");
  std::map<std::string, Entry> by_id;
  std::map<std::string, std::map<int, std::string>> srs, refs;
  std::vector<fs::path> files;
  for (const auto& de : fs::directory_iterator(dir)) {
    if (de.is_regular_file()) files.push_back(de.path());
  }
  for (const auto& p : files) {
    const std::string name = p.filename().string();
    std::smatch m;
    if (std::regex_match(name, m, kGt)) {
      by_id[m[1]].gt = p.string();
    } else if (std::regex_match(name, m, kLr)) {
      by_id[m[1]].lr = p.string();
    } else if (std::regex_match(name, m, kSr)) {
      srs[m[1]][std::stoi(m[2])] = p.string();
    } else if (std::regex_match(name, m, kRef)) {
      refs[m[1]][std::stoi(m[2])] = p.string();
    }
  }
  Manifest out;
  out.scale = scale;
  for (auto& [id, e] : by_id) {
    if (e.gt.empty() || srs[id].empty()) continue;
    e.id = id;
    for (const auto& [k, path] : srs[id]) e.candidates.push_back(path);
    for (const auto& [k, path] : refs[id]) e.references.push_back(path);
    out.entries.push_back(e);
  }
  if (out.entries.empty()) {
    throw_io("no '<id>_gt.png' with matching '<id>_sr<k>.png' files in '" +
             dir + "'");
  }
  return out;
}

LoadedEntry load_entry(const Entry& entry, int scale,
                       fusion::CropPolicy policy) {
  if (entry.candidates.empty()) {
    throw_invalid("entry '" + entry.id + "' lists no sr candidates");
  }
  RgbImage gt = prep::crop_to_multiple(read_png(entry.gt), scale);
  RgbImage lr = entry.lr.empty() ? prep::make_lr(gt, scale) : read_png(entry.lr);
  std::vector<RgbImage> candidates;
  for (const auto& c : entry.candidates) candidates.push_back(read_png(c));
  auto set = fusion::make_candidate_set(std::move(lr), std::move(candidates),
                                        scale, policy);
  if (!gt.same_size(set.candidates.front())) {
    if (policy == fusion::CropPolicy::kError) {
      throw_dimension("ground truth of '" + entry.id +
                      "' does not match its candidates");
    }
    const int w = set.candidates.front().width();
    const int h = set.candidates.front().height();
    if (gt.width() < w || gt.height() < h) {
      throw_dimension("ground truth of '" + entry.id +
                      "' is smaller than its candidates");
    }
    gt = crop(gt, centered_rect(gt.width(), gt.height(), w, h));
  }
  return LoadedEntry{entry.id, std::move(gt), std::move(set)};
}

std::vector<prep::Distortion> default_distortions(int n, int scale) {
  // Mosaic cells of one LR pixel keep the noise visible after downscaling.
  std::vector<prep::Distortion> d;
  d.push_back({prep::DistortionKind::kNoise, 12.0, scale});
  for (int i = 1; i < n; ++i) {
    if (i % 2 == 1) {
      d.push_back({prep::DistortionKind::kBlur, 6.0, 1});
    } else {
      d.push_back({prep::DistortionKind::kNoise, 48.0, scale});
    }
  }
  return d;
}

PrepSummary prepare_dataset(const PrepOptions& o) {
  if (o.out_dir.empty()) throw_invalid("an output directory is required");
  if (o.scale < 2) throw_invalid("scale must be >= 2");
  if (o.hr_dir.empty() == (o.generate <= 0)) {
    throw_invalid("give exactly one of an HR directory or a generate count");
  }
  if (o.synthetic_candidates == 1) {
    throw_invalid("synthetic candidate sets need at least 2 candidates");
  }
  if ((o.tele_width > 0) != (o.tele_height > 0)) {
    throw_invalid("telephoto size needs both width and height");
  }

  struct Source {
    std::string id;
    RgbImage image;
  };
  std::vector<Source> sources;
  PrepSummary summary;
  if (!o.hr_dir.empty()) {
    if (!fs::is_directory(o.hr_dir)) {
      throw_io("'" + o.hr_dir + "' is not a directory");
    }
    std::vector<fs::path> pngs;
    for (const auto& de : fs::directory_iterator(o.hr_dir)) {
      if (de.is_regular_file() && de.path().extension() == ".png") {
        pngs.push_back(de.path());
      }
    }
    std::sort(pngs.begin(), pngs.end());
    if (pngs.empty()) throw_io("no PNG files in '" + o.hr_dir + "'");
    for (const auto& p : pngs) {
      sources.push_back({p.stem().string(), read_png(p.string())});
    }
  } else {
    for (int i = 0; i < o.generate; ++i) {
      char id[16];
      std::snprintf(id, sizeof id, "%03d", i);
      sources.push_back(
          {id, quantized(prep::make_synthetic_gt(
                   o.generate_width, o.generate_height,
                   o.seed + 0x9e3779b97f4a7c15ULL * (i + 1)))});
    }
  }

  std::error_code ec;
  fs::create_directories(o.out_dir, ec);
  if (ec) throw_io("cannot create '" + o.out_dir + "': " + ec.message());
  const fs::path out(o.out_dir);
  auto path_for = [&](const std::string& name) {
    return (out / name).string();
  };

  Manifest manifest;
  manifest.scale = o.scale;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    const auto& src = sources[i];
    RgbImage gt = prep::crop_to_multiple(src.image, o.scale);
    if (!gt.same_size(src.image)) {
      summary.notes.push_back(
          src.id + ": center-cropped " + std::to_string(src.image.width()) +
          "x" + std::to_string(src.image.height()) + " to " +
          std::to_string(gt.width()) + "x" + std::to_string(gt.height()) +
          " (divisible by " + std::to_string(o.scale) + ")");
    }
    Entry e;
    e.id = src.id;
    e.gt = path_for(src.id + "_gt.png");
    e.lr = path_for(src.id + "_lr.png");
    write_png(gt, e.gt);
    write_png(prep::make_lr(gt, o.scale), e.lr);

    if (o.tele_width > 0) {
      const auto regions = prep::telephoto_regions(
          gt.width(), gt.height(), o.tele_width, o.tele_height);
      for (std::size_t k = 0; k < regions.size(); ++k) {
        const prep::PrepSpec spec{o.scale, regions[k], o.tele_zoom};
        const std::string p =
            path_for(src.id + "_ref" + std::to_string(k + 1) + ".png");
        write_png(prep::make_telephoto(gt, spec), p);
        e.references.push_back(p);
      }
    }

    if (o.synthetic_candidates >= 2) {
      prep::SyntheticSpec spec;
      spec.scale = o.scale;
      spec.seed = o.seed ^ (0xd1b54a32d192ed03ULL * (i + 1));
      spec.distortions = o.distortions.empty()
                             ? default_distortions(o.synthetic_candidates, o.scale)
                             : o.distortions;
      const auto syn =
          prep::make_synthetic_candidates(gt, o.synthetic_candidates, spec);
      for (std::size_t k = 0; k < syn.set.candidates.size(); ++k) {
        const std::string p =
            path_for(src.id + "_sr" + std::to_string(k + 1) + ".png");
        write_png(syn.set.candidates[k], p);
        e.candidates.push_back(p);
      }
    }
    manifest.entries.push_back(std::move(e));
  }

  summary.images = static_cast<int>(manifest.entries.size());
  summary.manifest_path = path_for("manifest.txt");
  write_manifest(manifest, summary.manifest_path);
  return summary;
}

}  // namespace srfuse::dataset
