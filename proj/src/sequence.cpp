#include "rspatio/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "text_util.hpp"

namespace fs = std::filesystem;

namespace rspatio {

namespace {

const std::vector<std::string> kImageExtensions{".png", ".jpg", ".jpeg", ".bmp", ".ppm", ".pgm", ".tif", ".tiff"};

bool is_image(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return std::find(kImageExtensions.begin(), kImageExtensions.end(), ext) != kImageExtensions.end();
}

/// Last run of digits in the file stem, e.g. "r-123-45" -> 45.
std::optional<long long> frame_index(const fs::path& p) {
  const std::string stem = p.stem().string();
  const auto end = stem.find_last_of("0123456789");
  if (end == std::string::npos) return std::nullopt;
  auto begin = end;
  while (begin > 0 && std::isdigit(static_cast<unsigned char>(stem[begin - 1]))) --begin;
  return text::parse_value<long long>(std::string_view(stem).substr(begin, end - begin + 1), "frame index");
}

std::map<long long, fs::path> index_folder(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error("missing folder " + dir.string());
  std::map<long long, fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || !is_image(entry.path())) continue;
    const auto idx = frame_index(entry.path());
    if (!idx) continue;
    if (!out.emplace(*idx, entry.path()).second) throw Error("duplicate frame index " + std::to_string(*idx) + " in " + dir.string());
  }
  return out;
}

std::ifstream open_text(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw Error("cannot open " + p.string());
  return in;
}

}  // namespace

std::vector<RgbdFrame> normalize_frames(const std::vector<RawFrame>& raw) {
  std::optional<DepthRange> range;
  for (const RawFrame& f : raw) {
    const auto r = valid_depth_range(f.depth);
    if (!r) continue;
    if (!range) {
      range = r;
    } else {
      range->nearest = std::min(range->nearest, r->nearest);
      range->farthest = std::max(range->farthest, r->farthest);
    }
  }
  if (!range && !raw.empty()) throw Error("empty depth frame");
  std::vector<RgbdFrame> out;
  out.reserve(raw.size());
  for (const RawFrame& f : raw) out.emplace_back(f.color, normalize_depth(f.depth, 0, *range));
  return out;
}

DirectorySequence::DirectorySequence(std::vector<fs::path> color, std::vector<fs::path> depth, DepthRange range,
                                     bool depth_is_normalized)
    : color_(std::move(color)), depth_(std::move(depth)), range_(range), depth_is_normalized_(depth_is_normalized) {
  if (color_.size() != depth_.size()) throw Error("color and depth frame counts differ");
}

RgbdFrame DirectorySequence::frame(std::size_t index) const {
  ColorImage color = read_color_image(color_.at(index));
  bool eight_bit = false;
  const Image<std::uint16_t> raw = read_depth_image(depth_.at(index), &eight_bit);
  if (eight_bit != depth_is_normalized_) throw Error("mixed 8-bit and 16-bit depth in " + depth_[index].string());
  if (!depth_is_normalized_) return RgbdFrame(std::move(color), normalize_depth(raw, 0, range_));

  Image<double> values(raw.width(), raw.height());
  std::copy(raw.pixels().begin(), raw.pixels().end(), values.pixels().begin());
  return RgbdFrame(std::move(color), DepthFrame(std::move(values)));
}

BoundingBox parse_init(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    const auto content = text::trim(line);
    if (content.empty()) continue;
    const BoundingBox b = text::parse_box(content);
    if (b.empty()) throw Error("init box has zero area");
    return b;
  }
  throw Error("init file is empty");
}

GroundTruth parse_ground_truth(std::istream& in) {
  GroundTruth gt;
  std::string line;
  while (std::getline(in, line)) {
    const auto content = text::trim(line);
    if (content.empty()) continue;
    if (content == "occ") {
      gt.emplace_back(std::nullopt);
    } else {
      gt.emplace_back(text::parse_box(content));
    }
  }
  return gt;
}

void write_ground_truth(std::ostream& out, const GroundTruth& gt) {
  for (const auto& b : gt) out << (b ? text::format_box(*b) : std::string("occ")) << '\n';
}

LoadedSequence load_sequence(const fs::path& dir) {
  const auto color = index_folder(dir / "rgb");
  const auto depth = index_folder(dir / "depth");
  if (color.empty()) throw Error("no color frames in " + (dir / "rgb").string());

  std::vector<fs::path> color_paths, depth_paths;
  for (const auto& [idx, path] : color) {
    const auto it = depth.find(idx);
    if (it == depth.end()) throw Error("missing depth frame " + std::to_string(idx));
    color_paths.push_back(path);
    depth_paths.push_back(it->second);
  }
  if (depth.size() != color.size()) {
    for (const auto& [idx, path] : depth)
      if (!color.count(idx)) throw Error("missing color frame " + std::to_string(idx));
  }

  // One pass over the depth images fixes the normalization range for the
  // whole sequence.
  bool eight_bit = false;
  read_depth_image(depth_paths.front(), &eight_bit);
  DepthRange range;
  if (!eight_bit) {
    std::optional<DepthRange> acc;
    for (const auto& p : depth_paths) {
      const auto r = valid_depth_range(read_depth_image(p));
      if (!r) continue;
      if (!acc) {
        acc = r;
      } else {
        acc->nearest = std::min(acc->nearest, r->nearest);
        acc->farthest = std::max(acc->farthest, r->farthest);
      }
    }
    if (!acc) throw Error("empty depth frame");
    range = *acc;
  }

  LoadedSequence seq;
  seq.name = fs::absolute(dir).lexically_normal().filename().string();
  if (seq.name.empty()) seq.name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
  {
    auto in = open_text(dir / "init.txt");
    seq.init = parse_init(in);
  }
  if (fs::exists(dir / "gt.txt")) {
    auto in = open_text(dir / "gt.txt");
    GroundTruth gt = parse_ground_truth(in);
    if (gt.size() != color_paths.size())
      throw Error("gt.txt has " + std::to_string(gt.size()) + " entries for " + std::to_string(color_paths.size()) +
                  " frames");
    seq.ground_truth = std::move(gt);
  }
  seq.frames = std::make_unique<DirectorySequence>(std::move(color_paths), std::move(depth_paths), range, eight_bit);
  return seq;
}

void write_sequence(const fs::path& dir, const std::vector<RawFrame>& frames, const BoundingBox& init,
                    const std::optional<GroundTruth>& gt) {
  std::error_code ec;
  fs::create_directories(dir / "rgb", ec);
  fs::create_directories(dir / "depth", ec);
  if (!fs::is_directory(dir / "rgb") || !fs::is_directory(dir / "depth"))
    throw Error("cannot create sequence folders under " + dir.string());
  for (std::size_t i = 0; i < frames.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "%06zu.png", i);
    write_color_image(dir / "rgb" / name, frames[i].color);
    write_depth_image(dir / "depth" / name, frames[i].depth);
  }
  std::ofstream init_out(dir / "init.txt");
  init_out << text::format_box(init) << '\n';
  if (!init_out) throw Error("cannot write " + (dir / "init.txt").string());
  if (gt) {
    std::ofstream gt_out(dir / "gt.txt");
    write_ground_truth(gt_out, *gt);
    if (!gt_out) throw Error("cannot write " + (dir / "gt.txt").string());
  }
}

}  // namespace rspatio
