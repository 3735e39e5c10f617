#include "rspatio/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>

#include "text_util.hpp"

namespace rspatio {

namespace {

// Reflect p into [0, limit].
double bounce(double p, double limit) {
  if (limit <= 0.0) return 0.0;
  const double period = 2.0 * limit;
  double u = std::fmod(p, period);
  if (u < 0.0) u += period;
  return u > limit ? period - u : u;
}

Rgb parse_rgb(std::string_view s) {
  const auto parts = text::split(s, ',');
  if (parts.size() != 3) throw Error("expected r,g,b but got '" + std::string(s) + "'");
  Rgb c;
  std::uint8_t* ch[3] = {&c.r, &c.g, &c.b};
  for (int i = 0; i < 3; ++i) {
    const int v = text::parse_value<int>(parts[i], "color channel");
    if (v < 0 || v > 255) throw Error("color channel out of range: " + std::string(parts[i]));
    *ch[i] = static_cast<std::uint8_t>(v);
  }
  return c;
}

std::string format_rgb(Rgb c) {
  return std::to_string(c.r) + "," + std::to_string(c.g) + "," + std::to_string(c.b);
}

std::pair<double, double> parse_pair(std::string_view s) {
  const auto parts = text::split(s, ',');
  if (parts.size() != 2) throw Error("expected two comma-separated numbers but got '" + std::string(s) + "'");
  return {text::parse_value<double>(parts[0], "vector x"), text::parse_value<double>(parts[1], "vector y")};
}

std::uint16_t parse_depth(std::string_view s) {
  const int v = text::parse_value<int>(s, "depth");
  if (v <= 0 || v > 65535) throw Error("depth must be in [1, 65535] mm");
  return static_cast<std::uint16_t>(v);
}

}  // namespace

void SceneSpec::validate() const {
  if (width <= 0 || height <= 0) throw Error("scene size must be positive");
  if (frames <= 0) throw Error("scene needs at least one frame");
  if (noise < 0 || noise > 127) throw Error("noise must be in [0, 127]");
  if (target.start.empty()) throw Error("target size must be positive");
  if (target.start.w > width || target.start.h > height) throw Error("target larger than frame");
  if (!(background_depth_mm > target.depth_mm)) throw Error("background must be farther than the target");
  if (occluder) {
    if (occluder->rect.start.empty()) throw Error("occluder size must be positive");
    if (!(occluder->rect.depth_mm < target.depth_mm)) throw Error("invalid occluder");
    if (occluder->first_frame > occluder->last_frame) throw Error("occluder frame range is empty");
  }
}

BoundingBox target_box_at(const SceneSpec& spec, int t) {
  const MovingRect& r = spec.target;
  const double x = bounce(r.start.x + r.vx * t, spec.width - r.start.w);
  const double y = bounce(r.start.y + r.vy * t, spec.height - r.start.h);
  return {static_cast<int>(std::lround(x)), static_cast<int>(std::lround(y)), r.start.w, r.start.h};
}

std::optional<BoundingBox> occluder_box_at(const SceneSpec& spec, int t) {
  if (!spec.occluder || t < spec.occluder->first_frame || t > spec.occluder->last_frame) return std::nullopt;
  const MovingRect& r = spec.occluder->rect;
  return BoundingBox{static_cast<int>(std::lround(r.start.x + r.vx * t)),
                     static_cast<int>(std::lround(r.start.y + r.vy * t)), r.start.w, r.start.h};
}

SyntheticSequence render_scene(const SceneSpec& spec) {
  spec.validate();
  SyntheticSequence seq;
  seq.init = target_box_at(spec, 0);
  std::mt19937_64 rng(spec.seed);
  const auto span = static_cast<std::uint64_t>(2 * spec.noise + 1);
  auto noisy = [&](std::uint8_t v) {
    if (spec.noise == 0) return v;
    const int n = static_cast<int>(rng() % span) - spec.noise;
    return static_cast<std::uint8_t>(std::clamp(int(v) + n, 0, 255));
  };
  const BoundingBox bounds = frame_box(spec.width, spec.height);

  for (int t = 0; t < spec.frames; ++t) {
    const BoundingBox target = target_box_at(spec, t);
    const auto occ = occluder_box_at(spec, t);

    RawFrame f{ColorImage(spec.width, spec.height), Image<std::uint16_t>(spec.width, spec.height)};
    for (int y = 0; y < spec.height; ++y) {
      for (int x = 0; x < spec.width; ++x) {
        Rgb c = spec.background;
        std::uint16_t d = spec.background_depth_mm;
        if (target.contains(x, y)) {
          c = spec.target.color;
          d = spec.target.depth_mm;
        }
        if (occ && occ->contains(x, y)) {
          c = spec.occluder->rect.color;
          d = spec.occluder->rect.depth_mm;
        }
        f.color.at(x, y) = {noisy(c.r), noisy(c.g), noisy(c.b)};
        f.depth.at(x, y) = d;
      }
    }
    seq.raw.push_back(std::move(f));

    const BoundingBox visible = intersect(target, bounds);
    const bool hidden = occ && contains(intersect(*occ, bounds), visible);
    seq.ground_truth.emplace_back(hidden ? std::nullopt : std::optional<BoundingBox>(target));
  }
  return seq;
}

SyntheticSequence synthesize_sequence(const SceneSpec& spec, const std::filesystem::path& out_dir) {
  SyntheticSequence seq = render_scene(spec);
  write_sequence(out_dir, seq.raw, seq.init, seq.ground_truth);
  return seq;
}

SceneSpec parse_scene(std::istream& in) {
  SceneSpec s;
  OccluderSpec occ;
  bool has_occluder = false;
  std::string line;
  while (std::getline(in, line)) {
    const auto content = text::trim(text::strip_comment(line));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) throw Error("scene: expected key=value in '" + std::string(content) + "'");
    const auto key = text::trim(content.substr(0, eq));
    const auto value = text::trim(content.substr(eq + 1));

    if (key == "width") {
      s.width = text::parse_value<int>(value, key);
    } else if (key == "height") {
      s.height = text::parse_value<int>(value, key);
    } else if (key == "frames") {
      s.frames = text::parse_value<int>(value, key);
    } else if (key == "noise") {
      s.noise = text::parse_value<int>(value, key);
    } else if (key == "seed") {
      s.seed = text::parse_value<std::uint64_t>(value, key);
    } else if (key == "background_color") {
      s.background = parse_rgb(value);
    } else if (key == "background_depth_mm") {
      s.background_depth_mm = parse_depth(value);
    } else if (key == "target_box") {
      s.target.start = text::parse_box(value);
    } else if (key == "target_velocity") {
      std::tie(s.target.vx, s.target.vy) = parse_pair(value);
    } else if (key == "target_color") {
      s.target.color = parse_rgb(value);
    } else if (key == "target_depth_mm") {
      s.target.depth_mm = parse_depth(value);
    } else if (key.starts_with("occluder_")) {
      has_occluder = true;
      if (key == "occluder_box") {
        occ.rect.start = text::parse_box(value);
      } else if (key == "occluder_velocity") {
        std::tie(occ.rect.vx, occ.rect.vy) = parse_pair(value);
      } else if (key == "occluder_color") {
        occ.rect.color = parse_rgb(value);
      } else if (key == "occluder_depth_mm") {
        occ.rect.depth_mm = parse_depth(value);
      } else if (key == "occluder_frames") {
        const auto [a, b] = parse_pair(value);
        occ.first_frame = static_cast<int>(a);
        occ.last_frame = static_cast<int>(b);
      } else {
        throw Error("unknown scene key: " + std::string(key));
      }
    } else {
      throw Error("unknown scene key: " + std::string(key));
    }
  }
  if (has_occluder) s.occluder = occ;
  s.validate();
  return s;
}

SceneSpec load_scene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scene file " + path.string());
  return parse_scene(in);
}

std::string serialize_scene(const SceneSpec& s) {
  std::string out;
  auto kv = [&out](std::string_view k, const std::string& v) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  };
  auto pair = [](double a, double b) { return text::format_value(a) + "," + text::format_value(b); };
  kv("width", std::to_string(s.width));
  kv("height", std::to_string(s.height));
  kv("frames", std::to_string(s.frames));
  kv("noise", std::to_string(s.noise));
  kv("seed", std::to_string(s.seed));
  kv("background_color", format_rgb(s.background));
  kv("background_depth_mm", std::to_string(s.background_depth_mm));
  kv("target_box", text::format_box(s.target.start));
  kv("target_velocity", pair(s.target.vx, s.target.vy));
  kv("target_color", format_rgb(s.target.color));
  kv("target_depth_mm", std::to_string(s.target.depth_mm));
  if (s.occluder) {
    kv("occluder_box", text::format_box(s.occluder->rect.start));
    kv("occluder_velocity", pair(s.occluder->rect.vx, s.occluder->rect.vy));
    kv("occluder_color", format_rgb(s.occluder->rect.color));
    kv("occluder_depth_mm", std::to_string(s.occluder->rect.depth_mm));
    kv("occluder_frames", std::to_string(s.occluder->first_frame) + "," + std::to_string(s.occluder->last_frame));
  }
  return out;
}

SceneSpec linear_motion_scene() {
  SceneSpec s;
  s.noise = 5;
  return s;
}

SceneSpec occlusion_scene() {
  SceneSpec s = linear_motion_scene();
  // Moves left while the target moves right; it covers the whole target from
  // frame 40 through frame 55.
  s.occluder = OccluderSpec{{{180, 70, 90, 60}, -2.0, 0.0, {48, 48, 208}, 1000}, 0, s.frames - 1};
  return s;
}

}  // namespace rspatio
