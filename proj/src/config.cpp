#include "rspatio/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string_view>
#include <variant>

#include "text_util.hpp"

namespace rspatio {

namespace {

using Field = std::variant<int TrackerConfig::*, double TrackerConfig::*, bool TrackerConfig::*,
                           std::uint64_t TrackerConfig::*>;

struct FieldDef {
  std::string_view key;
  Field member;
};

constexpr std::array kFields{
    FieldDef{"color_levels", &TrackerConfig::color_levels},
    FieldDef{"depth_bins", &TrackerConfig::depth_bins},
    FieldDef{"grid_rows", &TrackerConfig::grid_rows},
    FieldDef{"grid_cols", &TrackerConfig::grid_cols},
    FieldDef{"alpha", &TrackerConfig::alpha},
    FieldDef{"epsilon", &TrackerConfig::epsilon},
    FieldDef{"lambda", &TrackerConfig::lambda},
    FieldDef{"kmeans_k", &TrackerConfig::kmeans_k},
    FieldDef{"kmeans_max_iter", &TrackerConfig::kmeans_max_iter},
    FieldDef{"depth_tolerance", &TrackerConfig::depth_tolerance},
    FieldDef{"occlusion_fraction", &TrackerConfig::occlusion_fraction},
    FieldDef{"similarity_threshold", &TrackerConfig::similarity_threshold},
    FieldDef{"stride_frac", &TrackerConfig::stride_frac},
    FieldDef{"top_frac", &TrackerConfig::top_frac},
    FieldDef{"search_expand", &TrackerConfig::search_expand},
    FieldDef{"search_radius_factor", &TrackerConfig::search_radius_factor},
    FieldDef{"search_inflate", &TrackerConfig::search_inflate},
    FieldDef{"meanshift_max_iter", &TrackerConfig::meanshift_max_iter},
    FieldDef{"meanshift_stop_eps", &TrackerConfig::meanshift_stop_eps},
    FieldDef{"background_margin", &TrackerConfig::background_margin},
    FieldDef{"max_occluded_frames", &TrackerConfig::max_occluded_frames},
    FieldDef{"spatial_sigma", &TrackerConfig::spatial_sigma},
    FieldDef{"clamped_ratio", &TrackerConfig::clamped_ratio},
    FieldDef{"seed", &TrackerConfig::seed},
};

void require(bool ok, std::string_view field, std::string_view what) {
  if (!ok) throw Error("config: " + std::string(field) + " " + std::string(what));
}

}  // namespace

void TrackerConfig::validate() const {
  require(color_levels >= 1 && color_levels <= 64, "color_levels", "must be in [1, 64]");
  require(depth_bins >= 1 && depth_bins <= 256, "depth_bins", "must be in [1, 256]");
  require(grid_rows >= 1, "grid_rows", "must be positive");
  require(grid_cols >= 1, "grid_cols", "must be positive");
  require(alpha > 0.0 && alpha <= 1.0, "alpha", "must be in (0, 1]");
  require(epsilon > 0.0, "epsilon", "must be positive");
  require(lambda >= 0.0 && lambda <= 1.0, "lambda", "must be in [0, 1]");
  require(kmeans_k >= 2, "kmeans_k", "must be at least 2");
  require(kmeans_max_iter >= 1, "kmeans_max_iter", "must be positive");
  require(depth_tolerance >= 0.0, "depth_tolerance", "must be nonnegative");
  require(occlusion_fraction >= 0.0 && occlusion_fraction <= 1.0, "occlusion_fraction", "must be in [0, 1]");
  require(similarity_threshold >= 0.0, "similarity_threshold", "must be nonnegative");
  require(stride_frac > 0.0 && stride_frac <= 1.0, "stride_frac", "must be in (0, 1]");
  require(top_frac > 0.0 && top_frac <= 1.0, "top_frac", "must be in (0, 1]");
  require(search_expand >= 1.0, "search_expand", "must be at least 1");
  require(search_radius_factor > 0.0, "search_radius_factor", "must be positive");
  require(search_inflate >= 1.0, "search_inflate", "must be at least 1");
  require(meanshift_max_iter >= 1, "meanshift_max_iter", "must be positive");
  require(meanshift_stop_eps > 0.0, "meanshift_stop_eps", "must be positive");
  require(background_margin >= 0, "background_margin", "must be nonnegative");
  require(max_occluded_frames >= 1, "max_occluded_frames", "must be positive");
  require(spatial_sigma > 0.0, "spatial_sigma", "must be positive");
}

DescriptorParams TrackerConfig::descriptor_params() const {
  DescriptorParams p;
  p.quantizer = color_quantizer();
  p.grid = {grid_rows, grid_cols};
  p.similarity.ratio_mode = clamped_ratio ? RatioMode::clamped : RatioMode::literal;
  p.similarity.spatial_sigma = spatial_sigma;
  return p;
}

ModelParams TrackerConfig::model_params() const {
  return {color_quantizer(), alpha, epsilon, seed, background_margin};
}

TrackerConfig parse_config(std::istream& in) {
  TrackerConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view content = text::trim(text::strip_comment(line));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) throw Error("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string_view key = text::trim(content.substr(0, eq));
    const std::string_view value = text::trim(content.substr(eq + 1));

    const auto it = std::find_if(kFields.begin(), kFields.end(), [&](const FieldDef& f) { return f.key == key; });
    if (it == kFields.end()) throw Error("unknown config key: " + std::string(key));
    std::visit(
        [&](auto member) {
          using T = std::remove_reference_t<decltype(cfg.*member)>;
          cfg.*member = text::parse_value<T>(value, key);
        },
        it->member);
  }
  cfg.validate();
  return cfg;
}

TrackerConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file " + path.string());
  return parse_config(in);
}

std::string serialize_config(const TrackerConfig& cfg) {
  std::string out;
  for (const FieldDef& f : kFields) {
    out += f.key;
    out += '=';
    std::visit([&](auto member) { out += text::format_value(cfg.*member); }, f.member);
    out += '\n';
  }
  return out;
}

void apply_env_overrides(TrackerConfig& cfg) {
  if (const char* env = std::getenv("RSPATIO_SEED"); env && *env)
    cfg.seed = text::parse_value<std::uint64_t>(env, "RSPATIO_SEED");
}

}  // namespace rspatio
