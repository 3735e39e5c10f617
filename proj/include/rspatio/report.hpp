#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rspatio/evaluation.hpp"
#include "rspatio/tracker.hpp"

namespace rspatio {

/// One row of a boxes file.
struct BoxRecord {
  int frame = 0;
  BoundingBox box;
  bool occluded = false;
  double similarity = 0.0;
};

struct MetricsRecord {
  double acle_px = 0.0;
  double aor = 0.0;
  int frames = 0;
  int occluded_frames = 0;  // ground-truth occluded frames left out of the metrics
  double ms_per_frame = 0.0;
};

inline constexpr const char* kBoxesHeader = "frame_index,x,y,w,h,occluded,similarity";

void write_boxes(std::ostream& out, const TrackResult& result);
std::vector<BoxRecord> read_boxes(std::istream& in);

void write_metrics(std::ostream& out, const MetricsRecord& m);
MetricsRecord read_metrics(std::istream& in);

/// `frame_index,cle_px` rows; occluded ground-truth frames carry `occ`.
void write_cle_series(std::ostream& out, const EvalReport& report);

MetricsRecord make_metrics(const EvalReport& report, int frames, double total_ms);

struct ReportFiles {
  std::filesystem::path boxes;
  std::optional<std::filesystem::path> metrics;
  std::optional<std::filesystem::path> cle;
  std::optional<MetricsRecord> record;
};

/// Writes boxes.txt always, and metrics.txt plus cle.txt when ground truth is given.
ReportFiles emit_report(const TrackResult& result, const std::optional<GroundTruth>& gt,
                        const std::filesystem::path& out_dir);

}  // namespace rspatio
