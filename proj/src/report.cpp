#include "rspatio/report.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "text_util.hpp"

namespace fs = std::filesystem;

namespace rspatio {

void write_boxes(std::ostream& out, const TrackResult& result) {
  out << kBoxesHeader << '\n';
  for (std::size_t i = 0; i < result.frames.size(); ++i) {
    const FrameResult& f = result.frames[i];
    out << i << ',' << text::format_box(f.box) << ',' << (f.occluded ? 1 : 0) << ','
        << text::format_fixed(f.similarity, 6) << '\n';
  }
}

std::vector<BoxRecord> read_boxes(std::istream& in) {
  std::vector<BoxRecord> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    const auto content = text::trim(line);
    if (content.empty()) continue;
    if (header) {
      header = false;
      if (content != kBoxesHeader) throw Error("boxes file: unexpected header '" + std::string(content) + "'");
      continue;
    }
    const auto parts = text::split(content, ',');
    if (parts.size() != 7) throw Error("boxes file: expected 7 fields in '" + std::string(content) + "'");
    BoxRecord r;
    r.frame = text::parse_value<int>(parts[0], "frame_index");
    r.box = {text::parse_value<int>(parts[1], "x"), text::parse_value<int>(parts[2], "y"),
             text::parse_value<int>(parts[3], "w"), text::parse_value<int>(parts[4], "h")};
    r.occluded = text::parse_value<bool>(parts[5], "occluded");
    r.similarity = text::parse_value<double>(parts[6], "similarity");
    rows.push_back(r);
  }
  if (header) throw Error("boxes file is empty");
  return rows;
}

void write_metrics(std::ostream& out, const MetricsRecord& m) {
  out << "acle_px=" << text::format_fixed(m.acle_px, 4) << '\n'
      << "aor=" << text::format_fixed(m.aor, 4) << '\n'
      << "frames=" << m.frames << '\n'
      << "occluded_frames=" << m.occluded_frames << '\n'
      << "ms_per_frame=" << text::format_fixed(m.ms_per_frame, 3) << '\n';
}

MetricsRecord read_metrics(std::istream& in) {
  MetricsRecord m;
  std::string line;
  while (std::getline(in, line)) {
    const auto content = text::trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) throw Error("metrics: expected key=value");
    const auto key = content.substr(0, eq);
    const auto value = content.substr(eq + 1);
    if (key == "acle_px") m.acle_px = text::parse_value<double>(value, key);
    else if (key == "aor") m.aor = text::parse_value<double>(value, key);
    else if (key == "frames") m.frames = text::parse_value<int>(value, key);
    else if (key == "occluded_frames") m.occluded_frames = text::parse_value<int>(value, key);
    else if (key == "ms_per_frame") m.ms_per_frame = text::parse_value<double>(value, key);
    else throw Error("metrics: unknown key " + std::string(key));
  }
  return m;
}

void write_cle_series(std::ostream& out, const EvalReport& report) {
  out << "frame_index,cle_px\n";
  for (std::size_t i = 0; i < report.per_frame_cle.size(); ++i) {
    const auto& e = report.per_frame_cle[i];
    out << i << ',' << (e ? text::format_fixed(*e, 4) : std::string("occ")) << '\n';
  }
}

MetricsRecord make_metrics(const EvalReport& report, int frames, double total_ms) {
  return {report.acle, report.aor, frames, report.occluded_frames, frames > 0 ? total_ms / frames : 0.0};
}

namespace {

std::ofstream open_out(const fs::path& p) {
  std::ofstream out(p);
  if (!out) throw Error("cannot write " + p.string());
  return out;
}

}  // namespace

ReportFiles emit_report(const TrackResult& result, const std::optional<GroundTruth>& gt, const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (!fs::is_directory(out_dir)) throw Error("cannot create output folder " + out_dir.string());

  ReportFiles files;
  files.boxes = out_dir / "boxes.txt";
  {
    auto out = open_out(files.boxes);
    write_boxes(out, result);
    if (!out) throw Error("cannot write " + files.boxes.string());
  }
  if (!gt) return files;

  const std::vector<BoundingBox> preds = result.boxes();
  const EvalReport report = evaluate(preds, *gt);
  files.record = make_metrics(report, static_cast<int>(result.frames.size()), result.total_ms);
  files.metrics = out_dir / "metrics.txt";
  files.cle = out_dir / "cle.txt";
  {
    auto out = open_out(*files.metrics);
    write_metrics(out, *files.record);
  }
  {
    auto out = open_out(*files.cle);
    write_cle_series(out, report);
  }
  return files;
}

}  // namespace rspatio
