// rspatio command line: track, eval, synth, bench.

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rspatio/config.hpp"
#include "rspatio/evaluation.hpp"
#include "rspatio/report.hpp"
#include "rspatio/sequence.hpp"
#include "rspatio/synthetic.hpp"
#include "rspatio/tracker.hpp"

namespace fs = std::filesystem;
using namespace rspatio;

namespace {

struct Reference {
  double acle;
  double aor;
};

// Reference ACLE / AOR on the Princeton RGB-D sequences.
const std::map<std::string, Reference> kReference{
    {"bear_front", {3.8, 0.92}},     {"child_no1", {8.7, 0.80}},   {"face_occ5", {6.3, 0.96}},
    {"new_ex_occ4", {11.2, 0.93}},   {"zcup_move_1", {17.4, 0.45}}, {"dog_occ_2", {8.7, 0.91}},
    {"express1_occ", {13.8, 0.77}},  {"library2_1_occ", {10.8, 0.88}}, {"hand_occ", {16.8, 0.82}},
};

std::optional<Reference> reference_for(std::string name) {
  for (char& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto it = kReference.find(name);
  if (it == kReference.end()) return std::nullopt;
  return it->second;
}

TrackerConfig config_from(const std::string& path) {
  TrackerConfig cfg = path.empty() ? TrackerConfig{} : load_config(path);
  apply_env_overrides(cfg);
  cfg.validate();
  return cfg;
}

void print_metrics(const MetricsRecord& m) { write_metrics(std::cout, m); }

int cmd_track(const std::string& seq_dir, const std::string& config, const std::string& out) {
  const TrackerConfig cfg = config_from(config);
  const LoadedSequence seq = load_sequence(seq_dir);
  const TrackResult result = run_tracker(*seq.frames, seq.init, cfg);
  const ReportFiles files = emit_report(result, seq.ground_truth, out);

  int failed = 0, occluded = 0;
  for (const FrameResult& f : result.frames) {
    failed += !f.failure.empty();
    occluded += f.occluded;
  }
  std::cout << seq.name << ": " << result.frames.size() << " frames, " << occluded << " flagged occluded, " << failed
            << " coasted\n";
  std::cout << "boxes: " << files.boxes.string() << '\n';
  if (files.record) {
    std::cout << "metrics: " << files.metrics->string() << '\n';
    print_metrics(*files.record);
  } else {
    std::cout << "metrics: absent (no gt.txt)\n";
  }
  return 0;
}

int cmd_eval(const std::string& boxes_path, const std::string& gt_path) {
  std::ifstream boxes_in(boxes_path);
  if (!boxes_in) throw Error("cannot open " + boxes_path);
  std::ifstream gt_in(gt_path);
  if (!gt_in) throw Error("cannot open " + gt_path);

  const auto rows = read_boxes(boxes_in);
  const GroundTruth gt = parse_ground_truth(gt_in);
  std::vector<BoundingBox> preds;
  for (const BoxRecord& r : rows) preds.push_back(r.box);
  const EvalReport report = evaluate(preds, gt);
  print_metrics(make_metrics(report, static_cast<int>(preds.size()), 0.0));
  return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out) {
  const SceneSpec spec = load_scene(spec_path);
  const SyntheticSequence seq = synthesize_sequence(spec, out);
  int occ = 0;
  for (const auto& g : seq.ground_truth) occ += !g;
  std::cout << "wrote " << seq.raw.size() << " frames to " << out << " (" << occ << " fully occluded)\n";
  return 0;
}

int cmd_bench(const std::string& root, const std::string& config, const std::string& out) {
  const TrackerConfig cfg = config_from(config);
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory() && fs::exists(e.path() / "init.txt")) dirs.push_back(e.path());
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw Error("no sequences under " + root);

  std::printf("%-18s %6s %9s %7s %9s %7s %9s\n", "sequence", "frames", "ACLE", "AOR", "ref ACLE", "ref AOR", "ms/frame");
  int failures = 0;
  for (const fs::path& dir : dirs) {
    const std::string name = dir.filename().string();
    try {
      const LoadedSequence seq = load_sequence(dir);
      const TrackResult result = run_tracker(*seq.frames, seq.init, cfg);
      const fs::path seq_out = out.empty() ? fs::path() : fs::path(out) / name;
      std::optional<MetricsRecord> m;
      if (!seq_out.empty()) {
        m = emit_report(result, seq.ground_truth, seq_out).record;
      } else if (seq.ground_truth) {
        m = make_metrics(evaluate(result.boxes(), *seq.ground_truth), static_cast<int>(result.frames.size()),
                         result.total_ms);
      }
      const auto ref = reference_for(name);
      const double ms = result.frames.empty() ? 0.0 : result.total_ms / result.frames.size();
      std::printf("%-18s %6zu ", name.c_str(), result.frames.size());
      if (m) std::printf("%9.2f %7.3f ", m->acle_px, m->aor);
      else std::printf("%9s %7s ", "-", "-");
      if (ref) std::printf("%9.1f %7.2f ", ref->acle, ref->aor);
      else std::printf("%9s %7s ", "-", "-");
      std::printf("%9.2f\n", ms);
    } catch (const std::exception& e) {
      ++failures;
      std::printf("%-18s error: %s\n", name.c_str(), e.what());
    }
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RGB-D single-target tracker with r-spatiogram occlusion recovery"};
  app.require_subcommand(1);

  std::string seq_dir, config, out, boxes, gt, spec, root;

  auto* track = app.add_subcommand("track", "Track one sequence and write boxes/metrics/CLE files");
  track->add_option("seq-dir", seq_dir, "Sequence directory (rgb/, depth/, init.txt, optional gt.txt)")->required();
  track->add_option("--config", config, "Tracker config file (key=value)");
  track->add_option("--out", out, "Output directory")->required();

  auto* eval = app.add_subcommand("eval", "Score a boxes file against ground truth");
  eval->add_option("boxes-file", boxes)->required();
  eval->add_option("gt-file", gt)->required();

  auto* synth = app.add_subcommand("synth", "Render a synthetic RGB-D sequence from a scene file");
  synth->add_option("spec-file", spec)->required();
  synth->add_option("--out", out, "Output sequence directory")->required();

  auto* bench = app.add_subcommand("bench", "Track every sequence under a dataset root and print a summary table");
  bench->add_option("dataset-root", root, "Directory whose subdirectories are sequences")->required();
  bench->add_option("--config", config, "Tracker config file");
  bench->add_option("--out", out, "Write per-sequence reports under this directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*track) return cmd_track(seq_dir, config, out);
    if (*eval) return cmd_eval(boxes, gt);
    if (*synth) return cmd_synth(spec, out);
    if (*bench) return cmd_bench(root, config, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
