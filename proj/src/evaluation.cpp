#include "rspatio/evaluation.hpp"

namespace rspatio {

double center_error(const BoundingBox& pred, const BoundingBox& gt) { return distance(pred.center(), gt.center()); }

double overlap_ratio(const BoundingBox& pred, const BoundingBox& gt) {
  if (pred.empty() || gt.empty()) return 0.0;
  const long long inter = intersect(pred, gt).area();
  const long long uni = pred.area() + gt.area() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

EvalReport evaluate(std::span<const BoundingBox> preds, const GroundTruth& gts) {
  if (preds.size() != gts.size()) throw Error("prediction and ground-truth lengths differ");
  EvalReport r;
  r.per_frame_cle.resize(preds.size());
  double cle_sum = 0.0;
  double overlap_sum = 0.0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (!gts[i]) {
      ++r.occluded_frames;
      continue;
    }
    const double e = center_error(preds[i], *gts[i]);
    r.per_frame_cle[i] = e;
    cle_sum += e;
    overlap_sum += overlap_ratio(preds[i], *gts[i]);
    ++r.evaluated_frames;
  }
  if (r.evaluated_frames == 0) throw Error("no evaluated frames");
  r.acle = cle_sum / r.evaluated_frames;
  r.aor = overlap_sum / r.evaluated_frames;
  return r;
}

double acle(std::span<const BoundingBox> preds, const GroundTruth& gts) { return evaluate(preds, gts).acle; }

double aor(std::span<const BoundingBox> preds, const GroundTruth& gts) { return evaluate(preds, gts).aor; }

}  // namespace rspatio
