#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rspatio/depth_segmentation.hpp"
#include "rspatio/evaluation.hpp"
#include "rspatio/types.hpp"

namespace rspatio {

/// Ordered, random-access stream of RGB-D frames.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::size_t size() const = 0;
  virtual RgbdFrame frame(std::size_t index) const = 0;
};

class MemorySequence final : public FrameSource {
 public:
  MemorySequence() = default;
  explicit MemorySequence(std::vector<RgbdFrame> frames) : frames_(std::move(frames)) {}

  std::size_t size() const override { return frames_.size(); }
  RgbdFrame frame(std::size_t index) const override { return frames_.at(index); }
  void push_back(RgbdFrame f) { frames_.push_back(std::move(f)); }

 private:
  std::vector<RgbdFrame> frames_;
};

/// Color image plus undecoded sensor depth, as stored on disk.
struct RawFrame {
  ColorImage color;
  Image<std::uint16_t> depth;  // millimeters, 0 = no reading
};

/// Normalize every frame against one sequence-wide range so a fixed surface
/// keeps the same normalized depth throughout the sequence.
std::vector<RgbdFrame> normalize_frames(const std::vector<RawFrame>& raw);

/// Frames decoded lazily from `rgb/` and `depth/` folders.
class DirectorySequence final : public FrameSource {
 public:
  DirectorySequence(std::vector<std::filesystem::path> color, std::vector<std::filesystem::path> depth,
                    DepthRange range, bool depth_is_normalized);

  std::size_t size() const override { return color_.size(); }
  RgbdFrame frame(std::size_t index) const override;

 private:
  std::vector<std::filesystem::path> color_;
  std::vector<std::filesystem::path> depth_;
  DepthRange range_;
  bool depth_is_normalized_;
};

struct LoadedSequence {
  std::string name;
  std::unique_ptr<FrameSource> frames;
  BoundingBox init;
  std::optional<GroundTruth> ground_truth;
};

/// Read a sequence directory: `rgb/` and `depth/` with numerically indexed
/// images (the last digit run of each file stem is the index), `init.txt`
/// holding "x,y,w,h" and optionally `gt.txt` with one "x,y,w,h" or "occ" per frame.
LoadedSequence load_sequence(const std::filesystem::path& dir);

BoundingBox parse_init(std::istream& in);
GroundTruth parse_ground_truth(std::istream& in);
void write_ground_truth(std::ostream& out, const GroundTruth& gt);

/// Write frames in the layout load_sequence reads (zero-padded PNGs).
void write_sequence(const std::filesystem::path& dir, const std::vector<RawFrame>& frames, const BoundingBox& init,
                    const std::optional<GroundTruth>& gt);

// Image file I/O (PNG and anything else the codec backend handles).
ColorImage read_color_image(const std::filesystem::path& path);
void write_color_image(const std::filesystem::path& path, const ColorImage& img);
/// 16-bit images come back as-is; 8-bit images are widened.
Image<std::uint16_t> read_depth_image(const std::filesystem::path& path, bool* was_8bit = nullptr);
void write_depth_image(const std::filesystem::path& path, const Image<std::uint16_t>& img);

}  // namespace rspatio
