#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "rspatio/sequence.hpp"

namespace rspatio {

ColorImage read_color_image(const std::filesystem::path& path) {
  const cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) throw Error("cannot read color image " + path.string());
  ColorImage img(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const auto* src = bgr.ptr<cv::Vec3b>(y);
    auto dst = img.row(y);
    for (int x = 0; x < bgr.cols; ++x) dst[x] = {src[x][2], src[x][1], src[x][0]};
  }
  return img;
}

void write_color_image(const std::filesystem::path& path, const ColorImage& img) {
  cv::Mat bgr(img.height(), img.width(), CV_8UC3);
  for (int y = 0; y < img.height(); ++y) {
    auto* dst = bgr.ptr<cv::Vec3b>(y);
    const auto src = img.row(y);
    for (int x = 0; x < img.width(); ++x) dst[x] = {src[x].b, src[x].g, src[x].r};
  }
  if (!cv::imwrite(path.string(), bgr)) throw Error("cannot write image " + path.string());
}

Image<std::uint16_t> read_depth_image(const std::filesystem::path& path, bool* was_8bit) {
  const cv::Mat m = cv::imread(path.string(), cv::IMREAD_ANYDEPTH | cv::IMREAD_GRAYSCALE);
  if (m.empty()) throw Error("cannot read depth image " + path.string());
  if (m.depth() != CV_16U && m.depth() != CV_8U) throw Error("unsupported depth image format " + path.string());
  if (was_8bit) *was_8bit = m.depth() == CV_8U;
  Image<std::uint16_t> img(m.cols, m.rows);
  for (int y = 0; y < m.rows; ++y) {
    auto dst = img.row(y);
    if (m.depth() == CV_16U) {
      const auto* src = m.ptr<std::uint16_t>(y);
      std::copy(src, src + m.cols, dst.begin());
    } else {
      const auto* src = m.ptr<std::uint8_t>(y);
      std::copy(src, src + m.cols, dst.begin());
    }
  }
  return img;
}

void write_depth_image(const std::filesystem::path& path, const Image<std::uint16_t>& img) {
  cv::Mat m(img.height(), img.width(), CV_16UC1);
  for (int y = 0; y < img.height(); ++y) {
    const auto src = img.row(y);
    std::copy(src.begin(), src.end(), m.ptr<std::uint16_t>(y));
  }
  if (!cv::imwrite(path.string(), m)) throw Error("cannot write image " + path.string());
}

}  // namespace rspatio
