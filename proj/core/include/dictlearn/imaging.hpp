#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "dictlearn/matrix.hpp"
#include "dictlearn/online_nmf.hpp"

namespace dictlearn {

enum Channel : int { kRed = 0, kGreen = 1, kBlue = 2 };

/// RGB image with intensities in [0, 1], stored (row, col, channel) interleaved.
class ColorImage {
 public:
  ColorImage() = default;
  ColorImage(int height, int width, double fill = 0.0);

  int height() const { return height_; }
  int width() const { return width_; }

  double& at(int row, int col, int channel) {
    return data_[(static_cast<std::size_t>(row) * width_ + col) * 3 + channel];
  }
  double at(int row, int col, int channel) const {
    return data_[(static_cast<std::size_t>(row) * width_ + col) * 3 + channel];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool operator==(const ColorImage&) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

/// Single-channel image with intensities in [0, 1].
class GrayImage {
 public:
  GrayImage() = default;
  GrayImage(int height, int width, double fill = 0.0);

  int height() const { return height_; }
  int width() const { return width_; }

  double& at(int row, int col) { return data_[static_cast<std::size_t>(row) * width_ + col]; }
  double at(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool operator==(const GrayImage&) const = default;

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<double> data_;
};

/// Top-left corner of a p x p patch.
struct Anchor {
  int row = 0;
  int col = 0;
  auto operator<=>(const Anchor&) const = default;
};

/// Regular patch grid. Positions advance by `stride`; the last position along
/// each axis is clamped so the final patch ends exactly at the border.
struct PatchGrid {
  int p = 0;
  int stride = 0;
  int height = 0;
  int width = 0;
  std::vector<Anchor> anchors;  // row-major over (row position, col position)

  static PatchGrid regular(int height, int width, int p, int stride);
};

/// Clamped 1-D positions {0, s, 2s, ...} covering [0, extent) with length-p windows.
std::vector<int> grid_positions(int extent, int p, int stride);

/// Length 3p^2 column: red block, then blue, then green; each block
/// column-major within the patch (row index fastest).
Vector vectorize_patch(const ColorImage& image, Anchor at, int p);

/// Inverse of vectorize_patch for a standalone p x p patch.
ColorImage devectorize_patch(const Eigen::Ref<const Vector>& v, int p);

/// Length p^2 column, column-major within the patch.
Vector vectorize_gray_patch(const GrayImage& image, Anchor at, int p);
GrayImage devectorize_gray_patch(const Eigen::Ref<const Vector>& v, int p);

struct RandomPatches {
  int count = 1000;
  std::uint64_t seed = 0;
};
struct GridPatches {
  int stride = 1;
};
using PatchSampling = std::variant<RandomPatches, GridPatches>;

struct PatchSet {
  Matrix patches;  // 3p^2 x n
  std::vector<Anchor> anchors;
};

/// Random mode draws anchors uniformly with replacement; grid mode emits
/// PatchGrid::regular. Throws ShapeError if p exceeds either image side.
PatchSet extract_patches(const ColorImage& image, int p, const PatchSampling& sampling);

/// Uniform patch averaging: each pixel is the mean of the covering patch
/// values, clamped to [0, 1]. Throws CoverageError naming the first
/// uncovered pixel.
ColorImage average_patches(const Matrix& patches, std::span<const Anchor> anchors, int p,
                           int height, int width);
GrayImage average_gray_patches(const Matrix& patches, std::span<const Anchor> anchors, int p,
                               int height, int width);

struct PatchTrainingConfig {
  int p = 20;
  int r = 100;
  int batches = 30;
  int batch_size = 1000;
  double lambda = 0.1;
  std::uint64_t seed = 0;
  OnlineOptions online;
};

/// Online dictionary over random vectorized patches: one learner step per
/// batch. Each patch picks an image uniformly, then an anchor uniformly.
Matrix train_patch_dictionary(std::span<const ColorImage> images,
                              const PatchTrainingConfig& config);

/// Same run, returning the full learner state (for persistence).
OnlineDictionaryState train_patch_state(std::span<const ColorImage> images,
                                        const PatchTrainingConfig& config);

/// Grid-extract with stride p - overlap, code every patch against W,
/// replace it by W h and patch-average.
ColorImage compress_image(const ColorImage& image, const Matrix& W, int p, int overlap,
                          double lambda, const OnlineOptions& opts = {});

/// Linear luma weights applied to the stored R, G, B values.
inline constexpr double kGrayRed = 0.2989;
inline constexpr double kGrayGreen = 0.5870;
inline constexpr double kGrayBlue = 0.1140;

GrayImage to_grayscale(const ColorImage& image);

/// Collapses each atom's red/blue/green blocks into one p^2 gray block with
/// the same weights, so to_grayscale(W h) == to_grayscale_dictionary(W) h.
Matrix to_grayscale_dictionary(const Matrix& W, int p);

/// Class label per grid anchor.
using ClassLabelMap = std::map<Anchor, int>;

/// For every grid anchor: code the gray patch against the gray version of
/// its class dictionary and emit the color patch W_c h; then patch-average.
/// Throws CoverageError for an unlabeled anchor or a class without a
/// dictionary, ShapeError when a dictionary does not have 3p^2 rows.
ColorImage restore_color(const GrayImage& gray, const ClassLabelMap& labels,
                         const std::map<int, Matrix>& dictionaries, int p, int overlap,
                         double lambda, const OnlineOptions& opts = {});

/// 10 log10(1 / MSE) over all pixels and channels.
double psnr(const ColorImage& reference, const ColorImage& test);

}  // namespace dictlearn
