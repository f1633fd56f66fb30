#include "dictlearn/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dictlearn/errors.hpp"
#include "dictlearn/rng.hpp"
#include "dictlearn/solvers.hpp"

namespace dictlearn {
namespace {

// Offsets of the red, green and blue blocks inside a vectorized patch.
constexpr int kBlockOf[3] = {0, 2, 1};

void check_patch_fits(int height, int width, int p) {
  if (p < 1 || p > height || p > width) {
    throw ShapeError("patch side " + std::to_string(p) + " does not fit a " +
                     std::to_string(height) + "x" + std::to_string(width) + " image");
  }
}

int stride_for_overlap(int p, int overlap) {
  if (overlap < 0 || overlap >= p)
    throw InvalidArgumentError("overlap must satisfy 0 <= overlap < p");
  return p - overlap;
}

template <typename Image, typename Accumulate>
Image average_into(std::span<const Anchor> anchors, int p, int height, int width, int channels,
                   Accumulate&& accumulate) {
  std::vector<double> sum(static_cast<std::size_t>(height) * width * channels, 0.0);
  std::vector<int> count(static_cast<std::size_t>(height) * width, 0);
  for (std::size_t n = 0; n < anchors.size(); ++n) {
    const Anchor a = anchors[n];
    if (a.row < 0 || a.col < 0 || a.row + p > height || a.col + p > width) {
      throw ShapeError("patch anchor (" + std::to_string(a.row) + ", " + std::to_string(a.col) +
                       ") lies outside the image");
    }
    for (int j = 0; j < p; ++j) {
      for (int i = 0; i < p; ++i) {
        const std::size_t pixel = static_cast<std::size_t>(a.row + i) * width + (a.col + j);
        ++count[pixel];
        accumulate(n, i, j, &sum[pixel * channels]);
      }
    }
  }
  Image out(height, width);
  std::span<double> dst = out.data();
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const std::size_t pixel = static_cast<std::size_t>(row) * width + col;
      if (count[pixel] == 0) {
        throw CoverageError("pixel (" + std::to_string(row) + ", " + std::to_string(col) +
                            ") is not covered by any patch");
      }
      for (int c = 0; c < channels; ++c) {
        dst[pixel * channels + c] =
            std::clamp(sum[pixel * channels + c] / count[pixel], 0.0, 1.0);
      }
    }
  }
  return out;
}

}  // namespace

ColorImage::ColorImage(int height, int width, double fill)
    : height_(height), width_(width),
      data_(static_cast<std::size_t>(height) * width * 3, fill) {
  if (height < 0 || width < 0) throw InvalidArgumentError("image dimensions must be >= 0");
}

GrayImage::GrayImage(int height, int width, double fill)
    : height_(height), width_(width), data_(static_cast<std::size_t>(height) * width, fill) {
  if (height < 0 || width < 0) throw InvalidArgumentError("image dimensions must be >= 0");
}

std::vector<int> grid_positions(int extent, int p, int stride) {
  if (p < 1 || p > extent)
    throw ShapeError("patch side " + std::to_string(p) + " exceeds extent " +
                     std::to_string(extent));
  if (stride < 1 || stride > p) throw InvalidArgumentError("stride must satisfy 1 <= stride <= p");
  std::vector<int> positions;
  for (int pos = 0; pos + p <= extent; pos += stride) positions.push_back(pos);
  if (positions.back() + p < extent) positions.push_back(extent - p);
  return positions;
}

PatchGrid PatchGrid::regular(int height, int width, int p, int stride) {
  PatchGrid grid{p, stride, height, width, {}};
  const std::vector<int> rows = grid_positions(height, p, stride);
  const std::vector<int> cols = grid_positions(width, p, stride);
  grid.anchors.reserve(rows.size() * cols.size());
  for (int r : rows)
    for (int c : cols) grid.anchors.push_back({r, c});
  return grid;
}

Vector vectorize_patch(const ColorImage& image, Anchor at, int p) {
  const int area = p * p;
  Vector v(3 * area);
  for (int channel = 0; channel < 3; ++channel) {
    const int base = kBlockOf[channel] * area;
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < p; ++i) v(base + j * p + i) = image.at(at.row + i, at.col + j, channel);
  }
  return v;
}

ColorImage devectorize_patch(const Eigen::Ref<const Vector>& v, int p) {
  const int area = p * p;
  if (v.size() != 3 * area) throw ShapeError("vector length is not 3 p^2");
  ColorImage patch(p, p);
  for (int channel = 0; channel < 3; ++channel) {
    const int base = kBlockOf[channel] * area;
    for (int j = 0; j < p; ++j)
      for (int i = 0; i < p; ++i) patch.at(i, j, channel) = v(base + j * p + i);
  }
  return patch;
}

Vector vectorize_gray_patch(const GrayImage& image, Anchor at, int p) {
  Vector v(p * p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i) v(j * p + i) = image.at(at.row + i, at.col + j);
  return v;
}

GrayImage devectorize_gray_patch(const Eigen::Ref<const Vector>& v, int p) {
  if (v.size() != p * p) throw ShapeError("vector length is not p^2");
  GrayImage patch(p, p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i) patch.at(i, j) = v(j * p + i);
  return patch;
}

PatchSet extract_patches(const ColorImage& image, int p, const PatchSampling& sampling) {
  check_patch_fits(image.height(), image.width(), p);
  PatchSet set;
  if (const auto* random = std::get_if<RandomPatches>(&sampling)) {
    if (random->count < 0) throw InvalidArgumentError("patch count must be >= 0");
    CounterRng rng(random->seed);
    const auto rows = static_cast<std::size_t>(image.height() - p + 1);
    const auto cols = static_cast<std::size_t>(image.width() - p + 1);
    for (int n = 0; n < random->count; ++n) {
      const int r = static_cast<int>(rng.uniform_index(rows));
      const int c = static_cast<int>(rng.uniform_index(cols));
      set.anchors.push_back({r, c});
    }
  } else {
    const int stride = std::get<GridPatches>(sampling).stride;
    set.anchors = PatchGrid::regular(image.height(), image.width(), p, stride).anchors;
  }
  set.patches.resize(3 * p * p, static_cast<Eigen::Index>(set.anchors.size()));
  for (std::size_t n = 0; n < set.anchors.size(); ++n)
    set.patches.col(static_cast<Eigen::Index>(n)) = vectorize_patch(image, set.anchors[n], p);
  return set;
}

ColorImage average_patches(const Matrix& patches, std::span<const Anchor> anchors, int p,
                           int height, int width) {
  const int area = p * p;
  if (patches.rows() != 3 * area || patches.cols() != static_cast<Eigen::Index>(anchors.size()))
    throw ShapeError("patch matrix does not match 3 p^2 rows x anchor count");
  return average_into<ColorImage>(
      anchors, p, height, width, 3, [&](std::size_t n, int i, int j, double* acc) {
        const auto col = static_cast<Eigen::Index>(n);
        for (int channel = 0; channel < 3; ++channel)
          acc[channel] += patches(kBlockOf[channel] * area + j * p + i, col);
      });
}

GrayImage average_gray_patches(const Matrix& patches, std::span<const Anchor> anchors, int p,
                               int height, int width) {
  if (patches.rows() != p * p || patches.cols() != static_cast<Eigen::Index>(anchors.size()))
    throw ShapeError("patch matrix does not match p^2 rows x anchor count");
  return average_into<GrayImage>(anchors, p, height, width, 1,
                                 [&](std::size_t n, int i, int j, double* acc) {
                                   acc[0] += patches(j * p + i, static_cast<Eigen::Index>(n));
                                 });
}

Matrix train_patch_dictionary(std::span<const ColorImage> images,
                              const PatchTrainingConfig& config) {
  return train_patch_state(images, config).W;
}

OnlineDictionaryState train_patch_state(std::span<const ColorImage> images,
                                        const PatchTrainingConfig& config) {
  if (images.empty()) throw InvalidArgumentError("at least one training image is required");
  if (config.r < 1 || config.batches < 0 || config.batch_size < 1)
    throw InvalidArgumentError("r >= 1, batches >= 0 and batch_size >= 1 are required");
  for (const ColorImage& image : images) check_patch_fits(image.height(), image.width(), config.p);

  const int dim = 3 * config.p * config.p;
  OnlineDictionaryState state = init_state(dim, config.r, config.lambda, config.seed);
  CounterRng rng(config.seed, /*stream=*/1);
  Matrix batch(dim, config.batch_size);
  for (int b = 0; b < config.batches; ++b) {
    for (int n = 0; n < config.batch_size; ++n) {
      const ColorImage& image = images[rng.uniform_index(images.size())];
      const int r = static_cast<int>(
          rng.uniform_index(static_cast<std::size_t>(image.height() - config.p + 1)));
      const int c = static_cast<int>(
          rng.uniform_index(static_cast<std::size_t>(image.width() - config.p + 1)));
      batch.col(n) = vectorize_patch(image, {r, c}, config.p);
    }
    advance(state, batch, config.online);
  }
  return state;
}

ColorImage compress_image(const ColorImage& image, const Matrix& W, int p, int overlap,
                          double lambda, const OnlineOptions& opts) {
  if (W.rows() != 3 * p * p) {
    throw ShapeError("dictionary has " + std::to_string(W.rows()) + " rows, patch side " +
                     std::to_string(p) + " needs " + std::to_string(3 * p * p));
  }
  const int stride = stride_for_overlap(p, overlap);
  const PatchSet set = extract_patches(image, p, GridPatches{stride});
  const Matrix codes = sparse_code(set.patches, W, opts.coding(lambda));
  return average_patches(W * codes, set.anchors, p, image.height(), image.width());
}

GrayImage to_grayscale(const ColorImage& image) {
  GrayImage gray(image.height(), image.width());
  for (int row = 0; row < image.height(); ++row) {
    for (int col = 0; col < image.width(); ++col) {
      gray.at(row, col) = kGrayRed * image.at(row, col, kRed) +
                          kGrayGreen * image.at(row, col, kGreen) +
                          kGrayBlue * image.at(row, col, kBlue);
    }
  }
  return gray;
}

Matrix to_grayscale_dictionary(const Matrix& W, int p) {
  const int area = p * p;
  if (W.rows() != 3 * area) throw ShapeError("dictionary rows are not 3 p^2");
  return kGrayRed * W.middleRows(kBlockOf[kRed] * area, area) +
         kGrayGreen * W.middleRows(kBlockOf[kGreen] * area, area) +
         kGrayBlue * W.middleRows(kBlockOf[kBlue] * area, area);
}

ColorImage restore_color(const GrayImage& gray, const ClassLabelMap& labels,
                         const std::map<int, Matrix>& dictionaries, int p, int overlap,
                         double lambda, const OnlineOptions& opts) {
  check_patch_fits(gray.height(), gray.width(), p);
  for (const auto& [label, W] : dictionaries) {
    if (W.rows() != 3 * p * p) {
      throw ShapeError("dictionary for class " + std::to_string(label) + " has " +
                       std::to_string(W.rows()) + " rows, expected " + std::to_string(3 * p * p));
    }
  }
  const PatchGrid grid =
      PatchGrid::regular(gray.height(), gray.width(), p, stride_for_overlap(p, overlap));

  // Group anchors by class so each class is coded in one batch.
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t n = 0; n < grid.anchors.size(); ++n) {
    const Anchor a = grid.anchors[n];
    const auto it = labels.find(a);
    if (it == labels.end()) {
      throw CoverageError("grid anchor (" + std::to_string(a.row) + ", " + std::to_string(a.col) +
                          ") has no class label");
    }
    if (!dictionaries.contains(it->second))
      throw CoverageError("class " + std::to_string(it->second) + " has no dictionary");
    members[it->second].push_back(n);
  }

  Matrix color(3 * p * p, static_cast<Eigen::Index>(grid.anchors.size()));
  for (const auto& [label, indices] : members) {
    const Matrix& W = dictionaries.at(label);
    Matrix patches(p * p, static_cast<Eigen::Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k)
      patches.col(static_cast<Eigen::Index>(k)) =
          vectorize_gray_patch(gray, grid.anchors[indices[k]], p);
    const Matrix codes = sparse_code(patches, to_grayscale_dictionary(W, p), opts.coding(lambda));
    const Matrix restored = W * codes;
    for (std::size_t k = 0; k < indices.size(); ++k)
      color.col(static_cast<Eigen::Index>(indices[k])) =
          restored.col(static_cast<Eigen::Index>(k));
  }
  return average_patches(color, grid.anchors, p, gray.height(), gray.width());
}

double psnr(const ColorImage& reference, const ColorImage& test) {
  if (reference.height() != test.height() || reference.width() != test.width())
    throw ShapeError("PSNR operands differ in size");
  double sse = 0.0;
  const auto a = reference.data();
  const auto b = test.data();
  for (std::size_t i = 0; i < a.size(); ++i) sse += (a[i] - b[i]) * (a[i] - b[i]);
  const double mse = sse / static_cast<double>(a.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(1.0 / mse);
}

}  // namespace dictlearn
