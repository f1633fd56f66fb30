#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "dictlearn/matrix.hpp"
#include "dictlearn/online_nmf.hpp"

namespace dictlearn {

/// Grayscale video: T frames of height x width intensities in [0, 1].
struct FrameStack {
  int height = 0;
  int width = 0;
  std::vector<Matrix> frames;  // each height x width

  int frame_count() const { return static_cast<int>(frames.size()); }

  /// Throws ShapeError if any frame has different dimensions.
  void validate() const;
};

enum class Orientation {
  kSpaceMajor,  // (height * width) x T, column t = frame t vectorized column-major
  kTimeMajor,   // T x (height * width), the exact transpose
};

Matrix frames_to_matrix(const FrameStack& stack, Orientation orientation);

/// Inverse of the space-major vectorization of one frame.
Matrix devectorize_frame(const Eigen::Ref<const Vector>& column, int height, int width);

struct OfflineMode {
  int iters = 300;
  std::uint64_t seed = 0;
};

struct OnlineMode {
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::vector<int> snapshot_frames;  // 1-based frame counts, e.g. {1, 5, 7, 15, 35, 75}
  OnlineOptions options;
};

using SpatialMode = std::variant<OfflineMode, OnlineMode>;

struct SpatialSnapshot {
  int frame = 0;  // number of frames processed when the snapshot was taken
  Matrix W;
};

struct SpatialDictionary {
  Matrix W;                              // (height * width) x r
  std::vector<Matrix> atoms;             // r images, height x width
  std::vector<SpatialSnapshot> snapshots;  // online mode only
};

/// Offline mode factorizes the space-major matrix with multiplicative
/// updates; online mode feeds one vectorized frame per learner step in time
/// order and records the requested snapshots.
SpatialDictionary learn_spatial_dictionary(const FrameStack& stack, int r, const SpatialMode& mode);

struct ChangeReport {
  std::vector<double> scores;  // T - 1 entries, boundary t is between frames t and t+1
  int changepoint = 0;         // argmax of scores, first index on ties
  bool significant = false;    // max score >= threshold
  Matrix dictionary;           // T x r time-major dictionary, columns max-normalized
};

inline constexpr double kChangeThreshold = 0.05;

/// Factorizes the time-major matrix (T x space) as W H with W of shape T x r,
/// scales every column of W to unit max-norm and scores each boundary by
/// sum_j |W(t+1, j) - W(t, j)|. Throws InsufficientDataError if T < 3 and
/// InvalidRankError if r >= T.
ChangeReport detect_changepoint(const FrameStack& stack, int r, int iters = 300,
                                std::uint64_t seed = 0, double threshold = kChangeThreshold);

}  // namespace dictlearn
