#include "dictlearn/video.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dictlearn/errors.hpp"
#include "dictlearn/nmf.hpp"

namespace dictlearn {

void FrameStack::validate() const {
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].rows() != height || frames[t].cols() != width) {
      throw ShapeError("frame " + std::to_string(t) + " is " + std::to_string(frames[t].rows()) +
                       "x" + std::to_string(frames[t].cols()) + ", expected " +
                       std::to_string(height) + "x" + std::to_string(width));
    }
  }
}

Matrix frames_to_matrix(const FrameStack& stack, Orientation orientation) {
  stack.validate();
  const Eigen::Index pixels = static_cast<Eigen::Index>(stack.height) * stack.width;
  Matrix X(pixels, stack.frame_count());
  for (int t = 0; t < stack.frame_count(); ++t)
    X.col(t) = Eigen::Map<const Vector>(stack.frames[static_cast<std::size_t>(t)].data(), pixels);
  if (orientation == Orientation::kTimeMajor) return X.transpose();
  return X;
}

Matrix devectorize_frame(const Eigen::Ref<const Vector>& column, int height, int width) {
  if (column.size() != static_cast<Eigen::Index>(height) * width)
    throw ShapeError("column length does not equal height * width");
  return Eigen::Map<const Matrix>(column.data(), height, width);
}

SpatialDictionary learn_spatial_dictionary(const FrameStack& stack, int r,
                                           const SpatialMode& mode) {
  if (r < 1) throw InvalidArgumentError("atom count must be >= 1");
  if (stack.frame_count() < 1) throw InsufficientDataError("frame stack is empty");
  const Matrix X = frames_to_matrix(stack, Orientation::kSpaceMajor);

  SpatialDictionary out;
  if (const auto* offline = std::get_if<OfflineMode>(&mode)) {
    out.W = fit_nmf(X, r, offline->iters, offline->seed).W;
  } else {
    const auto& online = std::get<OnlineMode>(mode);
    OnlineDictionaryState state = init_state(X.rows(), r, online.lambda, online.seed);
    for (int t = 0; t < X.cols(); ++t) {
      advance(state, X.col(t), online.options);
      const int processed = t + 1;
      if (std::find(online.snapshot_frames.begin(), online.snapshot_frames.end(), processed) !=
          online.snapshot_frames.end()) {
        out.snapshots.push_back({processed, state.W});
      }
    }
    out.W = std::move(state.W);
  }
  for (Eigen::Index j = 0; j < out.W.cols(); ++j)
    out.atoms.push_back(devectorize_frame(out.W.col(j), stack.height, stack.width));
  return out;
}

ChangeReport detect_changepoint(const FrameStack& stack, int r, int iters, std::uint64_t seed,
                                double threshold) {
  const int T = stack.frame_count();
  if (T < 3) throw InsufficientDataError("changepoint detection needs at least 3 frames");
  if (r < 1 || r >= T) {
    throw InvalidRankError("rank " + std::to_string(r) + " must satisfy 1 <= r < T = " +
                           std::to_string(T));
  }
  const Matrix X = frames_to_matrix(stack, Orientation::kTimeMajor);

  ChangeReport report;
  report.dictionary = fit_nmf(X, r, iters, seed).W;
  for (Eigen::Index j = 0; j < r; ++j) {
    const double peak = report.dictionary.col(j).maxCoeff();
    if (peak > 0.0) report.dictionary.col(j) /= peak;
  }

  report.scores.resize(static_cast<std::size_t>(T - 1));
  for (int t = 0; t + 1 < T; ++t) {
    report.scores[static_cast<std::size_t>(t)] =
        (report.dictionary.row(t + 1) - report.dictionary.row(t)).cwiseAbs().sum();
  }
  const auto best = std::max_element(report.scores.begin(), report.scores.end());
  report.changepoint = static_cast<int>(best - report.scores.begin());
  report.significant = *best >= threshold;
  return report;
}

}  // namespace dictlearn
