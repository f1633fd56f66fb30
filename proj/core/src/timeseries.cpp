#include "dictlearn/timeseries.hpp"

#include <algorithm>
#include <string>

#include "dictlearn/errors.hpp"
#include "dictlearn/solvers.hpp"

namespace dictlearn {
namespace {

void check_window(Eigen::Index n, int k) {
  if (k < 1 || k > n) {
    throw ShapeError("window length " + std::to_string(k) + " does not fit a buffer of length " +
                     std::to_string(n));
  }
}

template <typename Block>
Block stack_blocks(std::span<const Block> blocks) {
  if (blocks.empty()) return Block(0, 0);
  const Eigen::Index rows = blocks.front().rows();
  const Eigen::Index cols = blocks.front().cols();
  for (const Block& b : blocks) {
    if (b.rows() != rows || b.cols() != cols) {
      throw ShapeError("cannot stack a " + std::to_string(b.rows()) + "x" +
                       std::to_string(b.cols()) + " block under " + std::to_string(rows) + "x" +
                       std::to_string(cols) + " blocks");
    }
  }
  Block out(rows * static_cast<Eigen::Index>(blocks.size()), cols);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    out.middleRows(static_cast<Eigen::Index>(i) * rows, rows) = blocks[i];
  return out;
}

}  // namespace

double default_offset(const Matrix& values, const Mask& observed) {
  double lowest = 0.0;
  for (Eigen::Index j = 0; j < values.cols(); ++j)
    for (Eigen::Index i = 0; i < values.rows(); ++i)
      if (observed(i, j)) lowest = std::min(lowest, values(i, j));
  return lowest < 0.0 ? -lowest : 0.0;
}

SeriesEnsemble SeriesEnsemble::make(Matrix values, Mask observed, std::optional<double> offset) {
  if (observed.rows() != values.rows() || observed.cols() != values.cols())
    throw ShapeError("observation mask does not match series dimensions");
  SeriesEnsemble e;
  e.offset = offset.value_or(default_offset(values, observed));
  if (!(e.offset >= 0.0)) throw InvalidArgumentError("offset must be >= 0");
  for (Eigen::Index j = 0; j < values.cols(); ++j) {
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
      if (observed(i, j) && !(values(i, j) + e.offset >= 0.0)) {
        throw InvalidArgumentError("observed value at series " + std::to_string(i + 1) +
                                   ", time " + std::to_string(j) +
                                   " is negative after the offset");
      }
    }
  }
  e.values = std::move(values);
  e.observed = std::move(observed);
  return e;
}

void HankelSpec::validate() const {
  if (k < 1 || k > N)
    throw InvalidArgumentError("window length k must satisfy 1 <= k <= N");
  if (r < 1) throw InvalidArgumentError("atom count r must be >= 1");
}

Matrix hankelize(std::span<const double> buffer, int k) {
  const auto n = static_cast<Eigen::Index>(buffer.size());
  check_window(n, k);
  Matrix X(k, n - k + 1);
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = 0; i < k; ++i) {
      const double v = buffer[static_cast<std::size_t>(i + j)];
      if (!(v >= 0.0)) throw InvalidArgumentError("Hankel buffer must be nonnegative");
      X(i, j) = v;
    }
  }
  return X;
}

Mask hankelize_mask(const MaskVector& buffer, int k) {
  check_window(buffer.size(), k);
  Mask M(k, buffer.size() - k + 1);
  for (Eigen::Index j = 0; j < M.cols(); ++j)
    for (Eigen::Index i = 0; i < k; ++i) M(i, j) = buffer(i + j);
  return M;
}

Matrix stack_ensemble(std::span<const Matrix> blocks) { return stack_blocks(blocks); }

Mask stack_masks(std::span<const Mask> blocks) { return stack_blocks(blocks); }

WindowData stacked_buffer(const SeriesEnsemble& ensemble, Eigen::Index t, const HankelSpec& spec) {
  const Eigen::Index start = t - spec.N + 1;
  if (start < 0 || t >= ensemble.length())
    throw InsufficientDataError("buffer ending at time " + std::to_string(t) + " is out of range");

  std::vector<Matrix> blocks;
  std::vector<Mask> masks;
  blocks.reserve(static_cast<std::size_t>(ensemble.series_count()));
  masks.reserve(blocks.capacity());
  Vector buffer(spec.N);
  MaskVector seen(spec.N);
  for (Eigen::Index s = 0; s < ensemble.series_count(); ++s) {
    for (Eigen::Index i = 0; i < spec.N; ++i) {
      seen(i) = ensemble.observed(s, start + i);
      // Unobserved slots carry 0 so the buffer stays nonnegative; the mask
      // keeps them out of every computation.
      buffer(i) = seen(i) ? ensemble.values(s, start + i) + ensemble.offset : 0.0;
    }
    blocks.push_back(hankelize(std::span<const double>(buffer.data(), spec.N), spec.k));
    masks.push_back(hankelize_mask(seen, spec.k));
  }
  return {stack_ensemble(blocks), stack_masks(masks)};
}

WindowVector current_window(const SeriesEnsemble& ensemble, Eigen::Index t, int k) {
  const Eigen::Index start = t - k + 1;
  if (k < 1 || start < 0 || t >= ensemble.length())
    throw InsufficientDataError("window ending at time " + std::to_string(t) + " is out of range");
  const Eigen::Index m = ensemble.series_count();
  WindowVector w{Vector(m * k), MaskVector(m * k)};
  for (Eigen::Index s = 0; s < m; ++s) {
    for (Eigen::Index i = 0; i < k; ++i) {
      const bool seen = ensemble.observed(s, start + i);
      w.observed(s * k + i) = seen;
      w.v(s * k + i) = seen ? ensemble.values(s, start + i) + ensemble.offset : 0.0;
    }
  }
  return w;
}

int default_snapshot_cadence(Eigen::Index length) {
  if (length <= 1000) return 1;
  return static_cast<int>((length + 999) / 1000);
}

TemporalFit online_temporal_fit(const SeriesEnsemble& ensemble, const HankelSpec& spec,
                                double lambda, std::uint64_t seed,
                                const TemporalFitOptions& opts) {
  spec.validate();
  if (opts.stride < 1) throw InvalidArgumentError("stride must be >= 1");
  if (ensemble.series_count() < 1) throw InsufficientDataError("ensemble has no series");
  if (ensemble.length() < spec.N) {
    throw InsufficientDataError("series length " + std::to_string(ensemble.length()) +
                                " is shorter than the buffer length N = " +
                                std::to_string(spec.N));
  }
  const int cadence = opts.snapshot_every.value_or(default_snapshot_cadence(ensemble.length()));
  if (cadence < 1) throw InvalidArgumentError("snapshot cadence must be >= 1");

  TemporalFit fit;
  fit.state = init_state(ensemble.series_count() * spec.k, spec.r, lambda, seed);
  const Eigen::Index last = ensemble.length() - 1;
  long long ticks = 0;
  for (Eigen::Index t = spec.N - 1; t <= last; t += opts.stride, ++ticks) {
    const WindowData window = stacked_buffer(ensemble, t, spec);
    advance_masked(fit.state, window.X, window.observed, opts.online);
    const bool final_tick = t + opts.stride > last;
    if (ticks % cadence == 0 || final_tick) fit.snapshots.push_back({t, fit.state.W});
  }
  return fit;
}

InpaintResult inpaint_window(const Matrix& W, const Vector& v, const MaskVector& observed,
                             double lambda, const OnlineOptions& opts) {
  const MaskedCode code = masked_sparse_code(v, W, observed, opts.coding(lambda));
  InpaintResult out{Vector::Zero(v.size()), code.no_data};
  const Vector fit = W * code.code;
  for (Eigen::Index i = 0; i < v.size(); ++i) out.filled(i) = observed(i) ? v(i) : fit(i);
  return out;
}

RollingReconstruction rolling_reconstruct(const SeriesEnsemble& ensemble,
                                          std::span<const DictionarySnapshot> snapshots,
                                          const HankelSpec& spec, double lambda,
                                          const OnlineOptions& opts) {
  spec.validate();
  const Eigen::Index m = ensemble.series_count();
  const Eigen::Index T = ensemble.length();
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    if (snapshots[i].W.rows() != m * spec.k)
      throw ShapeError("snapshot dictionary rows do not equal m * k");
    if (i > 0 && snapshots[i].t <= snapshots[i - 1].t)
      throw InvalidArgumentError("snapshots must be strictly increasing in time");
  }

  RollingReconstruction out{Matrix::Zero(m, T), ensemble.values, Mask::Constant(m, T, false),
                            std::vector<bool>(static_cast<std::size_t>(T), false)};
  std::size_t next = 0;
  const DictionarySnapshot* current = nullptr;
  for (Eigen::Index t = 0; t < T; ++t) {
    while (next < snapshots.size() && snapshots[next].t <= t) current = &snapshots[next++];
    if (current == nullptr || t < spec.k - 1) continue;

    const WindowVector window = current_window(ensemble, t, spec.k);
    const MaskedCode code = masked_sparse_code(window.v, current->W, window.observed,
                                               opts.coding(lambda));
    if (code.no_data) {
      out.no_data[static_cast<std::size_t>(t)] = true;
      continue;
    }
    const Vector fit = current->W * code.code;
    for (Eigen::Index s = 0; s < m; ++s) {
      const double value = fit(s * spec.k + spec.k - 1) - ensemble.offset;
      out.reconstruction(s, t) = value;
      out.available(s, t) = true;
      if (!ensemble.observed(s, t)) out.filled(s, t) = value;
    }
  }
  return out;
}

}  // namespace dictlearn
