#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dictlearn/matrix.hpp"
#include "dictlearn/online_nmf.hpp"

namespace dictlearn {

/// m aligned scalar series on a shared time axis. `values` are in caller
/// units; the learner sees values + offset, which is nonnegative wherever
/// the entry is observed. Unobserved values are never read.
struct SeriesEnsemble {
  Matrix values;   // m x T
  Mask observed;   // m x T
  double offset = 0.0;

  Eigen::Index series_count() const { return values.rows(); }
  Eigen::Index length() const { return values.cols(); }

  /// Builds an ensemble; when `offset` is empty the default
  /// max(0, -min observed value) is used. Throws InvalidArgumentError if an
  /// observed value + offset is negative or dimensions disagree.
  static SeriesEnsemble make(Matrix values, Mask observed,
                             std::optional<double> offset = std::nullopt);
};

/// max(0, -min over observed entries).
double default_offset(const Matrix& values, const Mask& observed);

/// Window length k, buffer length N, atom count r.
struct HankelSpec {
  int k = 6;
  int N = 50;
  int r = 16;

  void validate() const;  // 1 <= k <= N, r >= 1
};

/// k x (N-k+1) matrix with entry (i, j) = buffer[i + j]. Throws ShapeError if
/// k > N or k < 1, InvalidArgumentError if the buffer has a negative entry.
Matrix hankelize(std::span<const double> buffer, int k);
Mask hankelize_mask(const MaskVector& buffer, int k);

/// Vertical concatenation of equally sized blocks; block i occupies rows
/// [i k, (i+1) k). Throws ShapeError on ragged blocks.
Matrix stack_ensemble(std::span<const Matrix> blocks);
Mask stack_masks(std::span<const Mask> blocks);

/// Stacked (m k) x (N-k+1) Hankel data and mask built from the length-N
/// buffer ending at time t (inclusive) of every series, offset applied.
struct WindowData {
  Matrix X;
  Mask observed;
};
WindowData stacked_buffer(const SeriesEnsemble& ensemble, Eigen::Index t, const HankelSpec& spec);

/// The (m k)-vector v_t of the last k values up to time t of every series
/// (offset applied), with its mask. Series i occupies entries [i k, (i+1) k).
struct WindowVector {
  Vector v;
  MaskVector observed;
};
WindowVector current_window(const SeriesEnsemble& ensemble, Eigen::Index t, int k);

struct DictionarySnapshot {
  Eigen::Index t = 0;  // time index of the last sample folded into W
  Matrix W;
};

struct TemporalFitOptions {
  int stride = 1;                     // ticks between online steps
  std::optional<int> snapshot_every;  // default: 1 if T <= 1000 else ceil(T / 1000)
  OnlineOptions online;
};

struct TemporalFit {
  std::vector<DictionarySnapshot> snapshots;
  OnlineDictionaryState state;
};

/// Snapshot cadence used when none is given.
int default_snapshot_cadence(Eigen::Index length);

/// Online temporal dictionary learning over the ensemble. From t = N-1 on,
/// every `stride` ticks the stacked Hankel buffer advances the learner one
/// step (masked coding). Throws InsufficientDataError if T < N.
TemporalFit online_temporal_fit(const SeriesEnsemble& ensemble, const HankelSpec& spec,
                                double lambda, std::uint64_t seed,
                                const TemporalFitOptions& opts = {});

/// Rolling reconstruction and fill-in, in caller units (offset removed).
struct RollingReconstruction {
  Matrix reconstruction;      // m x T, time-t coordinates of W_t h_t
  Matrix filled;              // m x T, observed values verbatim, missing ones inpainted
  Mask available;             // m x T, false where no dictionary existed yet
  std::vector<bool> no_data;  // per t, window had no observed entry
};

/// For each t with a snapshot at or before t, codes the window v_t against
/// the latest such W_t using only observed entries and emits the time-t
/// coordinates of W_t h. A fully unobserved window yields no reconstruction
/// (available stays false) and sets no_data[t]. `filled` holds a value
/// wherever the entry is observed or available.
RollingReconstruction rolling_reconstruct(const SeriesEnsemble& ensemble,
                                          std::span<const DictionarySnapshot> snapshots,
                                          const HankelSpec& spec, double lambda,
                                          const OnlineOptions& opts = {});

struct InpaintResult {
  Vector filled;
  bool no_data = false;
};

/// Observed entries of v are copied verbatim; missing entries become the
/// matching coordinates of W h with h = masked_sparse_code(v, W, mask).
InpaintResult inpaint_window(const Matrix& W, const Vector& v, const MaskVector& observed,
                             double lambda, const OnlineOptions& opts = {});

}  // namespace dictlearn
