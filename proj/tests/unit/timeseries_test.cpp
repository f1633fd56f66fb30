#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dictlearn/errors.hpp"
#include "dictlearn/rng.hpp"
#include "dictlearn/timeseries.hpp"
#include "oracles.hpp"

namespace dictlearn {
namespace {

SeriesEnsemble full_ensemble(const Matrix& values, std::optional<double> offset = std::nullopt) {
  return SeriesEnsemble::make(values, Mask::Constant(values.rows(), values.cols(), true), offset);
}

Matrix sinusoids(int m, int T, double period, double base, double amplitude) {
  Matrix v(m, T);
  for (int s = 0; s < m; ++s)
    for (int t = 0; t < T; ++t)
      v(s, t) = base + amplitude * std::sin(2.0 * std::numbers::pi * t / period + 0.4 * s);
  return v;
}

TEST(Hankelize, SmallBuffer) {
  const std::vector<double> buffer{1, 2, 3, 4, 5};
  Matrix expected(2, 4);
  expected << 1, 2, 3, 4, 2, 3, 4, 5;
  EXPECT_EQ(hankelize(buffer, 2), expected);
}

TEST(Hankelize, BoundaryWindowLengths) {
  const std::vector<double> buffer{0.5, 1.5, 2.5};
  const Matrix full = hankelize(buffer, 3);
  ASSERT_EQ(full.cols(), 1);
  EXPECT_EQ(full.col(0), Eigen::Vector3d(0.5, 1.5, 2.5));
  const Matrix row = hankelize(buffer, 1);
  ASSERT_EQ(row.rows(), 1);
  EXPECT_EQ(row.row(0).transpose(), Eigen::Vector3d(0.5, 1.5, 2.5));
}

TEST(Hankelize, Errors) {
  const std::vector<double> buffer{1, 2};
  EXPECT_THROW(hankelize(buffer, 3), ShapeError);
  EXPECT_THROW(hankelize(buffer, 0), ShapeError);
  const std::vector<double> negative{1, -2};
  EXPECT_THROW(hankelize(negative, 1), InvalidArgumentError);
}

TEST(HankelizeProperty, IndexIdentity) {
  CounterRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int N = 1 + static_cast<int>(rng.uniform_index(30));
    const int k = 1 + static_cast<int>(rng.uniform_index(static_cast<std::size_t>(N)));
    std::vector<double> buffer(static_cast<std::size_t>(N));
    for (double& v : buffer) v = rng.uniform();
    const Matrix X = hankelize(buffer, k);
    ASSERT_EQ(X.rows(), k);
    ASSERT_EQ(X.cols(), N - k + 1);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < N - k + 1; ++j)
        ASSERT_EQ(X(i, j), buffer[static_cast<std::size_t>(i + j)]);
  }
}

TEST(HankelizeProperty, OffsetShiftsEntriesExactly) {
  // Dyadic values keep the shifted sums exact.
  const std::vector<double> buffer{0.25, 1.5, 3.0, 0.75, 2.0, 4.5};
  std::vector<double> shifted = buffer;
  for (double& v : shifted) v += 8.0;
  const Matrix a = hankelize(buffer, 3);
  const Matrix b = hankelize(shifted, 3);
  EXPECT_EQ(b, (a.array() + 8.0).matrix());

  MaskVector mask(6);
  mask << true, false, true, true, true, false;
  EXPECT_TRUE((hankelize_mask(mask, 3) == hankelize_mask(mask, 3)).all());
}

TEST(StackEnsemble, SingleBlockIsNoOp) {
  const Matrix block = oracle::uniform_matrix(3, 4, 1);
  const std::vector<Matrix> blocks{block};
  EXPECT_EQ(stack_ensemble(blocks), block);
}

TEST(StackEnsemble, TwoRowBlocks) {
  Matrix a(1, 2), b(1, 2), expected(2, 2);
  a << 1, 2;
  b << 3, 4;
  expected << 1, 2, 3, 4;
  const std::vector<Matrix> blocks{a, b};
  EXPECT_EQ(stack_ensemble(blocks), expected);
}

TEST(StackEnsemble, RaggedBlocksThrow) {
  const std::vector<Matrix> blocks{Matrix::Ones(2, 3), Matrix::Ones(2, 4)};
  EXPECT_THROW(stack_ensemble(blocks), ShapeError);
}

TEST(StackEnsemble, WeatherRows) {
  std::vector<Matrix> blocks;
  for (int i = 0; i < 4; ++i) blocks.push_back(oracle::uniform_matrix(6, 45, 10 + i));
  const Matrix X = stack_ensemble(blocks);
  EXPECT_EQ(X.rows(), 24);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(X.middleRows(6 * i, 6), blocks[static_cast<std::size_t>(i)]);
}

TEST(SeriesEnsemble, DefaultOffsetMakesObservedValuesNonnegative) {
  Matrix values(2, 3);
  values << -4, 2, 9, 1, -100, 3;
  Mask observed = Mask::Constant(2, 3, true);
  observed(1, 1) = false;
  const SeriesEnsemble e = SeriesEnsemble::make(values, observed);
  EXPECT_EQ(e.offset, 4.0);
  EXPECT_EQ(default_offset(values.cwiseAbs(), observed), 0.0);
  EXPECT_FALSE(std::signbit(default_offset(values.cwiseAbs(), observed)));
  EXPECT_THROW(SeriesEnsemble::make(values, observed, 1.0), InvalidArgumentError);
}

TEST(StackedBuffer, MissingEntriesAreMaskedOut) {
  Matrix values = Matrix::Constant(2, 8, 3.0);
  Mask observed = Mask::Constant(2, 8, true);
  observed(1, 6) = false;
  values(1, 6) = -100.0;
  const SeriesEnsemble e = SeriesEnsemble::make(values, observed);
  const WindowData w = stacked_buffer(e, 7, {2, 4, 1});
  EXPECT_EQ(w.X.rows(), 4);
  EXPECT_EQ(w.X.cols(), 3);
  EXPECT_GE(w.X.minCoeff(), 0.0);
  // Buffer of series 1 is t = 4..7; t = 6 is local index 2, which sits at
  // lag 1 of column 1 and lag 0 of column 2.
  EXPECT_FALSE(w.observed(3, 1));
  EXPECT_FALSE(w.observed(2, 2));
  EXPECT_EQ(w.observed.count(), 4 * 3 - 2);
}

TEST(OnlineTemporalFit, WeatherShape) {
  const SeriesEnsemble e = full_ensemble(sinusoids(4, 120, 12.0, 60.0, 10.0));
  const TemporalFit fit = online_temporal_fit(e, {6, 50, 16}, 0.1, 0);
  EXPECT_EQ(fit.state.W.rows(), 24);
  EXPECT_EQ(fit.state.W.cols(), 16);
  EXPECT_EQ(fit.state.t, 120u - 50u + 1u);
  for (const DictionarySnapshot& s : fit.snapshots) {
    EXPECT_EQ(s.W.rows(), 24);
    EXPECT_EQ(s.W.cols(), 16);
  }
}

TEST(OnlineTemporalFit, InsufficientData) {
  const SeriesEnsemble e = full_ensemble(Matrix::Ones(2, 30));
  EXPECT_THROW(online_temporal_fit(e, {6, 50, 4}, 0.1, 0), InsufficientDataError);
}

TEST(OnlineTemporalFit, ConstantEnsembleGivesConstantAtom) {
  const SeriesEnsemble e = full_ensemble(Matrix::Constant(3, 149, 2.5));
  const TemporalFit fit = online_temporal_fit(e, {6, 50, 1}, 0.0, 0);
  EXPECT_EQ(fit.state.t, 100u);
  const Vector w = fit.state.W.col(0);
  EXPECT_LE(w.maxCoeff() / w.minCoeff(), 1.0 + 1e-3);
}

TEST(OnlineTemporalFit, PeriodicMotifIsReconstructed) {
  const int k = 6;
  const double motif[k] = {1.0, 3.0, 2.0, 5.0, 0.5, 4.0};
  Matrix values(1, 249);
  for (int t = 0; t < 249; ++t) values(0, t) = motif[t % k];
  const SeriesEnsemble e = full_ensemble(values);
  const HankelSpec spec{k, 50, k};
  const TemporalFit fit = online_temporal_fit(e, spec, 0.0, 0);
  EXPECT_EQ(fit.state.t, 200u);
  const RollingReconstruction rec = rolling_reconstruct(e, fit.snapshots, spec, 0.0);
  const Eigen::Index t0 = 249 - 50;
  const Matrix err = rec.reconstruction.rightCols(50) - values.rightCols(50);
  EXPECT_LE(err.norm() / values.rightCols(50).norm(), 1e-2);
  EXPECT_TRUE(rec.available.rightCols(249 - t0).all());
}

TEST(OnlineTemporalFit, SnapshotCadence) {
  EXPECT_EQ(default_snapshot_cadence(1000), 1);
  EXPECT_EQ(default_snapshot_cadence(1001), 2);
  EXPECT_EQ(default_snapshot_cadence(4500), 5);
  const SeriesEnsemble e = full_ensemble(sinusoids(1, 80, 10.0, 5.0, 1.0));
  TemporalFitOptions opts;
  opts.snapshot_every = 7;
  const TemporalFit fit = online_temporal_fit(e, {4, 20, 2}, 0.0, 0, opts);
  ASSERT_FALSE(fit.snapshots.empty());
  EXPECT_EQ(fit.snapshots.back().t, 79);
  for (std::size_t i = 1; i < fit.snapshots.size(); ++i)
    EXPECT_GT(fit.snapshots[i].t, fit.snapshots[i - 1].t);
}

TEST(OnlineTemporalFit, StrideSkipsTicks) {
  const SeriesEnsemble e = full_ensemble(sinusoids(2, 60, 10.0, 5.0, 1.0));
  TemporalFitOptions opts;
  opts.stride = 5;
  const TemporalFit fit = online_temporal_fit(e, {4, 20, 2}, 0.0, 0, opts);
  EXPECT_EQ(fit.state.t, 9u);  // t = 19, 24, ..., 59
}

TEST(OnlineTemporalFit, Deterministic) {
  const SeriesEnsemble e = full_ensemble(sinusoids(2, 90, 12.0, 5.0, 2.0));
  const TemporalFit a = online_temporal_fit(e, {4, 30, 3}, 0.1, 17);
  const TemporalFit b = online_temporal_fit(e, {4, 30, 3}, 0.1, 17);
  EXPECT_EQ(a.state.W, b.state.W);
  EXPECT_EQ(a.state.B, b.state.B);
}

TEST(RollingReconstruct, ConeMembersAreReproduced) {
  // Every window of a series built from two shifted motifs lies in the cone
  // of a dictionary holding all k cyclic shifts of the period-k motif.
  const int k = 4;
  const double motif[k] = {1.0, 2.0, 4.0, 3.0};
  Matrix values(1, 40);
  for (int t = 0; t < 40; ++t) values(0, t) = motif[t % k];
  Matrix W(k, k);
  for (int shift = 0; shift < k; ++shift)
    for (int i = 0; i < k; ++i) W(i, shift) = motif[(i + shift) % k];
  const SeriesEnsemble e = full_ensemble(values);
  const std::vector<DictionarySnapshot> snaps{{k - 1, W}};
  const RollingReconstruction rec = rolling_reconstruct(e, snaps, {k, k, k}, 0.0);
  for (int t = k - 1; t < 40; ++t) EXPECT_NEAR(rec.reconstruction(0, t), values(0, t), 1e-6);
  EXPECT_FALSE(rec.available(0, k - 2));
}

TEST(RollingReconstruct, FullyMissingWindowIsFlagged) {
  Matrix values = Matrix::Constant(2, 12, 2.0);
  Mask observed = Mask::Constant(2, 12, true);
  for (int t = 5; t <= 7; ++t) observed.col(t).setConstant(false);
  const SeriesEnsemble e = SeriesEnsemble::make(values, observed);
  const std::vector<DictionarySnapshot> snaps{{2, Matrix::Ones(6, 1)}};
  const RollingReconstruction rec = rolling_reconstruct(e, snaps, {3, 3, 1}, 0.0);
  EXPECT_TRUE(rec.no_data[7]);
  EXPECT_FALSE(rec.available(0, 7));
  EXPECT_EQ(rec.reconstruction(0, 7), 0.0);
  EXPECT_FALSE(rec.no_data[6]);  // window 4..6 still sees t = 4
  EXPECT_NEAR(rec.filled(0, 6), 2.0, 1e-9);
}

TEST(RollingReconstruct, CorrelatedPairAtDeskScale) {
  Matrix values(2, 300);
  for (int t = 0; t < 300; ++t) {
    const double base = std::sin(2.0 * std::numbers::pi * t / 12.0);
    values(0, t) = 50.0 + 10.0 * base;
    values(1, t) = 40.0 + 8.0 * base;
  }
  const SeriesEnsemble e = full_ensemble(values);
  const HankelSpec spec{6, 50, 8};
  const TemporalFit fit = online_temporal_fit(e, spec, 0.1, 0);
  const RollingReconstruction rec = rolling_reconstruct(e, fit.snapshots, spec, 0.1);
  for (int s = 0; s < 2; ++s) {
    const double amplitude = values.row(s).maxCoeff() - values.row(s).minCoeff();
    const double mae =
        (rec.reconstruction.row(s).tail(200) - values.row(s).tail(200)).cwiseAbs().mean();
    EXPECT_LE(mae, 0.1 * amplitude) << "series " << s;
  }
}

TEST(InpaintWindow, NoMissingIsVerbatim) {
  const Vector v = oracle::uniform_matrix(6, 1, 3);
  const InpaintResult r = inpaint_window(oracle::uniform_matrix(6, 2, 4), v,
                                         MaskVector::Constant(6, true), 0.1);
  EXPECT_EQ(r.filled, v);
  EXPECT_FALSE(r.no_data);
}

TEST(InpaintWindow, ScalarLeastSquaresFill) {
  MaskVector mask(2);
  mask << true, false;
  const InpaintResult r = inpaint_window(Matrix::Ones(2, 1), Eigen::Vector2d(2.0, -100.0), mask, 0.0);
  EXPECT_EQ(r.filled(0), 2.0);
  EXPECT_NEAR(r.filled(1), 2.0, 1e-12);
}

TEST(InpaintWindow, AllMissingZeroFillsAndFlags) {
  const InpaintResult r = inpaint_window(Matrix::Ones(3, 2), Eigen::Vector3d(1, 2, 3),
                                         MaskVector::Constant(3, false), 0.0);
  EXPECT_TRUE(r.no_data);
  EXPECT_EQ(r.filled, Vector::Zero(3));
}

TEST(InpaintWindowProperty, UnobservedValuesNeverMatter) {
  CounterRng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix W = oracle::uniform_matrix(8, 3, 40 + static_cast<unsigned>(trial));
    Vector v = oracle::uniform_matrix(8, 1, 80 + static_cast<unsigned>(trial));
    MaskVector mask(8);
    for (int i = 0; i < 8; ++i) mask(i) = rng.uniform() < 0.7;
    const InpaintResult a = inpaint_window(W, v, mask, 0.1);
    for (int i = 0; i < 8; ++i)
      if (!mask(i)) v(i) = 1e3 * rng.uniform() - 500.0;
    const InpaintResult b = inpaint_window(W, v, mask, 0.1);
    EXPECT_EQ(a.filled, b.filled);
  }
}

}  // namespace
}  // namespace dictlearn
