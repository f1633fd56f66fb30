#include <gtest/gtest.h>

#include "dictlearn/errors.hpp"
#include "dictlearn/nmf.hpp"
#include "oracles.hpp"

namespace dictlearn {
namespace {

double residual(const Matrix& X, const Matrix& W, const Matrix& H) {
  return (X - W * H).squaredNorm();
}

TEST(MultiplicativeStep, IdentityIsFixedPoint) {
  const Matrix I = Matrix::Identity(2, 2);
  const auto [W, H] = multiplicative_step(I, I, I);
  EXPECT_LE((W - I).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_LE((H - I).cwiseAbs().maxCoeff(), 1e-11);
}

TEST(MultiplicativeStep, ScalarHandComputation) {
  // H' = 1 * 2 / 1 = 2, then W' = 1 * (2 * 2) / (1 * 2 * 2) = 1.
  const auto [W, H] = multiplicative_step(Matrix::Constant(1, 1, 2.0), Matrix::Ones(1, 1),
                                          Matrix::Ones(1, 1));
  EXPECT_NEAR(H(0, 0), 2.0, 1e-11);
  EXPECT_NEAR(W(0, 0), 1.0, 1e-11);
  EXPECT_NEAR(residual(Matrix::Constant(1, 1, 2.0), W, H), 0.0, 1e-20);
}

TEST(MultiplicativeStep, ZeroDataAnnihilatesCode) {
  const Matrix X = Matrix::Zero(3, 4);
  const auto [W, H] = multiplicative_step(X, oracle::uniform_matrix(3, 2, 1),
                                          oracle::uniform_matrix(2, 4, 2));
  EXPECT_EQ(H.maxCoeff(), 0.0);
  EXPECT_EQ(W.rows(), 3);
  EXPECT_EQ(W.cols(), 2);
  EXPECT_EQ(residual(X, W, H), 0.0);
}

TEST(MultiplicativeStep, ShapeMismatchThrows) {
  EXPECT_THROW(multiplicative_step(Matrix::Ones(3, 4), Matrix::Ones(3, 2), Matrix::Ones(3, 4)),
               ShapeError);
}

TEST(MultiplicativeStep, ExactFactorizationIsFixedPoint) {
  const Matrix W = oracle::uniform_matrix(6, 3, 3, 0.5, 1.0);
  const Matrix H = oracle::uniform_matrix(3, 5, 4, 0.5, 1.0);
  const auto [W1, H1] = multiplicative_step(W * H, W, H);
  EXPECT_LE((W1 - W).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LE((H1 - H).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MultiplicativeStepProperty, MonotoneAndNonnegative) {
  for (unsigned seed = 0; seed < 3; ++seed) {
    const Matrix X = oracle::uniform_matrix(50, 40, 10 + seed);
    Matrix W = oracle::uniform_matrix(50, 8, 20 + seed);
    Matrix H = oracle::uniform_matrix(8, 40, 30 + seed);
    double previous = residual(X, W, H);
    for (int it = 0; it < 200; ++it) {
      std::tie(W, H) = multiplicative_step(X, W, H);
      ASSERT_GE(W.minCoeff(), 0.0);
      ASSERT_GE(H.minCoeff(), 0.0);
      const double current = residual(X, W, H);
      ASSERT_LE(current, previous * (1.0 + 1e-10)) << "seed " << seed << " step " << it;
      previous = current;
    }
  }
}

TEST(FitNmf, RankOneExactFactorization) {
  Matrix X(2, 2);
  X << 3, 1, 6, 2;  // (1, 2)' (3, 1)
  const NmfFitResult fit = fit_nmf(X, 1, 500, 0);
  EXPECT_LE((X - fit.W * fit.H).norm() / X.norm(), 1e-6);
  EXPECT_FALSE(fit.overcomplete);
}

TEST(FitNmf, IdentityThreeByThree) {
  const Matrix X = Matrix::Identity(3, 3);
  const NmfFitResult fit = fit_nmf(X, 3, 500, 0);
  EXPECT_LE(fit.objective_trace.back(), 1e-4);
}

TEST(FitNmf, TraceIsNonIncreasingAndSized) {
  const Matrix X = oracle::uniform_matrix(12, 9, 5);
  const NmfFitResult fit = fit_nmf(X, 4, 100, 3);
  ASSERT_EQ(fit.objective_trace.size(), 100u);
  for (std::size_t i = 1; i < fit.objective_trace.size(); ++i)
    EXPECT_LE(fit.objective_trace[i], fit.objective_trace[i - 1] + 1e-10);
  EXPECT_NEAR(fit.objective_trace.back(), residual(X, fit.W, fit.H), 1e-9);
}

TEST(FitNmf, OvercompleteIsFlaggedNotRejected) {
  const NmfFitResult fit = fit_nmf(oracle::uniform_matrix(3, 4, 6), 5, 10, 0);
  EXPECT_TRUE(fit.overcomplete);
  EXPECT_EQ(fit.W.cols(), 5);
}

TEST(FitNmf, SameSeedIsBitIdentical) {
  const Matrix X = oracle::uniform_matrix(10, 8, 7);
  const NmfFitResult a = fit_nmf(X, 3, 50, 42);
  const NmfFitResult b = fit_nmf(X, 3, 50, 42);
  EXPECT_EQ(a.W, b.W);
  EXPECT_EQ(a.H, b.H);
}

TEST(FitNmf, RejectsBadArguments) {
  EXPECT_THROW(fit_nmf(Matrix::Ones(2, 2), 0, 10, 0), InvalidArgumentError);
  EXPECT_THROW(fit_nmf(-Matrix::Ones(2, 2), 1, 10, 0), InvalidArgumentError);
}

TEST(FitNmf, CandleScaleShape) {
  const Matrix X = oracle::uniform_matrix(2400, 75, 8);
  const NmfFitResult fit = fit_nmf(X, 4, 5, 0);
  EXPECT_EQ(fit.W.rows(), 2400);
  EXPECT_EQ(fit.W.cols(), 4);
  EXPECT_EQ(fit.H.cols(), 75);
}

}  // namespace
}  // namespace dictlearn
