#include <gtest/gtest.h>

#include "dictlearn/errors.hpp"
#include "dictlearn/solvers.hpp"
#include "oracles.hpp"

namespace dictlearn {
namespace {

Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

SolverOptions coding(double lambda) {
  SolverOptions o;
  o.lambda = lambda;
  return o;
}

TEST(EvalObjective, ExactFactorizationIsZero) {
  const Matrix W = oracle::uniform_matrix(5, 3, 1);
  const Matrix H = oracle::uniform_matrix(3, 4, 2);
  EXPECT_NEAR(eval_objective(W * H, W, H, 0.0), 0.0, 1e-24);
}

TEST(EvalObjective, HandComputedValues) {
  EXPECT_DOUBLE_EQ(eval_objective(mat({{1}}), mat({{0}}), mat({{2}}), 1.0), 3.0);
  EXPECT_DOUBLE_EQ(eval_objective(mat({{3}}), mat({{1}}), mat({{1}}), 0.0), 4.0);
}

TEST(EvalObjective, ShapeMismatchThrows) {
  EXPECT_THROW(eval_objective(Matrix::Ones(2, 2), Matrix::Ones(3, 1), Matrix::Ones(1, 2), 0.0),
               ShapeError);
}

TEST(SparseCode, IdentityDictionaryReturnsData) {
  const Matrix X = oracle::uniform_matrix(2, 6, 3);
  const Matrix H = sparse_code(X, Matrix::Identity(2, 2), coding(0.0));
  EXPECT_LE((H - X).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SparseCode, SoftThresholdOnIdentity) {
  // The oracle grid contains (0.5, 1.5); confirm it is the grid minimizer.
  const Vector x = Eigen::Vector2d(1.0, 2.0);
  const oracle::GridMin grid = oracle::grid_search_code(Matrix::Identity(2, 2), x, 1.0, 0.05, 2.0);
  EXPECT_NEAR(grid.argmin(0), 0.5, 1e-12);
  EXPECT_NEAR(grid.argmin(1), 1.5, 1e-12);

  const Matrix H = sparse_code(x, Matrix::Identity(2, 2), coding(1.0));
  EXPECT_NEAR(H(0, 0), 0.5, 1e-12);
  EXPECT_NEAR(H(1, 0), 1.5, 1e-12);
}

TEST(SparseCode, LargePenaltyGivesZeroCode) {
  const Matrix W = oracle::uniform_matrix(3, 3, 11);
  const Vector x = oracle::uniform_matrix(3, 1, 12);
  const double lambda = 2.0 * (W.transpose() * x).maxCoeff();
  const oracle::GridMin grid = oracle::grid_search_code(W, x, lambda, 0.01, 1.0);
  EXPECT_EQ(grid.argmin.maxCoeff(), 0.0);
  EXPECT_EQ(sparse_code(x, W, coding(lambda)).maxCoeff(), 0.0);
}

TEST(SparseCode, DegenerateDictionaryThrows) {
  EXPECT_THROW(sparse_code(Matrix::Ones(3, 2), Matrix::Zero(3, 2), coding(0.0)),
               DegenerateDictionaryError);
}

TEST(SparseCode, RowMismatchThrows) {
  EXPECT_THROW(sparse_code(Matrix::Ones(3, 2), Matrix::Ones(4, 2), coding(0.0)), ShapeError);
}

TEST(SparseCode, InvalidOptionsThrow) {
  SolverOptions o;
  o.lambda = -1.0;
  EXPECT_THROW(sparse_code(Matrix::Ones(2, 1), Matrix::Ones(2, 1), o), InvalidArgumentError);
  o = {};
  o.tol = 0.0;
  EXPECT_THROW(o.validate(), InvalidArgumentError);
  o = {};
  o.epsilon_div = 0.0;
  EXPECT_THROW(o.validate(), InvalidArgumentError);
}

TEST(SparseCode, ZeroColumnInDictionaryGetsZeroCode) {
  Matrix W = oracle::uniform_matrix(4, 3, 5);
  W.col(1).setZero();
  const Matrix H = sparse_code(oracle::uniform_matrix(4, 5, 6), W, coding(0.1));
  EXPECT_EQ(H.row(1).cwiseAbs().maxCoeff(), 0.0);
}

TEST(SparseCodeProperty, NotWorseThanGridOracle) {
  for (unsigned seed = 0; seed < 20; ++seed) {
    for (double lambda : {0.0, 0.1}) {
      const Matrix W = oracle::uniform_matrix(4, 3, 100 + seed);
      const Vector x = oracle::uniform_matrix(4, 1, 200 + seed);
      const Vector h = sparse_code(x, W, coding(lambda)).col(0);
      const oracle::GridMin grid = oracle::grid_search_code(W, x, lambda, 0.05, 2.0);
      EXPECT_LE(oracle::code_objective(W, x, h, lambda), grid.value + 1e-6)
          << "seed " << seed << " lambda " << lambda;
    }
  }
}

TEST(SparseCodeProperty, KktResidualWithinTolerance) {
  // Uncapped so that every column stops on the tolerance rule.
  SolverOptions opts = coding(0.05);
  opts.max_iters = 1000000;
  for (unsigned seed = 0; seed < 20; ++seed) {
    const Matrix W = oracle::uniform_matrix(8, 5, 300 + seed);
    const Matrix X = oracle::uniform_matrix(8, 4, 400 + seed);
    const Matrix H = sparse_code(X, W, opts);
    EXPECT_GE(H.minCoeff(), 0.0);
    for (Eigen::Index n = 0; n < X.cols(); ++n) {
      EXPECT_LE(oracle::code_kkt_violation(W, X.col(n), H.col(n), opts.lambda),
                10.0 * opts.tol);
    }
  }
}

TEST(SparseCodeProperty, ColumnsAreIndependent) {
  const Matrix W = oracle::uniform_matrix(6, 4, 7);
  const Matrix X = oracle::uniform_matrix(6, 5, 8);
  const Matrix H = sparse_code(X, W, coding(0.1));
  for (Eigen::Index n = 0; n < X.cols(); ++n) {
    const Matrix single = sparse_code(X.col(n), W, coding(0.1));
    EXPECT_EQ(single.col(0), H.col(n));
  }
}

TEST(MaskedSparseCode, FullMaskMatchesUnmasked) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Matrix W = oracle::uniform_matrix(6, 3, 500 + seed);
    const Vector x = oracle::uniform_matrix(6, 1, 600 + seed);
    const MaskedCode masked =
        masked_sparse_code(x, W, MaskVector::Constant(6, true), coding(0.1));
    const Matrix plain = sparse_code(x, W, coding(0.1));
    EXPECT_FALSE(masked.no_data);
    EXPECT_LE((masked.code - plain.col(0)).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(MaskedSparseCode, ScalarLeastSquaresOnObservedRow) {
  const Matrix W = mat({{1}, {1}});
  MaskVector mask(2);
  mask << true, false;
  for (double junk : {0.0, 7.0, -100.0, 1e9}) {
    const Vector x = Eigen::Vector2d(2.0, junk);
    const MaskedCode code = masked_sparse_code(x, W, mask, coding(0.0));
    EXPECT_NEAR(code.code(0), 2.0, 1e-12);
  }
}

TEST(MaskedSparseCode, AllMissingGivesZeroCodeAndFlag) {
  const MaskedCode code = masked_sparse_code(Vector(Eigen::Vector3d(1, 2, 3)), oracle::uniform_matrix(3, 2, 1),
                                             MaskVector(MaskVector::Constant(3, false)), coding(0.0));
  EXPECT_TRUE(code.no_data);
  EXPECT_EQ(code.code, Vector::Zero(2));
}

TEST(MaskedSparseCode, EqualsRowRestrictedProblem) {
  const Matrix W = oracle::uniform_matrix(7, 3, 21);
  const Vector x = oracle::uniform_matrix(7, 1, 22);
  MaskVector mask(7);
  mask << true, false, true, true, false, true, false;
  Matrix Wr(4, 3);
  Vector xr(4);
  for (Eigen::Index i = 0, k = 0; i < 7; ++i) {
    if (!mask(i)) continue;
    Wr.row(k) = W.row(i);
    xr(k++) = x(i);
  }
  const MaskedCode masked = masked_sparse_code(x, W, mask, coding(0.1));
  const Matrix restricted = sparse_code(xr, Wr, coding(0.1));
  EXPECT_LE((masked.code - restricted.col(0)).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(MaskedSparseCode, MatrixOverloadFlagsEmptyColumns) {
  const Matrix W = oracle::uniform_matrix(3, 2, 31);
  const Matrix X = oracle::uniform_matrix(3, 3, 32);
  Mask mask = Mask::Constant(3, 3, true);
  mask.col(1) = false;
  const MaskedCodes codes = masked_sparse_code(X, W, mask, coding(0.0));
  EXPECT_EQ(codes.no_data, (std::vector<bool>{false, true, false}));
  EXPECT_EQ(codes.codes.col(1), Vector::Zero(2));
}

DictionaryUpdateOptions tight() {
  DictionaryUpdateOptions o;
  o.max_sweeps = 100000;
  o.tol = 1e-14;
  return o;
}

TEST(UpdateDictionary, RecoversFeasibleUnconstrainedMinimizer) {
  const Matrix target = oracle::uniform_matrix(5, 3, 41);
  const Matrix W = update_dictionary(oracle::uniform_matrix(5, 3, 42), Matrix::Identity(3, 3),
                                     target.transpose(), tight());
  EXPECT_LE((W - target).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(UpdateDictionary, ScalarCalculus) {
  // Projected-gradient oracle on the same scalar problems.
  EXPECT_NEAR(oracle::projected_gradient_dictionary(mat({{2}}), mat({{4}}), mat({{0.3}}), 200)(0, 0),
              2.0, 1e-12);
  EXPECT_EQ(oracle::projected_gradient_dictionary(mat({{1}}), mat({{-1}}), mat({{0.3}}), 200)(0, 0),
            0.0);

  EXPECT_NEAR(update_dictionary(mat({{0.3}}), mat({{2}}), mat({{4}}), tight())(0, 0), 2.0, 1e-12);
  EXPECT_EQ(update_dictionary(mat({{0.3}}), mat({{1}}), mat({{-1}}), tight())(0, 0), 0.0);
}

TEST(UpdateDictionary, AsymmetricAggregateThrows) {
  Matrix A = Matrix::Identity(2, 2);
  A(0, 1) = 0.5;
  EXPECT_THROW(update_dictionary(Matrix::Ones(3, 2), A, Matrix::Ones(2, 3), {}),
               InvalidAggregateError);
}

TEST(UpdateDictionary, ZeroDiagonalColumnsAreLeftUnchanged) {
  Matrix A = Matrix::Zero(2, 2);
  A(0, 0) = 1.0;
  const Matrix W0 = oracle::uniform_matrix(3, 2, 51);
  const Matrix W = update_dictionary(W0, A, oracle::uniform_matrix(2, 3, 52), tight());
  EXPECT_EQ(W.col(1), W0.col(1));
}

TEST(UpdateDictionary, ColumnBallKeepsUnitNorm) {
  DictionaryUpdateOptions o;
  o.column_ball = true;
  const Matrix W = update_dictionary(oracle::uniform_matrix(4, 2, 61), Matrix::Identity(2, 2),
                                     5.0 * oracle::uniform_matrix(2, 4, 62), o);
  for (Eigen::Index j = 0; j < 2; ++j) EXPECT_LE(W.col(j).norm(), 1.0 + 1e-12);
}

Matrix random_psd(Eigen::Index r, unsigned seed) {
  const Matrix H = oracle::uniform_matrix(r, 2 * r, seed);
  return H * H.transpose() / static_cast<double>(2 * r);
}

TEST(UpdateDictionaryProperty, KktAndAgreementWithProjectedGradient) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Matrix A = random_psd(4, 700 + seed);
    const Matrix B = oracle::uniform_matrix(4, 6, 800 + seed);
    const Matrix W0 = oracle::uniform_matrix(6, 4, 900 + seed);
    const Matrix W = update_dictionary(W0, A, B, tight());
    EXPECT_GE(W.minCoeff(), 0.0);
    EXPECT_LE(oracle::dictionary_kkt_violation(W, A, B), 1e-6) << "seed " << seed;
    EXPECT_LE(surrogate_value(W, A, B),
              surrogate_value(oracle::projected_gradient_dictionary(A, B, W0, 20000), A, B) + 1e-8);
  }
}

TEST(UpdateDictionaryProperty, SurrogateNonIncreasingPerSweep) {
  for (unsigned seed = 0; seed < 10; ++seed) {
    const Matrix A = random_psd(5, 1000 + seed);
    const Matrix B = oracle::uniform_matrix(5, 7, 1100 + seed);
    Matrix W = oracle::uniform_matrix(7, 5, 1200 + seed);
    double previous = surrogate_value(W, A, B);
    for (int sweep = 0; sweep < 30; ++sweep) {
      dictionary_sweep(W, A, B, {});
      const double current = surrogate_value(W, A, B);
      EXPECT_LE(current, previous + 1e-10);
      previous = current;
    }
  }
}

}  // namespace
}  // namespace dictlearn
