#pragma once

#include <vector>

#include "dictlearn/matrix.hpp"

namespace dictlearn {

/// Options for L1-regularized nonnegative least squares (sparse coding).
struct SolverOptions {
  double lambda = 0.0;         // L1 weight on the code
  int max_iters = 200;         // coordinate-descent sweeps per column
  double tol = 1e-8;           // stopping threshold, relative to max diag(W'W)
  double epsilon_div = 1e-12;  // atoms with squared norm <= this are treated as zero

  /// Throws InvalidArgumentError on lambda < 0, tol <= 0, epsilon_div <= 0
  /// or max_iters < 1.
  void validate() const;
};

/// Options for the nonnegative quadratic dictionary update.
struct DictionaryUpdateOptions {
  int max_sweeps = 50;
  double tol = 1e-8;           // stop when max |dW| <= tol * max(1, max |W|)
  double epsilon_div = 1e-12;  // columns with A(j,j) <= this are left unchanged
  bool column_ball = false;    // keep every column inside the unit L2 ball

  void validate() const;
};

/// ||X - W H||_F^2 + lambda * sum(|H|).
double eval_objective(const Matrix& X, const Matrix& W, const Matrix& H, double lambda);

/// Solves H = argmin_{H >= 0} ||X - W H||_F^2 + lambda ||H||_1 column by column
/// with cyclic coordinate descent. Each coordinate step is the exact
/// minimizer max(0, (2 w_j'(x - sum_{i != j} w_i h_i) - lambda) / (2 ||w_j||^2)).
///
/// A column stops once its projected gradient is below tol * max diag(W'W)
/// (or after max_iters sweeps). Throws DegenerateDictionaryError if W is
/// entirely zero and ShapeError if row counts differ.
Matrix sparse_code(const Matrix& X, const Matrix& W, const SolverOptions& opts);

struct MaskedCode {
  Vector code;
  bool no_data = false;  // true when no entry was observed; code is then zero
};

/// Sparse code of a single column using only the observed rows of x and W:
/// minimizes ||M (x - W h)||^2 + lambda ||h||_1 over h >= 0.
/// Unobserved values of x are never read.
MaskedCode masked_sparse_code(const Vector& x, const Matrix& W, const MaskVector& observed,
                              const SolverOptions& opts);

struct MaskedCodes {
  Matrix codes;
  std::vector<bool> no_data;  // per column
};

/// Column-wise masked_sparse_code over a whole matrix.
MaskedCodes masked_sparse_code(const Matrix& X, const Matrix& W, const Mask& observed,
                               const SolverOptions& opts);

/// Surrogate 1/2 tr(W A W') - tr(B W).
double surrogate_value(const Matrix& W, const Matrix& A, const Matrix& B);

/// One block-coordinate sweep over the columns of W for the surrogate.
/// Updates W in place and returns the largest absolute entry change.
double dictionary_sweep(Matrix& W, const Matrix& A, const Matrix& B,
                        const DictionaryUpdateOptions& opts);

/// W = argmin_{W >= 0} 1/2 tr(W A W') - tr(B W), warm-started at W_prev.
/// W_prev is d x r, A is r x r symmetric PSD, B is r x d.
/// Throws InvalidAggregateError if A is asymmetric beyond 1e-8 relative.
Matrix update_dictionary(const Matrix& W_prev, const Matrix& A, const Matrix& B,
                         const DictionaryUpdateOptions& opts);

}  // namespace dictlearn
