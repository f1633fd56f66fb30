#pragma once

#include <cstdint>
#include <vector>

#include "dictlearn/matrix.hpp"
#include "dictlearn/solvers.hpp"

namespace dictlearn {

/// Everything the online learner remembers about the stream: the dictionary
/// plus the running averages A_t = (1/t) sum H_s H_s' and
/// B_t = (1/t) sum H_s X_s'.
struct OnlineDictionaryState {
  Matrix W;  // d x r
  Matrix A;  // r x r
  Matrix B;  // r x d
  std::uint64_t t = 0;
  double lambda = 0.0;

  Eigen::Index dim() const { return W.rows(); }
  Eigen::Index rank() const { return W.cols(); }
};

/// Numerical settings for one online step. The L1 weight lives in the state.
struct OnlineOptions {
  int code_max_iters = 200;
  double code_tol = 1e-8;
  int dict_max_sweeps = 50;
  double dict_tol = 1e-8;
  double epsilon_div = 1e-12;
  bool column_ball = true;

  SolverOptions coding(double lambda) const;
  DictionaryUpdateOptions dictionary() const;
};

/// W seeded uniform [0,1) with unit-L2 columns; A, B zero; t = 0.
OnlineDictionaryState init_state(Eigen::Index d, Eigen::Index r, double lambda,
                                 std::uint64_t seed);

/// Checks shapes, lambda >= 0, A symmetric (1e-10 relative) and positive
/// semidefinite (min eigenvalue >= -1e-8 relative), and A = B = 0 when t = 0.
/// Throws InvalidAggregateError or ShapeError.
void validate_state(const OnlineDictionaryState& state);

/// Advances the state by one sample batch X (d x n) and returns the code H_t
/// computed against the previous dictionary.
Matrix advance(OnlineDictionaryState& state, const Matrix& X, const OnlineOptions& opts = {});

/// Like advance(), but codes each column using only its observed entries.
/// Unobserved entries of X are replaced by the current reconstruction
/// W_{t-1} h before entering B_t, so their stored values never matter.
Matrix advance_masked(OnlineDictionaryState& state, const Matrix& X, const Mask& observed,
                      const OnlineOptions& opts = {});

/// Value-semantics wrapper around advance().
OnlineDictionaryState step(OnlineDictionaryState state, const Matrix& X,
                           const OnlineOptions& opts = {});

/// W * sparse_code(X, W, lambda).
Matrix reconstruct(const OnlineDictionaryState& state, const Matrix& X,
                   const OnlineOptions& opts = {});

}  // namespace dictlearn
