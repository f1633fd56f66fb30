#include "dictlearn/online_nmf.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>

#include "dictlearn/errors.hpp"

namespace dictlearn {
namespace {

void require_rows(const OnlineDictionaryState& state, const Matrix& X) {
  if (X.rows() != state.dim()) {
    throw ShapeError("sample has " + std::to_string(X.rows()) + " rows, dictionary expects " +
                     std::to_string(state.dim()));
  }
}

// A_t = ((t-1) A_{t-1} + H H') / t, B_t = ((t-1) B_{t-1} + H X') / t.
void aggregate(OnlineDictionaryState& state, const Matrix& H, const Matrix& X) {
  state.t += 1;
  const double t = static_cast<double>(state.t);
  const double keep = (t - 1.0) / t;
  state.A = keep * state.A + (H * H.transpose()) / t;
  state.B = keep * state.B + (H * X.transpose()) / t;
}

}  // namespace

SolverOptions OnlineOptions::coding(double lambda) const {
  SolverOptions s;
  s.lambda = lambda;
  s.max_iters = code_max_iters;
  s.tol = code_tol;
  s.epsilon_div = epsilon_div;
  return s;
}

DictionaryUpdateOptions OnlineOptions::dictionary() const {
  DictionaryUpdateOptions u;
  u.max_sweeps = dict_max_sweeps;
  u.tol = dict_tol;
  u.epsilon_div = epsilon_div;
  u.column_ball = column_ball;
  return u;
}

OnlineDictionaryState init_state(Eigen::Index d, Eigen::Index r, double lambda,
                                 std::uint64_t seed) {
  if (d < 1 || r < 1) throw InvalidArgumentError("dictionary dimensions must be >= 1");
  if (!(lambda >= 0.0)) throw InvalidArgumentError("lambda must be >= 0");
  OnlineDictionaryState state;
  state.W = random_uniform(d, r, seed);
  normalize_columns(state.W);
  state.A = Matrix::Zero(r, r);
  state.B = Matrix::Zero(r, d);
  state.lambda = lambda;
  return state;
}

void validate_state(const OnlineDictionaryState& state) {
  const Eigen::Index d = state.dim();
  const Eigen::Index r = state.rank();
  require_shape(state.A, r, r, "aggregate A");
  require_shape(state.B, r, d, "aggregate B");
  if (!(state.lambda >= 0.0)) throw InvalidAggregateError("lambda must be >= 0");
  require_nonnegative(state.W, "dictionary");
  if (r == 0) return;

  const double scale = state.A.cwiseAbs().maxCoeff();
  if ((state.A - state.A.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw InvalidAggregateError("aggregate A is not symmetric");
  if (state.t == 0 && (scale != 0.0 || state.B.cwiseAbs().maxCoeff() != 0.0))
    throw InvalidAggregateError("aggregates must be zero before the first sample");
  if (scale > 0.0) {
    Eigen::SelfAdjointEigenSolver<Matrix> eig(state.A, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -1e-8 * std::max(1.0, scale))
      throw InvalidAggregateError("aggregate A is not positive semidefinite");
  }
}

Matrix advance(OnlineDictionaryState& state, const Matrix& X, const OnlineOptions& opts) {
  require_rows(state, X);
  Matrix H = sparse_code(X, state.W, opts.coding(state.lambda));
  aggregate(state, H, X);
  state.W = update_dictionary(state.W, state.A, state.B, opts.dictionary());
  return H;
}

Matrix advance_masked(OnlineDictionaryState& state, const Matrix& X, const Mask& observed,
                      const OnlineOptions& opts) {
  require_rows(state, X);
  MaskedCodes coded = masked_sparse_code(X, state.W, observed, opts.coding(state.lambda));
  Matrix filled = X;
  if (!observed.all()) {
    const Matrix fit = state.W * coded.codes;
    filled = observed.select(X.array(), fit.array()).matrix();
  }
  aggregate(state, coded.codes, filled);
  state.W = update_dictionary(state.W, state.A, state.B, opts.dictionary());
  return std::move(coded.codes);
}

OnlineDictionaryState step(OnlineDictionaryState state, const Matrix& X,
                           const OnlineOptions& opts) {
  advance(state, X, opts);
  return state;
}

Matrix reconstruct(const OnlineDictionaryState& state, const Matrix& X,
                   const OnlineOptions& opts) {
  require_rows(state, X);
  return state.W * sparse_code(X, state.W, opts.coding(state.lambda));
}

}  // namespace dictlearn
