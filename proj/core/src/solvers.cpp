#include "dictlearn/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dictlearn/errors.hpp"

namespace dictlearn {
namespace {

// Coordinate descent on f(h) = h'Gh - 2c'h + lambda 1'h, h >= 0, starting
// from h = 0. G = W'W, c = W'x. The gradient g = 2(Gh - c) + lambda is kept
// up to date incrementally.
void code_column(const Matrix& G, const Eigen::Ref<const Vector>& c, const SolverOptions& opts,
                 Eigen::Ref<Vector> h) {
  const Eigen::Index r = G.rows();
  h.setZero();
  double scale = 0.0;
  for (Eigen::Index j = 0; j < r; ++j) scale = std::max(scale, G(j, j));
  if (scale <= opts.epsilon_div) return;

  Vector g = opts.lambda - 2.0 * c.array();
  const double threshold = opts.tol * scale;

  for (int iter = 0; iter < opts.max_iters; ++iter) {
    for (Eigen::Index j = 0; j < r; ++j) {
      const double gjj = G(j, j);
      if (gjj <= opts.epsilon_div) continue;
      const double updated = std::max(0.0, h(j) - g(j) / (2.0 * gjj));
      const double delta = updated - h(j);
      if (delta != 0.0) {
        h(j) = updated;
        g.noalias() += (2.0 * delta) * G.col(j);
      }
    }
    double worst = 0.0;
    for (Eigen::Index j = 0; j < r; ++j) {
      if (G(j, j) <= opts.epsilon_div) continue;
      const double pg = h(j) > 0.0 ? std::abs(g(j)) : std::max(0.0, -g(j));
      worst = std::max(worst, pg);
    }
    if (worst <= threshold) break;
  }
}

void check_conformant(const Matrix& X, const Matrix& W) {
  if (X.rows() != W.rows()) {
    throw ShapeError("data has " + std::to_string(X.rows()) + " rows but dictionary has " +
                     std::to_string(W.rows()));
  }
}

}  // namespace

void SolverOptions::validate() const {
  if (!(lambda >= 0.0)) throw InvalidArgumentError("lambda must be >= 0");
  if (!(tol > 0.0)) throw InvalidArgumentError("tol must be > 0");
  if (!(epsilon_div > 0.0)) throw InvalidArgumentError("epsilon_div must be > 0");
  if (max_iters < 1) throw InvalidArgumentError("max_iters must be >= 1");
}

void DictionaryUpdateOptions::validate() const {
  if (!(tol > 0.0)) throw InvalidArgumentError("tol must be > 0");
  if (!(epsilon_div > 0.0)) throw InvalidArgumentError("epsilon_div must be > 0");
  if (max_sweeps < 1) throw InvalidArgumentError("max_sweeps must be >= 1");
}

double eval_objective(const Matrix& X, const Matrix& W, const Matrix& H, double lambda) {
  if (W.cols() != H.rows() || X.rows() != W.rows() || X.cols() != H.cols()) {
    throw ShapeError("objective operands do not conform: X " + std::to_string(X.rows()) + "x" +
                     std::to_string(X.cols()) + ", W " + std::to_string(W.rows()) + "x" +
                     std::to_string(W.cols()) + ", H " + std::to_string(H.rows()) + "x" +
                     std::to_string(H.cols()));
  }
  if (!(lambda >= 0.0)) throw InvalidArgumentError("lambda must be >= 0");
  return (X - W * H).squaredNorm() + lambda * H.cwiseAbs().sum();
}

Matrix sparse_code(const Matrix& X, const Matrix& W, const SolverOptions& opts) {
  opts.validate();
  check_conformant(X, W);
  if (W.size() == 0 || W.cwiseAbs().maxCoeff() == 0.0)
    throw DegenerateDictionaryError("dictionary has no nonzero column");

  const Matrix G = W.transpose() * W;
  const Matrix C = W.transpose() * X;
  Matrix H(W.cols(), X.cols());
  // Columns are independent problems; sequential order is the reference.
  for (Eigen::Index j = 0; j < X.cols(); ++j) code_column(G, C.col(j), opts, H.col(j));
  return H;
}

MaskedCode masked_sparse_code(const Vector& x, const Matrix& W, const MaskVector& observed,
                              const SolverOptions& opts) {
  opts.validate();
  if (x.size() != W.rows() || observed.size() != x.size()) {
    throw ShapeError("masked coding: x has " + std::to_string(x.size()) + " entries, mask " +
                     std::to_string(observed.size()) + ", dictionary " +
                     std::to_string(W.rows()) + " rows");
  }
  if (W.size() == 0 || W.cwiseAbs().maxCoeff() == 0.0)
    throw DegenerateDictionaryError("dictionary has no nonzero column");

  MaskedCode out{Vector::Zero(W.cols()), false};
  const Eigen::Index n_obs = observed.count();
  if (n_obs == 0) {
    out.no_data = true;
    return out;
  }
  if (n_obs == x.size()) {
    const Matrix G = W.transpose() * W;
    const Vector c = W.transpose() * x;
    code_column(G, c, opts, out.code);
    return out;
  }
  Matrix Wo(n_obs, W.cols());
  Vector xo(n_obs);
  for (Eigen::Index i = 0, k = 0; i < x.size(); ++i) {
    if (!observed(i)) continue;
    Wo.row(k) = W.row(i);
    xo(k) = x(i);
    ++k;
  }
  const Matrix G = Wo.transpose() * Wo;
  const Vector c = Wo.transpose() * xo;
  code_column(G, c, opts, out.code);
  return out;
}

MaskedCodes masked_sparse_code(const Matrix& X, const Matrix& W, const Mask& observed,
                               const SolverOptions& opts) {
  check_conformant(X, W);
  if (observed.rows() != X.rows() || observed.cols() != X.cols())
    throw ShapeError("mask dimensions differ from data dimensions");

  MaskedCodes out{Matrix::Zero(W.cols(), X.cols()), std::vector<bool>(X.cols(), false)};
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    MaskedCode col = masked_sparse_code(Vector(X.col(j)), W, MaskVector(observed.col(j)), opts);
    out.codes.col(j) = col.code;
    out.no_data[j] = col.no_data;
  }
  return out;
}

double surrogate_value(const Matrix& W, const Matrix& A, const Matrix& B) {
  return 0.5 * (W * A).cwiseProduct(W).sum() - B.cwiseProduct(W.transpose()).sum();
}

double dictionary_sweep(Matrix& W, const Matrix& A, const Matrix& B,
                        const DictionaryUpdateOptions& opts) {
  double max_change = 0.0;
  Vector column(W.rows());
  for (Eigen::Index j = 0; j < W.cols(); ++j) {
    const double ajj = A(j, j);
    if (ajj <= opts.epsilon_div) continue;
    // Exact minimizer of the surrogate in column j over the feasible set.
    column = W.col(j) + (B.row(j).transpose() - W * A.col(j)) / ajj;
    column = column.cwiseMax(0.0);
    if (opts.column_ball) {
      const double norm = column.norm();
      if (norm > 1.0) column /= norm;
    }
    max_change = std::max(max_change, (column - W.col(j)).cwiseAbs().maxCoeff());
    W.col(j) = column;
  }
  return max_change;
}

Matrix update_dictionary(const Matrix& W_prev, const Matrix& A, const Matrix& B,
                         const DictionaryUpdateOptions& opts) {
  opts.validate();
  const Eigen::Index d = W_prev.rows();
  const Eigen::Index r = W_prev.cols();
  require_shape(A, r, r, "aggregate A");
  require_shape(B, r, d, "aggregate B");

  const double scale = A.cwiseAbs().maxCoeff();
  if (r > 0 && (A - A.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale)
    throw InvalidAggregateError("aggregate A is not symmetric");

  Matrix W = W_prev;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double change = dictionary_sweep(W, A, B, opts);
    const double size = W.size() > 0 ? W.cwiseAbs().maxCoeff() : 0.0;
    if (change <= opts.tol * std::max(1.0, size)) break;
  }
  return W;
}

}  // namespace dictlearn
