#include "dictlearn/nmf.hpp"

#include <algorithm>
#include <string>

#include "dictlearn/errors.hpp"

namespace dictlearn {

std::pair<Matrix, Matrix> multiplicative_step(const Matrix& X, const Matrix& W, const Matrix& H,
                                              double epsilon_div) {
  if (W.rows() != X.rows() || H.cols() != X.cols() || W.cols() != H.rows()) {
    throw ShapeError("multiplicative step: X " + std::to_string(X.rows()) + "x" +
                     std::to_string(X.cols()) + " does not conform with W " +
                     std::to_string(W.rows()) + "x" + std::to_string(W.cols()) + " and H " +
                     std::to_string(H.rows()) + "x" + std::to_string(H.cols()));
  }
  if (!(epsilon_div > 0.0)) throw InvalidArgumentError("epsilon_div must be > 0");

  const Matrix WtW = W.transpose() * W;
  const Matrix WtX = W.transpose() * X;
  const Matrix WtWH = WtW * H;
  Matrix H_next = (H.array() * WtX.array() / (WtWH.array() + epsilon_div)).matrix();

  const Matrix HHt = H_next * H_next.transpose();
  const Matrix XHt = X * H_next.transpose();
  const Matrix WHHt = W * HHt;
  Matrix W_next = (W.array() * XHt.array() / (WHHt.array() + epsilon_div)).matrix();
  return {std::move(W_next), std::move(H_next)};
}

NmfFitResult fit_nmf(const Matrix& X, Matrix W0, Matrix H0, int iters, double epsilon_div) {
  require_nonnegative(X, "data matrix");
  require_nonnegative(W0, "initial dictionary");
  require_nonnegative(H0, "initial code");
  if (iters < 0) throw InvalidArgumentError("iteration count must be >= 0");

  NmfFitResult result;
  result.overcomplete = W0.cols() > std::min(X.rows(), X.cols());
  result.W = std::move(W0);
  result.H = std::move(H0);
  result.objective_trace.reserve(static_cast<std::size_t>(iters));
  for (int k = 0; k < iters; ++k) {
    auto [W, H] = multiplicative_step(X, result.W, result.H, epsilon_div);
    result.W = std::move(W);
    result.H = std::move(H);
    result.objective_trace.push_back((X - result.W * result.H).squaredNorm());
  }
  return result;
}

NmfFitResult fit_nmf(const Matrix& X, int r, int iters, std::uint64_t seed, double epsilon_div) {
  if (r < 1) throw InvalidArgumentError("rank must be >= 1");
  Matrix W0 = random_uniform(X.rows(), r, seed, /*stream=*/0);
  Matrix H0 = random_uniform(r, X.cols(), seed, /*stream=*/1);
  return fit_nmf(X, std::move(W0), std::move(H0), iters, epsilon_div);
}

}  // namespace dictlearn
