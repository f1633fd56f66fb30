#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dictlearn/matrix.hpp"

namespace dictlearn {

struct NmfFitResult {
  Matrix W;                            // d x r
  Matrix H;                            // r x n
  std::vector<double> objective_trace; // ||X - WH||_F^2 after each iteration
  bool overcomplete = false;           // r > min(d, n)
};

/// One multiplicative update: H first, then W using the updated H.
///   H <- H .* (W'X) ./ (W'W H + eps)
///   W <- W .* (X H') ./ (W H H' + eps)
std::pair<Matrix, Matrix> multiplicative_step(const Matrix& X, const Matrix& W, const Matrix& H,
                                              double epsilon_div = 1e-12);

/// Runs `iters` multiplicative steps from W0, H0.
NmfFitResult fit_nmf(const Matrix& X, Matrix W0, Matrix H0, int iters,
                     double epsilon_div = 1e-12);

/// Runs `iters` multiplicative steps from a seeded uniform [0,1) start
/// (W and H drawn from separate streams of the seed, column-major).
NmfFitResult fit_nmf(const Matrix& X, int r, int iters, std::uint64_t seed,
                     double epsilon_div = 1e-12);

}  // namespace dictlearn
