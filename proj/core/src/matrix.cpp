#include "dictlearn/matrix.hpp"

#include <string>

#include "dictlearn/errors.hpp"
#include "dictlearn/rng.hpp"

namespace dictlearn {

bool is_nonnegative(const Eigen::Ref<const Matrix>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!(m(i, j) >= 0.0)) return false;
  return true;
}

void require_nonnegative(const Eigen::Ref<const Matrix>& m, std::string_view what) {
  if (!is_nonnegative(m))
    throw InvalidArgumentError(std::string(what) + " must be entrywise nonnegative");
}

void require_shape(const Eigen::Ref<const Matrix>& m, Eigen::Index rows, Eigen::Index cols,
                   std::string_view what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ShapeError(std::string(what) + " is " + std::to_string(m.rows()) + "x" +
                     std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                     std::to_string(cols));
  }
}

Matrix random_uniform(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                      std::uint64_t stream) {
  CounterRng rng(seed, stream);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.uniform();
  return m;
}

void normalize_columns(Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double norm = m.col(j).norm();
    if (norm > 0.0) m.col(j) /= norm;
  }
}

}  // namespace dictlearn
