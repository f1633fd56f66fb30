#pragma once

#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace dictlearn {

/// Dense real matrix. Carrier for data X, dictionary W, code H and the
/// online aggregates A, B. Nonnegativity is a documented precondition of the
/// operations that need it and is checked at their entry points.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Per-entry observation mask (true = observed).
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
using MaskVector = Eigen::Array<bool, Eigen::Dynamic, 1>;

bool is_nonnegative(const Eigen::Ref<const Matrix>& m);

/// Throws InvalidArgumentError naming `what` if any entry is negative or NaN.
void require_nonnegative(const Eigen::Ref<const Matrix>& m, std::string_view what);

/// Throws ShapeError unless m is rows x cols.
void require_shape(const Eigen::Ref<const Matrix>& m, Eigen::Index rows, Eigen::Index cols,
                   std::string_view what);

/// Matrix with i.i.d. uniform [0,1) entries drawn in column-major order.
Matrix random_uniform(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed,
                      std::uint64_t stream = 0);

/// Scales every column with positive norm to unit L2 norm.
void normalize_columns(Matrix& m);

}  // namespace dictlearn
