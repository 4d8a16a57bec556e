#pragma once

#include <Eigen/Core>

#include <cstddef>

namespace driftlab {

/// Dense row-major matrix; one row per document / sample.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Throws DataError if any entry is NaN or infinite. `what` prefixes the message.
void require_finite(const Matrix& m, const char* what);

}  // namespace driftlab
